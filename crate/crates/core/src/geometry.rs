//! Bricks, placements and buildings on the integer stud grid.
//!
//! A `b x w` brick occupies the box `[x, x+w) x [y, y+b) x [z, z+1)` when it is
//! axis-aligned and `[x, x+b) x [y, y+w) x [z, z+1)` when it is rotated by a
//! quarter turn. Rotating a brick by a half turn only translates its
//! footprint, so one orientation bit is enough. For square bricks both
//! orientations coincide and placements are always stored as [`Orientation::Axis`].

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrickShape {
    b: u32,
    w: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeError {
    ZeroSide,
    TooLarge,
    Unparsable,
}

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeError::ZeroSide => f.write_str("brick sides must be positive"),
            ShapeError::TooLarge => f.write_str("brick sides larger than 16 are not supported"),
            ShapeError::Unparsable => f.write_str("expected a shape of the form BxW, e.g. 2x4"),
        }
    }
}

impl BrickShape {
    pub const TWO_BY_FOUR: BrickShape = BrickShape { b: 2, w: 4 };

    /// Builds a shape, swapping the sides if needed so that `b <= w`.
    pub fn new(b: u32, w: u32) -> Result<Self, ShapeError> {
        if b == 0 || w == 0 {
            return Err(ShapeError::ZeroSide);
        }
        if b > 16 || w > 16 {
            return Err(ShapeError::TooLarge);
        }
        let (b, w) = if b <= w { (b, w) } else { (w, b) };
        Ok(BrickShape { b, w })
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    /// Number of studs on top (and holes underneath).
    pub fn studs(&self) -> u32 {
        self.b * self.w
    }

    pub fn is_square(&self) -> bool {
        self.b == self.w
    }

    /// Footprint extent `(along x, along y)` for an orientation.
    pub fn extent(&self, rot: Orientation) -> (i32, i32) {
        match rot {
            Orientation::Axis => (self.w as i32, self.b as i32),
            Orientation::Rotated => (self.b as i32, self.w as i32),
        }
    }

    /// The distinct footprint orientations of this brick.
    pub fn orientations(&self) -> &'static [Orientation] {
        if self.is_square() {
            &[Orientation::Axis]
        } else {
            &[Orientation::Axis, Orientation::Rotated]
        }
    }

    /// Number of ways to put one brick on top of another:
    /// `(2b-1)(2w-1) + (b+w-1)^2`, or `(2b-1)^2` for square bricks.
    pub fn contact_count(&self) -> u64 {
        let (b, w) = (self.b as u64, self.w as u64);
        if b == w {
            (2 * b - 1) * (2 * b - 1)
        } else {
            (2 * b - 1) * (2 * w - 1) + (b + w - 1) * (b + w - 1)
        }
    }

    /// Brings a placement into normal form (square bricks have one orientation).
    pub fn normalize(&self, p: Placement) -> Placement {
        if self.is_square() {
            Placement { rot: Orientation::Axis, ..p }
        } else {
            p
        }
    }

    /// The footprint rectangle of `p` in its layer.
    pub fn footprint(&self, p: &Placement) -> Rect {
        let (lx, ly) = self.extent(p.rot);
        Rect { x0: p.x, y0: p.y, x1: p.x + lx, y1: p.y + ly }
    }

    /// Twice the footprint centre; integral for every placement.
    pub fn doubled_center(&self, p: &Placement) -> (i32, i32) {
        let (lx, ly) = self.extent(p.rot);
        (2 * p.x + lx, 2 * p.y + ly)
    }

    /// Rotates a placement by a quarter turn counterclockwise about the z-axis.
    pub fn rotate(&self, p: &Placement) -> Placement {
        let (_, ly) = self.extent(p.rot);
        self.normalize(Placement { x: -p.y - ly, y: p.x, z: p.z, rot: p.rot.flipped() })
    }

    /// Rotates by `quarter_turns` counterclockwise quarter turns.
    pub fn rotate_by(&self, p: &Placement, quarter_turns: u32) -> Placement {
        let mut q = *p;
        for _ in 0..quarter_turns % 4 {
            q = self.rotate(&q);
        }
        q
    }

    /// True if the open boxes of `p` and `q` intersect.
    pub fn overlaps(&self, p: &Placement, q: &Placement) -> bool {
        p.z == q.z && self.footprint(p).intersects(&self.footprint(q))
    }

    /// True if `p` and `q` sit in adjacent layers with overlapping footprints.
    pub fn touches(&self, p: &Placement, q: &Placement) -> bool {
        (p.z - q.z).abs() == 1 && self.footprint(p).intersects(&self.footprint(q))
    }

    /// Every placement one layer above `base` whose footprint overlaps it.
    pub fn placements_above(&self, base: &Placement) -> Vec<Placement> {
        self.adjacent(base, 1)
    }

    /// Every placement one layer below `base` whose footprint overlaps it.
    pub fn placements_below(&self, base: &Placement) -> Vec<Placement> {
        self.adjacent(base, -1)
    }

    fn adjacent(&self, base: &Placement, dz: i32) -> Vec<Placement> {
        let fp = self.footprint(base);
        let mut out = Vec::new();
        for &rot in self.orientations() {
            let (lx, ly) = self.extent(rot);
            for x in fp.x0 - lx + 1..fp.x1 {
                for y in fp.y0 - ly + 1..fp.y1 {
                    out.push(Placement { x, y, z: base.z + dz, rot });
                }
            }
        }
        out
    }
}

impl fmt::Display for BrickShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.b, self.w)
    }
}

impl core::str::FromStr for BrickShape {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (b, w) = s.trim().split_once(['x', 'X']).ok_or(ShapeError::Unparsable)?;
        let b = b.trim().parse().map_err(|_| ShapeError::Unparsable)?;
        let w = w.trim().parse().map_err(|_| ShapeError::Unparsable)?;
        BrickShape::new(b, w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// Long side along x.
    Axis,
    /// Long side along y.
    Rotated,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Axis => Orientation::Rotated,
            Orientation::Rotated => Orientation::Axis,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Orientation::Axis => 0,
            Orientation::Rotated => 1,
        }
    }
}

/// One brick at an integer position. The derived order is lexicographic in
/// `(z, x, y, rot)`, which is the order used for canonical keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placement {
    pub z: i32,
    pub x: i32,
    pub y: i32,
    pub rot: Orientation,
}

impl Placement {
    pub const fn new(x: i32, y: i32, z: i32, rot: Orientation) -> Self {
        Placement { z, x, y, rot }
    }

    pub const fn origin() -> Self {
        Placement::new(0, 0, 0, Orientation::Axis)
    }

    pub fn translated(&self, dx: i32, dy: i32, dz: i32) -> Self {
        Placement { x: self.x + dx, y: self.y + dy, z: self.z + dz, rot: self.rot }
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.rot {
            Orientation::Axis => "axis",
            Orientation::Rotated => "rot90",
        };
        write!(f, "({}, {}, {}) {}", self.x, self.y, self.z, r)
    }
}

/// Half-open rectangle of unit cells `[x0, x1) x [y0, y1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rect {
    pub x0: i32,
    pub y0: i32,
    pub x1: i32,
    pub y1: i32,
}

impl Rect {
    pub fn intersects(&self, other: &Rect) -> bool {
        self.x0 < other.x1 && other.x0 < self.x1 && self.y0 < other.y1 && other.y0 < self.y1
    }

    pub fn contains(&self, cell: (i32, i32)) -> bool {
        self.x0 <= cell.0 && cell.0 < self.x1 && self.y0 <= cell.1 && cell.1 < self.y1
    }

    pub fn area(&self) -> u32 {
        ((self.x1 - self.x0) * (self.y1 - self.y0)) as u32
    }

    pub fn cells(&self) -> impl Iterator<Item = (i32, i32)> + '_ {
        (self.y0..self.y1).flat_map(move |y| (self.x0..self.x1).map(move |x| (x, y)))
    }
}

/// Unit cells covered by `p` in its layer.
pub fn footprint(p: &Placement, shape: BrickShape) -> Vec<(i32, i32)> {
    shape.footprint(p).cells().collect()
}

/// The upper placements that can sit on a fixed lower brick at the origin,
/// together with the ones fixed by the half turn of the two-brick assembly.
#[derive(Clone, Debug)]
pub struct OnTop {
    pub placements: Vec<Placement>,
    pub symmetric: Vec<Placement>,
}

pub fn placements_on_top(shape: BrickShape) -> OnTop {
    let base = Placement::origin();
    let placements = shape.placements_above(&base);
    let centre = shape.doubled_center(&base);
    let symmetric = placements
        .iter()
        .copied()
        .filter(|p| shape.doubled_center(p) == centre)
        .collect();
    OnTop { placements, symmetric }
}

/// True if `p` intersects the interior of any brick in `bricks`.
pub fn collides(shape: BrickShape, bricks: &[Placement], p: &Placement) -> bool {
    bricks.iter().any(|q| shape.overlaps(q, p))
}

/// True if the contact graph of `bricks` is connected (the empty set is not).
pub fn is_connected(shape: BrickShape, bricks: &[Placement]) -> bool {
    if bricks.is_empty() {
        return false;
    }
    let mut seen = alloc::vec![false; bricks.len()];
    let mut queue = VecDeque::new();
    seen[0] = true;
    queue.push_back(0);
    let mut reached = 1;
    while let Some(i) = queue.pop_front() {
        for j in 0..bricks.len() {
            if !seen[j] && shape.touches(&bricks[i], &bricks[j]) {
                seen[j] = true;
                reached += 1;
                queue.push_back(j);
            }
        }
    }
    reached == bricks.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigError {
    Empty,
    Collision(Placement, Placement),
    Disconnected,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Empty => f.write_str("a building needs at least one brick"),
            ConfigError::Collision(p, q) => write!(f, "bricks {p} and {q} collide"),
            ConfigError::Disconnected => f.write_str("the bricks do not form a contiguous building"),
        }
    }
}

/// A contiguous, collision-free building. Placements are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    shape: BrickShape,
    placements: Vec<Placement>,
}

impl Configuration {
    pub fn new(shape: BrickShape, placements: impl IntoIterator<Item = Placement>) -> Result<Self, ConfigError> {
        let mut placements: Vec<Placement> = placements.into_iter().map(|p| shape.normalize(p)).collect();
        if placements.is_empty() {
            return Err(ConfigError::Empty);
        }
        placements.sort_unstable();
        for (i, p) in placements.iter().enumerate() {
            if let Some(q) = placements[i + 1..].iter().find(|q| shape.overlaps(p, q)) {
                return Err(ConfigError::Collision(*p, *q));
            }
        }
        if !is_connected(shape, &placements) {
            return Err(ConfigError::Disconnected);
        }
        Ok(Configuration { shape, placements })
    }

    /// Wraps placements already known to form a valid building.
    pub(crate) fn from_trusted(shape: BrickShape, mut placements: Vec<Placement>) -> Self {
        placements.sort_unstable();
        debug_assert!(Configuration::new(shape, placements.iter().copied()).is_ok());
        Configuration { shape, placements }
    }

    pub fn shape(&self) -> BrickShape {
        self.shape
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn collides(&self, p: &Placement) -> bool {
        collides(self.shape, &self.placements, p)
    }

    pub fn min_z(&self) -> i32 {
        self.placements[0].z
    }

    pub fn max_z(&self) -> i32 {
        self.placements[self.placements.len() - 1].z
    }

    /// Number of occupied layers.
    pub fn height(&self) -> u32 {
        (self.max_z() - self.min_z() + 1) as u32
    }

    /// Brick counts per layer, from the lowest layer up.
    pub fn layer_counts(&self) -> Vec<u32> {
        let mut counts = alloc::vec![0; self.height() as usize];
        let z0 = self.min_z();
        for p in &self.placements {
            counts[(p.z - z0) as usize] += 1;
        }
        counts
    }

    pub fn in_layer(&self, z: i32) -> impl Iterator<Item = &Placement> + '_ {
        self.placements.iter().filter(move |p| p.z == z)
    }

    pub fn translated(&self, dx: i32, dy: i32, dz: i32) -> Self {
        Configuration::from_trusted(self.shape, self.placements.iter().map(|p| p.translated(dx, dy, dz)).collect())
    }

    /// Rotation by `quarter_turns` counterclockwise quarter turns about the z-axis.
    pub fn rotated(&self, quarter_turns: u32) -> Self {
        let shape = self.shape;
        Configuration::from_trusted(shape, self.placements.iter().map(|p| shape.rotate_by(p, quarter_turns)).collect())
    }

    pub fn canonicalize(&self) -> CanonicalKey {
        canonicalize(self.shape, &self.placements)
    }
}

/// Translation- and rotation-invariant identifier of a building.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<(i32, i32, i32, u8)>);

impl CanonicalKey {
    pub fn as_tuples(&self) -> &[(i32, i32, i32, u8)] {
        &self.0
    }
}

/// Least sorted `(z, x, y, rot)` encoding over the four rotations, each
/// translated so that its minimal x, y and z are zero.
pub fn canonicalize(shape: BrickShape, bricks: &[Placement]) -> CanonicalKey {
    let mut best: Option<Vec<(i32, i32, i32, u8)>> = None;
    let mut current: Vec<Placement> = bricks.iter().map(|p| shape.normalize(*p)).collect();
    for turn in 0..4 {
        if turn > 0 {
            for p in current.iter_mut() {
                *p = shape.rotate(p);
            }
        }
        let mx = current.iter().map(|p| p.x).min().unwrap_or(0);
        let my = current.iter().map(|p| p.y).min().unwrap_or(0);
        let mz = current.iter().map(|p| p.z).min().unwrap_or(0);
        let mut key: Vec<_> = current.iter().map(|p| (p.z - mz, p.x - mx, p.y - my, p.rot.bit())).collect();
        key.sort_unstable();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    CanonicalKey(best.unwrap_or_default())
}

/// Number of rotation classes among all two-brick buildings, by brute force over
/// the placements on a fixed lower brick of each orientation.
pub fn two_brick_classes(shape: BrickShape) -> usize {
    let mut keys = BTreeSet::new();
    for &rot in shape.orientations() {
        let base = Placement::new(0, 0, 0, rot);
        for top in shape.placements_above(&base) {
            keys.insert(canonicalize(shape, &[base, top]));
        }
    }
    keys.len()
}
