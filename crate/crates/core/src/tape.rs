//! Integer tapes that describe anchored buildings brick by brick.
//!
//! A tape for `n` bricks has `2bw(n-2)` entries in `-bw..=bw`. Bricks are
//! numbered in order of introduction, starting from the base brick. The
//! entries are read in windows of `bw`: block 1 and block 2 each get one
//! window for their studs, blocks `3..n-1` get a stud window followed by a
//! hole window. Entry `v` in the stud window of block `m` at position `i`
//! introduces a brick on top of block `m` whose hole `|v|` sits on stud `i`;
//! hole windows do the same downwards. A positive value gives an axis-aligned
//! brick, a negative one a rotated brick.
//!
//! Studs and holes are numbered row-major on an axis-aligned brick (for a
//! 2x4 brick, 1..4 along the first row and 5..8 along the second); hole `k`
//! lies directly below stud `k`. On a rotated brick the local grid is turned
//! a quarter counterclockwise.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{BrickShape, Configuration, Orientation, Placement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TapeError {
    Length { expected: usize, found: usize },
    /// The value at 1-based `position` lies outside `-max..=max`.
    Alphabet { position: usize, value: i64, max: u32 },
    /// The item at 1-based `position` is not an integer.
    Parse { position: usize, item: String },
    /// The building is not anchored on a base brick at the origin.
    NotAnchored,
    /// No tape exists for this size (two bricks leave no room).
    Degenerate { n: usize },
}

impl fmt::Display for TapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TapeError::Length { expected, found } => write!(f, "tape has {found} entries, expected {expected}"),
            TapeError::Alphabet { position, value, max } => {
                write!(f, "entry {position} is {value}, outside -{max}..={max}")
            }
            TapeError::Parse { position, item } => write!(f, "entry {position} ({item:?}) is not an integer"),
            TapeError::NotAnchored => f.write_str("building is not anchored on a single base brick at the origin"),
            TapeError::Degenerate { n } => write!(f, "no tape describes a building of {n} bricks"),
        }
    }
}

/// Number of entries of a tape for `n` bricks.
pub fn tape_len(shape: BrickShape, n: usize) -> usize {
    2 * shape.studs() as usize * n.saturating_sub(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tape {
    shape: BrickShape,
    n: usize,
    values: Vec<i32>,
}

impl Tape {
    pub fn new(shape: BrickShape, n: usize, values: Vec<i32>) -> Result<Self, TapeError> {
        let expected = tape_len(shape, n);
        if values.len() != expected {
            return Err(TapeError::Length { expected, found: values.len() });
        }
        let max = shape.studs();
        if let Some(i) = values.iter().position(|v| v.unsigned_abs() > max) {
            return Err(TapeError::Alphabet { position: i + 1, value: values[i] as i64, max });
        }
        Ok(Tape { shape, n, values })
    }

    pub fn zeros(shape: BrickShape, n: usize) -> Self {
        Tape { shape, n, values: vec![0; tape_len(shape, n)] }
    }

    /// Parses comma-separated integers; whitespace around items is ignored.
    pub fn parse(shape: BrickShape, n: usize, text: &str) -> Result<Self, TapeError> {
        let text = text.trim();
        let mut values = Vec::new();
        if !text.is_empty() {
            let max = shape.studs();
            for (i, item) in text.split(',').enumerate() {
                let item = item.trim();
                let v: i64 = item.parse().map_err(|_| TapeError::Parse { position: i + 1, item: item.into() })?;
                if v.unsigned_abs() > max as u64 {
                    return Err(TapeError::Alphabet { position: i + 1, value: v, max });
                }
                values.push(v as i32);
            }
        }
        Tape::new(shape, n, values)
    }

    pub fn shape(&self) -> BrickShape {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn nonzero_count(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }
}

impl fmt::Display for Tape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Why a tape describes no building.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Terminal {
    /// A new brick overlaps one already placed.
    Collision,
    /// All bricks are placed but a later entry is nonzero.
    EarlyFinishNonzeroTail,
    /// After reading block `m < n-1`, block `m+1` does not exist.
    StalledIntroduction,
    /// A brick other than the base lands in the base layer.
    SecondBaseLayerBlock,
    /// The tape ends with fewer than `n` bricks.
    Underfull,
}

impl Terminal {
    pub const ALL: [Terminal; 5] = [
        Terminal::Collision,
        Terminal::EarlyFinishNonzeroTail,
        Terminal::StalledIntroduction,
        Terminal::SecondBaseLayerBlock,
        Terminal::Underfull,
    ];

    /// The terminal state number, 1 to 5.
    pub fn number(self) -> u8 {
        match self {
            Terminal::Collision => 1,
            Terminal::EarlyFinishNonzeroTail => 2,
            Terminal::StalledIntroduction => 3,
            Terminal::SecondBaseLayerBlock => 4,
            Terminal::Underfull => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Terminal::Collision => "Collision",
            Terminal::EarlyFinishNonzeroTail => "EarlyFinishNonzeroTail",
            Terminal::StalledIntroduction => "StalledIntroduction",
            Terminal::SecondBaseLayerBlock => "SecondBaseLayerBlock",
            Terminal::Underfull => "Underfull",
        }
    }
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeOutcome {
    Building(Configuration),
    /// `position` is the number of entries read when the procedure stopped.
    Fail { state: Terminal, position: usize },
}

impl DecodeOutcome {
    pub fn building(&self) -> Option<&Configuration> {
        match self {
            DecodeOutcome::Building(c) => Some(c),
            DecodeOutcome::Fail { .. } => None,
        }
    }

    pub fn terminal(&self) -> Option<Terminal> {
        match self {
            DecodeOutcome::Building(_) => None,
            DecodeOutcome::Fail { state, .. } => Some(*state),
        }
    }
}

/// Offset of stud (or hole) `k` from the placement corner.
fn local_cell(shape: BrickShape, rot: Orientation, k: u32) -> (i32, i32) {
    let w = shape.w();
    let (col, row) = (((k - 1) % w) as i32, ((k - 1) / w) as i32);
    match rot {
        Orientation::Axis => (col, row),
        Orientation::Rotated => (shape.b() as i32 - 1 - row, col),
    }
}

/// The cell of stud `k` (1-based) of `p`; hole `k` lies in the same cell.
pub fn stud_cell(shape: BrickShape, p: &Placement, k: u32) -> (i32, i32) {
    let (dx, dy) = local_cell(shape, p.rot, k);
    (p.x + dx, p.y + dy)
}

/// The brick in layer `z` whose stud/hole `k` sits at `cell`, with the
/// orientation given by the sign of `v`.
fn attached(shape: BrickShape, cell: (i32, i32), z: i32, v: i32) -> Placement {
    let rot = if v > 0 || shape.is_square() { Orientation::Axis } else { Orientation::Rotated };
    let (dx, dy) = local_cell(shape, rot, v.unsigned_abs());
    Placement::new(cell.0 - dx, cell.1 - dy, z, rot)
}

/// The windows of a tape, as `(block, upward)` in reading order.
fn windows(n: usize) -> impl Iterator<Item = (usize, bool)> {
    let blocks = if n >= 3 { n - 1 } else { 0 };
    (0..blocks).flat_map(|m| {
        let down = if m >= 2 { Some((m, false)) } else { None };
        core::iter::once((m, true)).chain(down)
    })
}

pub fn decode(tape: &Tape) -> DecodeOutcome {
    let shape = tape.shape;
    let n = tape.n;
    let bw = shape.studs();
    let values = &tape.values;
    let fail = |state, position| DecodeOutcome::Fail { state, position };
    let mut blocks = vec![Placement::origin()];
    if n == 1 {
        return DecodeOutcome::Building(Configuration::from_trusted(shape, blocks));
    }
    let mut pos = 0;
    let mut last_block = None;
    for (m, up) in windows(n) {
        if last_block != Some(m) {
            if m >= blocks.len() {
                return fail(Terminal::StalledIntroduction, pos);
            }
            last_block = Some(m);
        }
        let base = blocks[m];
        for i in 1..=bw {
            let v = values[pos];
            pos += 1;
            if v == 0 {
                continue;
            }
            let cell = stud_cell(shape, &base, i);
            let z = if up { base.z + 1 } else { base.z - 1 };
            let p = attached(shape, cell, z, v);
            if blocks.iter().any(|q| shape.overlaps(q, &p)) {
                return fail(Terminal::Collision, pos);
            }
            if z <= 0 {
                return fail(Terminal::SecondBaseLayerBlock, pos);
            }
            blocks.push(p);
            if blocks.len() == n {
                if values[pos..].iter().any(|&v| v != 0) {
                    return fail(Terminal::EarlyFinishNonzeroTail, pos);
                }
                return DecodeOutcome::Building(Configuration::from_trusted(shape, blocks));
            }
        }
        let window_done = !up || m < 2;
        if window_done && m + 2 < n && blocks.len() < m + 2 {
            return fail(Terminal::StalledIntroduction, pos);
        }
    }
    fail(Terminal::Underfull, pos)
}

/// A tape that decodes to `c`. Every attachment is written at the
/// lowest-numbered stud (or hole) of the earlier brick that the new brick covers.
pub fn encode(c: &Configuration) -> Result<Tape, TapeError> {
    let shape = c.shape();
    let n = c.len();
    let origin = Placement::origin();
    if !c.placements().contains(&origin) || c.placements().iter().any(|p| p.z <= 0 && *p != origin) {
        return Err(TapeError::NotAnchored);
    }
    if n == 2 {
        return Err(TapeError::Degenerate { n });
    }
    let mut tape = Tape::zeros(shape, n);
    if n == 1 {
        return Ok(tape);
    }
    let bw = shape.studs() as usize;
    let mut order = vec![origin];
    let mut seen: Vec<bool> = c.placements().iter().map(|p| *p == origin).collect();
    let mut pos = 0;
    for (m, up) in windows(n) {
        let Some(&base) = order.get(m) else { break };
        for i in 1..=bw {
            let cell = stud_cell(shape, &base, i as u32);
            let z = if up { base.z + 1 } else { base.z - 1 };
            let hit = c
                .placements()
                .iter()
                .enumerate()
                .find(|(j, p)| !seen[*j] && p.z == z && shape.footprint(p).contains(cell));
            if let Some((j, p)) = hit {
                seen[j] = true;
                order.push(*p);
                let k = (1..=shape.studs()).find(|&k| stud_cell(shape, p, k) == cell).expect("cell inside brick");
                let k = k as i32;
                tape.values[pos + i - 1] = if p.rot == Orientation::Axis { k } else { -k };
            }
        }
        pos += bw;
    }
    Ok(tape)
}

/// Outcome counts over all tapes with few nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    /// Tapes examined, indexed by their number of nonzero entries.
    pub examined: Vec<u64>,
    /// Tapes that decode to a building, by number of nonzero entries.
    pub successes: Vec<u64>,
    /// Failures per terminal state, over all examined tapes.
    pub failures: [u64; 5],
    /// Distinct buildings among the successful decodes.
    pub distinct: usize,
}

impl Census {
    pub fn valid_tapes(&self) -> u64 {
        self.successes.iter().sum()
    }
}

/// Decodes every tape for `n` bricks with at most `max_nonzero` nonzero entries.
pub fn surjectivity_census(shape: BrickShape, n: usize, max_nonzero: usize) -> Census {
    let len = tape_len(shape, n);
    let bw = shape.studs() as i32;
    let alphabet: Vec<i32> = (-bw..=bw).filter(|&v| v != 0).collect();
    let mut census = Census {
        n,
        examined: vec![0; max_nonzero + 1],
        successes: vec![0; max_nonzero + 1],
        failures: [0; 5],
        distinct: 0,
    };
    let mut buildings: BTreeSet<Vec<Placement>> = BTreeSet::new();
    let mut tape = Tape::zeros(shape, n);
    let mut visit = |tape: &Tape, k: usize, census: &mut Census| {
        census.examined[k] += 1;
        match decode(tape) {
            DecodeOutcome::Building(c) => {
                census.successes[k] += 1;
                buildings.insert(c.placements().to_vec());
            }
            DecodeOutcome::Fail { state, .. } => census.failures[state.number() as usize - 1] += 1,
        }
    };
    fill(&mut tape, 0, len, 0, max_nonzero, &alphabet, &mut census, &mut visit);
    census.distinct = buildings.len();
    census
}

#[allow(clippy::too_many_arguments)]
fn fill(
    tape: &mut Tape,
    from: usize,
    len: usize,
    k: usize,
    max: usize,
    alphabet: &[i32],
    census: &mut Census,
    visit: &mut impl FnMut(&Tape, usize, &mut Census),
) {
    visit(tape, k, census);
    if k == max {
        return;
    }
    for i in from..len {
        for &v in alphabet {
            tape.values[i] = v;
            fill(tape, i + 1, len, k + 1, max, alphabet, census, visit);
        }
        tape.values[i] = 0;
    }
}

/// A worked tape for the 2x4 brick and the outcome it must produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceTape {
    pub name: &'static str,
    pub tape: Tape,
    /// `None` for a tape that builds `tape.n()` bricks.
    pub expected: Option<Terminal>,
}

/// Six four-brick tapes: one that builds and one per terminal state.
pub fn reference_tapes() -> Vec<ReferenceTape> {
    const Z: [i32; 8] = [0; 8];
    let at = |i: usize, v: i32| {
        let mut w = Z;
        w[i - 1] = v;
        w
    };
    let shape = BrickShape::TWO_BY_FOUR;
    let make = |windows: [[i32; 8]; 4]| Tape::new(shape, 4, windows.concat()).expect("reference tape is well formed");
    let mut tail = at(4, -1);
    tail[5] = -1;
    let mut two_in_base = at(2, -1);
    two_in_base[3] = -1;
    vec![
        ReferenceTape { name: "builds", tape: make([at(2, -1), at(2, 5), Z, at(4, -1)]), expected: None },
        ReferenceTape { name: "collision", tape: make([[1, 1, 0, 0, 0, 0, 0, 0], Z, Z, Z]), expected: Some(Terminal::Collision) },
        ReferenceTape {
            name: "nonzero-tail",
            tape: make([at(2, -1), at(2, 5), Z, tail]),
            expected: Some(Terminal::EarlyFinishNonzeroTail),
        },
        ReferenceTape { name: "all-zero", tape: make([Z; 4]), expected: Some(Terminal::StalledIntroduction) },
        ReferenceTape {
            name: "second-base-layer",
            tape: make([two_in_base, Z, Z, at(3, 2)]),
            expected: Some(Terminal::SecondBaseLayerBlock),
        },
        ReferenceTape { name: "underfull", tape: make([at(2, -1), at(2, 5), Z, Z]), expected: Some(Terminal::Underfull) },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::anchored_configurations;

    fn s24() -> BrickShape {
        BrickShape::TWO_BY_FOUR
    }

    fn tape(windows: &[[i32; 8]]) -> Tape {
        Tape::new(s24(), windows.len() / 2 + 2, windows.concat()).unwrap()
    }

    const Z: [i32; 8] = [0; 8];

    #[test]
    fn stud_numbering() {
        let s = s24();
        let axis = Placement::origin();
        assert_eq!(stud_cell(s, &axis, 1), (0, 0));
        assert_eq!(stud_cell(s, &axis, 4), (3, 0));
        assert_eq!(stud_cell(s, &axis, 5), (0, 1));
        let rot = Placement::new(0, 0, 0, Orientation::Rotated);
        let cells: Vec<_> = (1..=8).map(|k| stud_cell(s, &rot, k)).collect();
        assert!(cells.iter().all(|c| s.footprint(&rot).contains(*c)));
        assert_eq!(cells[0], (1, 0));
        assert_eq!(cells[4], (0, 0));
    }

    #[test]
    fn first_example_builds_four_bricks() {
        let t = tape(&[[0, 5, 0, 0, -4, 0, 0, 0], [0, 0, 0, 0, -1, 0, 0, 0], Z, Z]);
        let c = decode(&t).building().cloned().expect("succeeds");
        assert_eq!(c.len(), 4);
        assert_eq!(c.layer_counts(), vec![1, 2, 1]);
        assert_eq!(decode(&encode(&c).unwrap()), DecodeOutcome::Building(c));
    }

    #[test]
    fn example_failures() {
        let bottom = |i: usize, v: i32| {
            let mut w = Z;
            w[i - 1] = v;
            w
        };
        let ok = tape(&[[0, -1, 0, 0, 0, 0, 0, 0], [0, 5, 0, 0, 0, 0, 0, 0], Z, bottom(4, -1)]);
        assert_eq!(decode(&ok).building().map(|c| c.len()), Some(4));

        let collide = tape(&[[1, 1, 0, 0, 0, 0, 0, 0], Z, Z, Z]);
        assert_eq!(decode(&collide), DecodeOutcome::Fail { state: Terminal::Collision, position: 2 });

        let mut tail_w = bottom(4, -1);
        tail_w[5] = -1;
        let tail = tape(&[[0, -1, 0, 0, 0, 0, 0, 0], [0, 5, 0, 0, 0, 0, 0, 0], Z, tail_w]);
        assert_eq!(decode(&tail).terminal(), Some(Terminal::EarlyFinishNonzeroTail));

        let zeros = Tape::zeros(s24(), 4);
        assert_eq!(decode(&zeros), DecodeOutcome::Fail { state: Terminal::StalledIntroduction, position: 8 });

        let level0 = tape(&[[0, -1, 0, -1, 0, 0, 0, 0], Z, Z, bottom(3, 2)]);
        assert_eq!(decode(&level0).terminal(), Some(Terminal::SecondBaseLayerBlock));

        let under = tape(&[[0, -1, 0, 0, 0, 0, 0, 0], [0, 5, 0, 0, 0, 0, 0, 0], Z, Z]);
        assert_eq!(decode(&under), DecodeOutcome::Fail { state: Terminal::Underfull, position: 32 });
    }

    #[test]
    fn reference_outcomes() {
        let refs = reference_tapes();
        let states: Vec<_> = refs.iter().filter_map(|r| r.expected).collect();
        assert_eq!(states, Terminal::ALL.to_vec());
        for r in &refs {
            assert_eq!(decode(&r.tape).terminal(), r.expected, "{}", r.name);
        }
    }

    #[test]
    fn small_sizes() {
        let one = decode(&Tape::zeros(s24(), 1));
        assert_eq!(one.building().map(|c| c.len()), Some(1));
        assert_eq!(decode(&Tape::zeros(s24(), 2)).terminal(), Some(Terminal::Underfull));
        let c = Configuration::new(s24(), [Placement::origin(), Placement::new(0, 0, 1, Orientation::Axis)]).unwrap();
        assert_eq!(encode(&c), Err(TapeError::Degenerate { n: 2 }));
        let all_zero_three = decode(&Tape::zeros(s24(), 3));
        assert_eq!(all_zero_three.terminal(), Some(Terminal::StalledIntroduction));
    }

    #[test]
    fn tower_round_trip() {
        let c = Configuration::new(
            s24(),
            (0..3).map(|z| Placement::new(0, 0, z, Orientation::Axis)),
        )
        .unwrap();
        let t = encode(&c).unwrap();
        assert_eq!(t.nonzero_count(), 2);
        assert_eq!(decode(&t).building(), Some(&c));
    }

    #[test]
    fn encode_rejects_unanchored() {
        let c = Configuration::new(s24(), [Placement::new(1, 0, 0, Orientation::Axis)]).unwrap();
        assert_eq!(encode(&c), Err(TapeError::NotAnchored));
    }

    #[test]
    fn round_trip_all_of_a3() {
        let all = anchored_configurations(s24(), 3).unwrap();
        assert_eq!(all.len(), 2596);
        for c in &all {
            let t = encode(c).unwrap();
            assert_eq!(t.nonzero_count(), 2);
            assert_eq!(decode(&t).building(), Some(c));
        }
    }

    #[test]
    fn text_round_trip_and_errors() {
        let t = tape(&[[0, 5, 0, 0, -4, 0, 0, 0], [0, 0, 0, 0, -1, 0, 0, 0], Z, Z]);
        let text = alloc::string::ToString::to_string(&t);
        assert!(text.starts_with("0,5,0,0,-4,"));
        assert_eq!(Tape::parse(s24(), 4, &text).unwrap(), t);
        assert!(matches!(Tape::parse(s24(), 3, "9"), Err(TapeError::Alphabet { position: 1, value: 9, .. })));
        assert!(matches!(Tape::parse(s24(), 3, "1,x"), Err(TapeError::Parse { position: 2, .. })));
        assert!(matches!(Tape::parse(s24(), 3, "1,2"), Err(TapeError::Length { expected: 16, found: 2 })));
        assert_eq!(Tape::parse(s24(), 1, "").unwrap().values().len(), 0);
    }

    #[test]
    fn census_three() {
        let c = surjectivity_census(s24(), 3, 3);
        assert_eq!(c.examined, vec![1, 256, 120 * 256, 560 * 4096]);
        assert_eq!(c.successes[0], 0);
        assert_eq!(c.successes[1], 0);
        assert_eq!(c.successes[3], 0);
        assert!(c.successes[2] >= 2596);
        assert_eq!(c.distinct, 2596);
    }
}
