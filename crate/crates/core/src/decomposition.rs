//! Splitting single-top buildings at their bottlenecks.
//!
//! A member of the class `B_n` has `n + 1` bricks, a single brick in its
//! bottom layer (the base, at the origin) and a single brick in its top layer.
//! A bottleneck is an interior layer holding exactly one brick. Cutting at
//! every bottleneck, and keeping the bottleneck brick in both pieces, splits a
//! building uniquely into bottleneck-free pieces whose sizes in the `B` index
//! add up to `n`. Each upper piece is moved so that its bottom brick becomes
//! the axis-aligned base at the origin.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::enumerator::{count_b, count_c, for_each_anchored, two_on_one_count, EnumError, Interrupt};
use crate::formulas::ExactInt;
use crate::geometry::{BrickShape, Configuration, Orientation, Placement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompError {
    /// The bottom brick is not the axis-aligned brick at the origin.
    NotAnchored,
    /// Fewer than two bricks.
    TooSmall,
    BottomNotSingle,
    TopNotSingle,
    /// Part `index` of a reconstruction has a bottleneck.
    HasBottleneck { index: usize },
    /// Gluing the parts made two bricks overlap.
    Collision(Placement, Placement),
    NoParts,
}

impl fmt::Display for DecompError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompError::NotAnchored => f.write_str("bottom brick is not the axis-aligned brick at the origin"),
            DecompError::TooSmall => f.write_str("a single-top building needs at least two bricks"),
            DecompError::BottomNotSingle => f.write_str("bottom layer holds more than one brick"),
            DecompError::TopNotSingle => f.write_str("top layer holds more than one brick"),
            DecompError::HasBottleneck { index } => write!(f, "part {index} has a bottleneck"),
            DecompError::Collision(p, q) => write!(f, "glued parts collide at {p} and {q}"),
            DecompError::NoParts => f.write_str("nothing to reconstruct"),
        }
    }
}

/// An anchored building with a single brick in its bottom and top layers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BClassConfig {
    config: Configuration,
}

impl BClassConfig {
    pub fn new(config: Configuration) -> Result<Self, DecompError> {
        check_b_class(config.placements())?;
        Ok(BClassConfig { config })
    }

    /// The class index `n`; the building has `n + 1` bricks.
    pub fn index(&self) -> usize {
        self.config.len() - 1
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn into_config(self) -> Configuration {
        self.config
    }

    pub fn top(&self) -> Placement {
        *self.config.placements().last().expect("nonempty")
    }
}

fn check_b_class(bricks: &[Placement]) -> Result<(), DecompError> {
    if bricks.len() < 2 {
        return Err(DecompError::TooSmall);
    }
    if bricks[0] != Placement::origin() {
        return Err(DecompError::NotAnchored);
    }
    if bricks[1].z == 0 {
        return Err(DecompError::BottomNotSingle);
    }
    let n = bricks.len();
    if bricks[n - 2].z == bricks[n - 1].z {
        return Err(DecompError::TopNotSingle);
    }
    Ok(())
}

/// Interior layers holding exactly one brick, ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BottleneckProfile {
    pub heights: Vec<i32>,
}

impl BottleneckProfile {
    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }
}

/// Bottleneck layers of sorted bricks.
fn bottlenecks_of(bricks: &[Placement]) -> Vec<i32> {
    let (lo, hi) = (bricks[0].z, bricks[bricks.len() - 1].z);
    let mut out = Vec::new();
    let mut i = 0;
    while i < bricks.len() {
        let z = bricks[i].z;
        let j = i + bricks[i..].iter().take_while(|p| p.z == z).count();
        if j - i == 1 && z != lo && z != hi {
            out.push(z);
        }
        i = j;
    }
    out
}

pub fn find_bottlenecks(c: &BClassConfig) -> BottleneckProfile {
    BottleneckProfile { heights: bottlenecks_of(c.config.placements()) }
}

/// Moves a piece so that `bottom` becomes the axis-aligned brick at the origin.
fn normalize_piece(shape: BrickShape, bricks: &mut [Placement], bottom: Placement) {
    let turns = if bottom.rot == Orientation::Rotated { 3 } else { 0 };
    let b = shape.rotate_by(&bottom, turns);
    for p in bricks.iter_mut() {
        *p = shape.rotate_by(p, turns).translated(-b.x, -b.y, -b.z);
    }
    bricks.sort_unstable();
}

/// Splits sorted bricks of a single-top building into bottleneck-free pieces.
fn split(shape: BrickShape, bricks: &[Placement]) -> Vec<Vec<Placement>> {
    let cuts = bottlenecks_of(bricks);
    let mut pieces = Vec::with_capacity(cuts.len() + 1);
    let mut lo = bricks[0].z;
    for hi in cuts.into_iter().chain(core::iter::once(bricks[bricks.len() - 1].z)) {
        let mut piece: Vec<Placement> = bricks.iter().copied().filter(|p| p.z >= lo && p.z <= hi).collect();
        let bottom = piece[0];
        normalize_piece(shape, &mut piece, bottom);
        pieces.push(piece);
        lo = hi;
    }
    pieces
}

pub fn decompose(c: &BClassConfig) -> Vec<BClassConfig> {
    let shape = c.config.shape();
    split(shape, c.config.placements())
        .into_iter()
        .map(|p| BClassConfig { config: Configuration::from_trusted(shape, p) })
        .collect()
}

/// Glues the parts in order, identifying the top brick of each with the
/// bottom brick of the next.
pub fn reconstruct(parts: &[BClassConfig]) -> Result<BClassConfig, DecompError> {
    let first = parts.first().ok_or(DecompError::NoParts)?;
    let shape = first.config.shape();
    let slices: Vec<&[Placement]> = parts.iter().map(|p| p.config.placements()).collect();
    for (i, s) in slices.iter().enumerate() {
        if !bottlenecks_of(s).is_empty() {
            return Err(DecompError::HasBottleneck { index: i });
        }
    }
    let bricks = glue(shape, &slices)?;
    Ok(BClassConfig { config: Configuration::from_trusted(shape, bricks) })
}

fn glue(shape: BrickShape, parts: &[&[Placement]]) -> Result<Vec<Placement>, DecompError> {
    let mut out: Vec<Placement> = parts[0].to_vec();
    for part in &parts[1..] {
        let top = *out.last().expect("nonempty");
        let turns = if top.rot == Orientation::Rotated && !shape.is_square() { 1 } else { 0 };
        let b = shape.rotate_by(&Placement::origin(), turns);
        let (dx, dy, dz) = (top.x - b.x, top.y - b.y, top.z - b.z);
        let below = out.len();
        for p in &part[1..] {
            let q = shape.rotate_by(p, turns).translated(dx, dy, dz);
            if let Some(r) = out[..below].iter().find(|r| shape.overlaps(r, &q)) {
                return Err(DecompError::Collision(*r, q));
            }
            out.push(q);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// All compositions of `n` into positive parts, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `sum over compositions (m_1, .., m_k) of n of c_{m_1} * .. * c_{m_k}`,
/// with `cs[i]` holding `c_{i+1}`.
pub fn convolution(cs: &[u64], n: usize) -> ExactInt {
    assert!(cs.len() >= n, "need c_1..c_n");
    // f[k] = sum over compositions of k.
    let mut f: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    f[0] = BigInt::one();
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for m in 1..=k {
            if cs[m - 1] != 0 {
                acc += &f[k - m] * BigInt::from(cs[m - 1]);
            }
        }
        f[k] = acc;
    }
    f.swap_remove(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionCheck {
    pub n: usize,
    pub b: u64,
    pub c: Vec<u64>,
    pub predicted: ExactInt,
}

impl ConvolutionCheck {
    pub fn holds(&self) -> bool {
        self.predicted == BigInt::from(self.b)
    }
}

/// Compares `b_n` with the convolution of `c_1..c_n`, all enumerated.
pub fn convolution_identity_check(shape: BrickShape, n: usize, stop: &dyn Interrupt) -> Result<ConvolutionCheck, EnumError> {
    let b = count_b(shape, n, stop)?;
    let c = (1..=n).map(|m| count_c(shape, m, stop)).collect::<Result<Vec<_>, _>>()?;
    let predicted = convolution(&c, n);
    Ok(ConvolutionCheck { n, b, c, predicted })
}

/// Result of decomposing every member of `B_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundTrip {
    pub members: u64,
    pub failures: u64,
    /// Members whose pieces have the given sizes, by composition.
    pub by_composition: alloc::collections::BTreeMap<Vec<usize>, u64>,
}

/// Decomposes and reconstructs every member of `B_n`.
pub fn round_trip_all(shape: BrickShape, n: usize) -> Result<RoundTrip, EnumError> {
    let mut rt = RoundTrip::default();
    for_each_anchored(shape, n + 1, |bricks| {
        let mut sorted = bricks.to_vec();
        sorted.sort_unstable();
        if check_b_class(&sorted).is_err() {
            return;
        }
        rt.members += 1;
        let pieces = split(shape, &sorted);
        let sizes: Vec<usize> = pieces.iter().map(|p| p.len() - 1).collect();
        let clean = pieces.iter().all(|p| p[0] == Placement::origin() && bottlenecks_of(p).is_empty());
        let slices: Vec<&[Placement]> = pieces.iter().map(|p| p.as_slice()).collect();
        if !clean || glue(shape, &slices).as_deref() != Ok(&sorted[..]) {
            rt.failures += 1;
        }
        *rt.by_composition.entry(sizes).or_insert(0) += 1;
    })?;
    Ok(rt)
}

/// The pieces of the hand count of `c_3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C3Audit {
    /// Non-colliding pairs of bricks on the base.
    pub pairs_on_base: u64,
    /// Over those pairs, the top positions touching both.
    pub shared_tops: u64,
    /// Buildings with both middle bricks on the base.
    pub both_middle_on_bottom: u64,
    /// Buildings with one middle brick off the base.
    pub one_middle_on_bottom: u64,
    /// `4 * P * pairs - 3 * shared`, with `P` the single-contact count.
    pub assembled: u64,
    /// `c_3` from the enumerator.
    pub enumerated: u64,
}

impl C3Audit {
    pub fn consistent(&self) -> bool {
        self.both_middle_on_bottom + self.one_middle_on_bottom == self.assembled && self.assembled == self.enumerated
    }
}

/// Recounts `c_3` from its two cases by direct loops.
pub fn c3_derivation_audit(shape: BrickShape, stop: &dyn Interrupt) -> Result<C3Audit, EnumError> {
    let base = Placement::origin();
    let tops = shape.placements_above(&base);
    let mut shared = 0u64;
    let mut both = 0u64;
    for (i, m1) in tops.iter().enumerate() {
        for m2 in tops[i + 1..].iter().filter(|m2| !shape.overlaps(m1, m2)) {
            let above1 = shape.placements_above(m1);
            shared += above1.iter().filter(|t| shape.touches(t, m2)).count() as u64;
            let above2 = shape.placements_above(m2);
            let only2 = above2.iter().filter(|t| !shape.touches(t, m1)).count() as u64;
            both += above1.len() as u64 + only2;
        }
    }
    let mut one = 0u64;
    for m1 in &tops {
        for t in shape.placements_above(m1) {
            for m2 in shape.placements_below(&t) {
                if !shape.overlaps(m1, &m2) && !shape.touches(&m2, &base) {
                    one += 1;
                }
            }
        }
    }
    let p = shape.contact_count();
    let pairs = two_on_one_count(shape);
    let assembled = (4 * p * pairs).saturating_sub(3 * shared);
    Ok(C3Audit {
        pairs_on_base: pairs,
        shared_tops: shared,
        both_middle_on_bottom: both,
        one_middle_on_bottom: one,
        assembled,
        enumerated: count_c(shape, 3, stop)?,
    })
}

/// `c_{n+2} >= factor * c_n`.
pub fn growth_inequality(c_n: u64, c_n_plus_2: u64, factor: u64) -> bool {
    c_n_plus_2 as u128 >= c_n as u128 * factor as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::Unlimited;

    fn s24() -> BrickShape {
        BrickShape::TWO_BY_FOUR
    }

    fn tower(n: i32) -> BClassConfig {
        let c = Configuration::new(s24(), (0..n).map(|z| Placement::new(0, 0, z, Orientation::Axis))).unwrap();
        BClassConfig::new(c).unwrap()
    }

    #[test]
    fn towers() {
        assert!(find_bottlenecks(&tower(2)).is_empty());
        assert_eq!(find_bottlenecks(&tower(3)).heights, vec![1]);
        let parts = decompose(&tower(3));
        assert_eq!(parts, vec![tower(2), tower(2)]);
        assert_eq!(reconstruct(&parts).unwrap(), tower(3));
        assert_eq!(reconstruct(&[tower(2)]).unwrap(), tower(2));
    }

    #[test]
    fn two_bottlenecks() {
        use Orientation::*;
        let bricks = [
            Placement::origin(),
            Placement::new(-2, 0, 1, Axis),
            Placement::new(2, 0, 1, Axis),
            Placement::new(1, -1, 2, Rotated),
            Placement::new(0, -1, 3, Axis),
            Placement::new(2, 2, 3, Axis),
            Placement::new(1, 1, 4, Rotated),
            Placement::new(2, 3, 5, Axis),
            Placement::new(0, 0, 5, Rotated),
            Placement::new(0, 2, 6, Axis),
        ];
        let c = BClassConfig::new(Configuration::new(s24(), bricks).unwrap()).unwrap();
        assert_eq!(find_bottlenecks(&c).heights, vec![2, 4]);
        let parts = decompose(&c);
        let sizes: Vec<usize> = parts.iter().map(|p| p.index()).collect();
        assert_eq!(sizes, vec![3, 3, 3]);
        assert!(parts.iter().all(|p| find_bottlenecks(p).is_empty()));
        assert!(parts.iter().all(|p| p.config().placements()[0] == Placement::origin()));
        assert_eq!(reconstruct(&parts).unwrap(), c);
    }

    #[test]
    fn rejects_non_members() {
        let two_on_base = Configuration::new(
            s24(),
            [Placement::origin(), Placement::new(4, 0, 0, Orientation::Axis), Placement::new(2, 0, 1, Orientation::Axis)],
        )
        .unwrap();
        assert_eq!(BClassConfig::new(two_on_base), Err(DecompError::BottomNotSingle));
        let forked = Configuration::new(
            s24(),
            [Placement::origin(), Placement::new(-2, 0, 1, Orientation::Axis), Placement::new(2, 0, 1, Orientation::Axis)],
        )
        .unwrap();
        assert_eq!(BClassConfig::new(forked), Err(DecompError::TopNotSingle));
        assert_eq!(reconstruct(&[tower(3)]), Err(DecompError::HasBottleneck { index: 0 }));
        assert_eq!(reconstruct(&[]), Err(DecompError::NoParts));
    }

    #[test]
    fn glue_reports_collision() {
        use Orientation::*;
        let lower: Vec<Placement> = vec![Placement::origin(), Placement::new(2, 0, 1, Axis), Placement::new(-2, 0, 1, Axis), Placement::new(0, 0, 2, Axis)];
        let upper: Vec<Placement> = vec![Placement::origin(), Placement::new(2, 0, -1, Axis), Placement::new(0, 0, 1, Axis)];
        let err = glue(s24(), &[&lower, &upper]).unwrap_err();
        assert!(matches!(err, DecompError::Collision(..)));
    }

    #[test]
    fn compositions_small() {
        assert_eq!(compositions(3), vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]);
        assert_eq!(compositions(6).len(), 32);
        assert_eq!(convolution(&[46], 1), BigInt::from(46));
        assert_eq!(convolution(&[46, 0], 2), BigInt::from(2116));
        assert_eq!(convolution(&[46, 0, 74130], 3), BigInt::from(74130 + 46u64.pow(3)));
    }

    #[test]
    fn convolution_matches_enumeration() {
        for n in 1..=3 {
            let chk = convolution_identity_check(s24(), n, &Unlimited).unwrap();
            assert!(chk.holds(), "n = {n}: {chk:?}");
        }
        assert_eq!(count_b(s24(), 2, &Unlimited).unwrap(), 2116);
    }

    #[test]
    fn round_trip_small() {
        for n in 1..=3 {
            let rt = round_trip_all(s24(), n).unwrap();
            assert_eq!(rt.failures, 0);
            assert_eq!(rt.members, count_b(s24(), n, &Unlimited).unwrap());
        }
    }

    #[test]
    fn c3_audit() {
        let a = c3_derivation_audit(s24(), &Unlimited).unwrap();
        assert_eq!(a.pairs_on_base, 480);
        assert_eq!(a.shared_tops, 4730);
        assert_eq!(a.both_middle_on_bottom, 39430);
        assert_eq!(a.one_middle_on_bottom, 34700);
        assert_eq!(a.assembled, 74130);
        assert!(a.consistent());
    }

    #[test]
    fn growth_check() {
        assert!(growth_inequality(74130, 318434429, 1248));
        assert!(!growth_inequality(2, 3, 2));
    }
}
