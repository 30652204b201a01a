use alloc::vec::Vec;

use super::search::{Node, Visitor};
use super::MAX_BRICKS;
use crate::geometry::{BrickShape, Placement};

/// Something a search accumulates and that can be split across subtrees.
pub trait Tally: Visitor + Clone + Send {
    /// An empty tally with the same settings.
    fn fresh(&self) -> Self;
    fn merge(&mut self, other: &Self);
}

pub(crate) const SLOTS: usize = MAX_BRICKS + 2;

/// Counts of translation classes by height, with the numbers fixed by the
/// half turn and the quarter turn, from which rotation orbits follow by
/// Burnside's lemma.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeTally {
    pub fixed: [u64; SLOTS],
    pub half_turn: [u64; SLOTS],
    pub quarter_turn: [u64; SLOTS],
}

impl FreeTally {
    /// Rotation orbits per height (index = height). `None` if Burnside's sum
    /// is not divisible by four, which would mean a broken tally.
    pub fn orbits_by_height(&self) -> Option<[u64; SLOTS]> {
        let mut out = [0; SLOTS];
        for (h, slot) in out.iter_mut().enumerate() {
            let sum = self.fixed[h] + self.half_turn[h] + 2 * self.quarter_turn[h];
            if !sum.is_multiple_of(4) {
                return None;
            }
            *slot = sum / 4;
        }
        Some(out)
    }

    fn record_symmetric(&mut self, shape: BrickShape, bricks: &[Placement], height: usize) {
        if invariant_under(shape, bricks, 2) {
            self.half_turn[height] += 1;
            if invariant_under(shape, bricks, 1) {
                self.quarter_turn[height] += 1;
            }
        }
    }
}

/// True if rotating `bricks` by `turns` quarter turns gives a translate of them.
pub fn invariant_under(shape: BrickShape, bricks: &[Placement], turns: u32) -> bool {
    let mut orig: Vec<Placement> = bricks.to_vec();
    orig.sort_unstable();
    let mut rot: Vec<Placement> = bricks.iter().map(|p| shape.rotate_by(p, turns)).collect();
    rot.sort_unstable();
    let (a, b) = (orig[0], rot[0]);
    let (dx, dy, dz) = (a.x - b.x, a.y - b.y, a.z - b.z);
    rot.iter().map(|p| p.translated(dx, dy, dz)).eq(orig.iter().copied())
}

impl Visitor for FreeTally {
    fn leaves(&mut self, node: &Node<'_>) {
        let mut hits = [0u64; SLOTS];
        node.hits(&mut hits[..node.lat.layers]);
        let height = node.top().map_or(0, |t| t + 1);
        for (z, &h) in hits.iter().enumerate() {
            if h > 0 {
                self.fixed[height.max(z + 1)] += h;
            }
        }

        let shape = node.lat.shape;
        let mut bricks: Vec<Placement> = node.placements().collect();
        if bricks.len() <= 1 {
            for c in node.valid_candidates() {
                let p = node.placement(c);
                bricks.push(p);
                self.record_symmetric(shape, &bricks, height.max(p.z as usize + 1));
                bricks.pop();
            }
            return;
        }

        // Every layer of a symmetric building has its centroid at the centre
        // of rotation, which pins down the final brick for each target layer.
        let layers = height;
        let mut sx = [0i64; SLOTS];
        let mut sy = [0i64; SLOTS];
        let mut k = [0i64; SLOTS];
        for p in &bricks {
            let (dx, dy) = shape.doubled_center(p);
            let z = p.z as usize;
            sx[z] += dx as i64;
            sy[z] += dy as i64;
            k[z] += 1;
        }
        let last_layer = (layers + 1).min(node.lat.layers);
        for target in 0..last_layer {
            let mut others = (0..layers).filter(|&z| z != target && k[z] > 0);
            let Some(a) = others.next() else { continue };
            if !others.all(|z| sx[z] * k[a] == sx[a] * k[z] && sy[z] * k[a] == sy[a] * k[z]) {
                continue;
            }
            let kt = k[target];
            let nx = (kt + 1) * sx[a] - sx[target] * k[a];
            let ny = (kt + 1) * sy[a] - sy[target] * k[a];
            if nx % k[a] != 0 || ny % k[a] != 0 {
                continue;
            }
            let (cx, cy) = (nx / k[a], ny / k[a]);
            for &rot in shape.orientations() {
                let (lx, ly) = shape.extent(rot);
                let (ex, ey) = (cx - lx as i64, cy - ly as i64);
                if ex % 2 != 0 || ey % 2 != 0 {
                    continue;
                }
                let p = Placement::new((ex / 2) as i32, (ey / 2) as i32, target as i32, rot);
                let Some(idx) = node.index(&p) else { continue };
                if !node.is_valid_candidate(idx) {
                    continue;
                }
                bricks.push(p);
                self.record_symmetric(shape, &bricks, height.max(target + 1));
                bricks.pop();
            }
        }
    }
}

impl Tally for FreeTally {
    fn fresh(&self) -> Self {
        FreeTally::default()
    }

    fn merge(&mut self, other: &Self) {
        for h in 0..SLOTS {
            self.fixed[h] += other.fixed[h];
            self.half_turn[h] += other.half_turn[h];
            self.quarter_turn[h] += other.quarter_turn[h];
        }
    }
}

/// Counts of anchored buildings: all of them, those with a single brick in the
/// top layer, and those that in addition have no interior single-brick layer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnchoredTally {
    /// Skip subtrees that cannot end bottleneck-free; only
    /// `bottleneck_free` is then complete.
    pub bottleneck_free_only: bool,
    pub all: u64,
    pub single_top: u64,
    pub bottleneck_free: u64,
    pub by_height: [u64; SLOTS],
}

impl AnchoredTally {
    pub fn new(bottleneck_free_only: bool) -> Self {
        AnchoredTally { bottleneck_free_only, ..Default::default() }
    }
}

/// Bricks still needed before the building can have a single top brick and
/// at least two bricks in every interior layer.
pub(crate) fn bottleneck_deficit(counts: &[u8], top: usize) -> usize {
    if top == 0 {
        return 0;
    }
    let interior: usize = (1..top).map(|z| 2usize.saturating_sub(counts[z] as usize)).sum();
    interior + usize::from(counts[top] >= 2)
}

impl Visitor for AnchoredTally {
    fn leaves(&mut self, node: &Node<'_>) {
        let mut hits = [0u64; SLOTS];
        node.hits(&mut hits[..node.lat.layers]);
        let mut counts = [0u8; SLOTS];
        counts[..node.layer_counts().len()].copy_from_slice(node.layer_counts());
        let top = node.top();
        for (z, &h) in hits.iter().enumerate() {
            if h == 0 {
                continue;
            }
            counts[z] += 1;
            let new_top = top.map_or(z, |t| t.max(z));
            self.all += h;
            self.by_height[new_top + 1] += h;
            if counts[new_top] == 1 {
                self.single_top += h;
                if (1..new_top).all(|l| counts[l] >= 2) {
                    self.bottleneck_free += h;
                }
            }
            counts[z] -= 1;
        }
    }

    fn prune(&self, node: &Node<'_>, remaining: usize) -> bool {
        if !self.bottleneck_free_only {
            return false;
        }
        match node.top() {
            Some(top) => bottleneck_deficit(node.layer_counts(), top) > remaining,
            None => false,
        }
    }
}

impl Tally for AnchoredTally {
    fn fresh(&self) -> Self {
        AnchoredTally::new(self.bottleneck_free_only)
    }

    fn merge(&mut self, other: &Self) {
        self.all += other.all;
        self.single_top += other.single_top;
        self.bottleneck_free += other.bottleneck_free;
        for h in 0..SLOTS {
            self.by_height[h] += other.by_height[h];
        }
    }
}

/// Hands every complete building to a closure.
pub(crate) struct Collect<F> {
    pub f: F,
    pub buf: Vec<Placement>,
}

impl<F: FnMut(&[Placement])> Visitor for Collect<F> {
    fn leaves(&mut self, node: &Node<'_>) {
        self.buf.clear();
        self.buf.extend(node.placements());
        for c in node.valid_candidates() {
            self.buf.push(node.placement(c));
            (self.f)(&self.buf);
            self.buf.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Orientation;

    #[test]
    fn deficit_examples() {
        // base, two bricks at layer 1, one at layer 2: complete.
        assert_eq!(bottleneck_deficit(&[1, 2, 1], 2), 0);
        // base, one brick at layer 1, two at layer 2: layer 1 short, need a new top.
        assert_eq!(bottleneck_deficit(&[1, 1, 2], 2), 2);
        assert_eq!(bottleneck_deficit(&[1, 1], 1), 0);
        assert_eq!(bottleneck_deficit(&[1], 0), 0);
    }

    #[test]
    fn symmetry_of_small_buildings() {
        let s = BrickShape::TWO_BY_FOUR;
        let base = Placement::origin();
        assert!(invariant_under(s, &[base], 2));
        assert!(!invariant_under(s, &[base], 1));
        let cross = Placement::new(1, -1, 1, Orientation::Rotated);
        assert!(invariant_under(s, &[base, cross], 2));
        assert!(!invariant_under(s, &[base, base.translated(1, 0, 1)], 2));
        let sq = BrickShape::new(2, 2).unwrap();
        assert!(invariant_under(sq, &[base], 1));
    }
}
