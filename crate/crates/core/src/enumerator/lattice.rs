use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{BrickShape, Orientation, Placement};

/// How the root of the search is fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// Translation classes: the root is the brick whose `(z, y, x)` is least,
    /// so every other brick lies lexicographically after it. Both root
    /// orientations are searched.
    Free,
    /// The anchored class: a fixed axis-aligned base brick at the origin,
    /// everything else strictly above layer 0.
    Anchored,
}

/// Every placement reachable from the root within `target - 1` contacts,
/// indexed densely, with contact and collision adjacency restricted to the
/// allowed half-space.
#[derive(Clone, Debug)]
pub(crate) struct Lattice {
    pub shape: BrickShape,
    pub layers: usize,
    margin: i32,
    side: i32,
    orients: i32,
    pub allowed: Vec<bool>,
    pub layer: Vec<u8>,
    nbr_start: Vec<u32>,
    nbrs: Vec<u32>,
    coll_start: Vec<u32>,
    colls: Vec<u32>,
    pub roots: Vec<u32>,
}

impl Lattice {
    pub fn new(shape: BrickShape, region: Region, target: usize) -> Self {
        let target = target.max(1);
        let margin = (target as i32 - 1) * (shape.w() as i32 - 1);
        let side = 2 * margin + 1;
        let orients = shape.orientations().len() as i32;
        let layers = target;
        let size = (side * side) as usize * layers * orients as usize;

        let mut lat = Lattice {
            shape,
            layers,
            margin,
            side,
            orients,
            allowed: vec![false; size],
            layer: vec![0; size],
            nbr_start: Vec::with_capacity(size + 1),
            nbrs: Vec::new(),
            coll_start: Vec::with_capacity(size + 1),
            colls: Vec::new(),
            roots: Vec::new(),
        };

        for idx in 0..size {
            let p = lat.placement(idx as u32);
            lat.layer[idx] = p.z as u8;
            lat.allowed[idx] = match region {
                Region::Free => (p.z, p.y, p.x) >= (0, 0, 0),
                Region::Anchored => p.z >= 1 || p == Placement::origin(),
            };
        }
        match region {
            Region::Free => {
                for &rot in shape.orientations() {
                    let root = Placement::new(0, 0, 0, rot);
                    lat.roots.push(lat.index(&root).expect("root in range"));
                }
            }
            Region::Anchored => lat.roots.push(lat.index(&Placement::origin()).expect("root in range")),
        }
        // The other orientation at (0, 0, 0) collides with the root, so it may
        // stay allowed; it is never added.

        for idx in 0..size {
            lat.nbr_start.push(lat.nbrs.len() as u32);
            lat.coll_start.push(lat.colls.len() as u32);
            if !lat.allowed[idx] {
                continue;
            }
            let p = lat.placement(idx as u32);
            let mut nb: Vec<u32> = shape
                .placements_above(&p)
                .into_iter()
                .chain(shape.placements_below(&p))
                .filter_map(|q| lat.index(&q))
                .filter(|&q| lat.allowed[q as usize])
                .collect();
            nb.sort_unstable();
            lat.nbrs.extend(nb);
            let mut co: Vec<u32> = shape
                .placements_below(&p.translated(0, 0, 1))
                .into_iter()
                .filter_map(|q| lat.index(&q))
                .filter(|&q| lat.allowed[q as usize])
                .collect();
            co.sort_unstable();
            lat.colls.extend(co);
        }
        lat.nbr_start.push(lat.nbrs.len() as u32);
        lat.coll_start.push(lat.colls.len() as u32);
        lat
    }

    pub fn len(&self) -> usize {
        self.allowed.len()
    }

    pub fn index(&self, p: &Placement) -> Option<u32> {
        let p = self.shape.normalize(*p);
        let (x, y) = (p.x + self.margin, p.y + self.margin);
        if x < 0 || y < 0 || x >= self.side || y >= self.side || p.z < 0 || p.z as usize >= self.layers {
            return None;
        }
        let o = if self.orients == 1 { 0 } else { p.rot.bit() as i32 };
        Some((((p.z * self.side + y) * self.side + x) * self.orients + o) as u32)
    }

    pub fn placement(&self, idx: u32) -> Placement {
        let idx = idx as i32;
        let o = idx % self.orients;
        let rest = idx / self.orients;
        let x = rest % self.side - self.margin;
        let rest = rest / self.side;
        let y = rest % self.side - self.margin;
        let z = rest / self.side;
        let rot = if o == 0 { Orientation::Axis } else { Orientation::Rotated };
        Placement::new(x, y, z, rot)
    }

    #[inline]
    pub fn neighbors(&self, idx: u32) -> &[u32] {
        let i = idx as usize;
        &self.nbrs[self.nbr_start[i] as usize..self.nbr_start[i + 1] as usize]
    }

    /// Allowed placements in the same layer whose footprints overlap `idx`, itself included.
    #[inline]
    pub fn collisions(&self, idx: u32) -> &[u32] {
        let i = idx as usize;
        &self.colls[self.coll_start[i] as usize..self.coll_start[i + 1] as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trips() {
        let lat = Lattice::new(BrickShape::TWO_BY_FOUR, Region::Free, 4);
        for idx in (0..lat.len() as u32).step_by(7) {
            assert_eq!(lat.index(&lat.placement(idx)), Some(idx));
        }
        assert_eq!(lat.index(&Placement::new(100, 0, 0, Orientation::Axis)), None);
    }

    #[test]
    fn adjacency_sizes() {
        let lat = Lattice::new(BrickShape::TWO_BY_FOUR, Region::Anchored, 4);
        let root = lat.roots[0];
        assert_eq!(lat.neighbors(root).len(), 46);
        let mid = lat.index(&Placement::new(0, 0, 2, Orientation::Rotated)).unwrap();
        assert_eq!(lat.neighbors(mid).len(), 92);
        assert_eq!(lat.collisions(mid).len(), 46);
        assert!(lat.collisions(mid).contains(&mid));
    }

    #[test]
    fn free_region_is_lexicographic() {
        let lat = Lattice::new(BrickShape::TWO_BY_FOUR, Region::Free, 3);
        let below_root = lat.index(&Placement::new(5, -1, 0, Orientation::Axis)).unwrap();
        assert!(!lat.allowed[below_root as usize]);
        let right = lat.index(&Placement::new(-3, 1, 0, Orientation::Axis)).unwrap();
        assert!(lat.allowed[right as usize]);
    }
}
