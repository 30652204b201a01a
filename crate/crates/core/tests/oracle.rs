//! Breadth-first recount of small buildings by canonical key, independent of
//! the enumeration engine.

use std::collections::{BTreeMap, HashSet};

use brickcount_core::enumerator::{count_total, Unlimited};
use brickcount_core::geometry::{canonicalize, collides};
use brickcount_core::{BrickShape, CanonicalKey, Orientation, Placement};

fn from_key(key: &CanonicalKey) -> Vec<Placement> {
    key.as_tuples()
        .iter()
        .map(|&(z, x, y, r)| Placement::new(x, y, z, if r == 0 { Orientation::Axis } else { Orientation::Rotated }))
        .collect()
}

/// Rotation classes of `n`-brick buildings grown one brick at a time, by height.
fn grow(shape: BrickShape, n_max: usize) -> Vec<BTreeMap<u32, u64>> {
    let mut level: HashSet<CanonicalKey> = HashSet::from([canonicalize(shape, &[Placement::origin()])]);
    let mut out = vec![BTreeMap::from([(1, 1)])];
    for _ in 2..=n_max {
        let mut next = HashSet::new();
        for key in &level {
            let bricks = from_key(key);
            for p in &bricks {
                for q in shape.placements_above(p).into_iter().chain(shape.placements_below(p)) {
                    if !collides(shape, &bricks, &q) {
                        let mut grown = bricks.clone();
                        grown.push(q);
                        next.insert(canonicalize(shape, &grown));
                    }
                }
            }
        }
        let mut heights = BTreeMap::new();
        for key in &next {
            let h = key.as_tuples().iter().map(|t| t.0).max().unwrap() as u32 + 1;
            *heights.entry(h).or_insert(0) += 1;
        }
        out.push(heights);
        level = next;
    }
    out
}

#[test]
fn engine_matches_breadth_first_recount() {
    for (shape, n_max) in [(BrickShape::TWO_BY_FOUR, 4), (BrickShape::new(2, 2).unwrap(), 5), (BrickShape::new(1, 3).unwrap(), 5)] {
        for (i, heights) in grow(shape, n_max).into_iter().enumerate() {
            let ledger = count_total(shape, i + 1, &Unlimited).unwrap();
            assert_eq!(ledger.by_height, heights, "{shape} n = {}", i + 1);
        }
    }
}
