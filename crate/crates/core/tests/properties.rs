use std::sync::OnceLock;

use brickcount_core::bounds;
use brickcount_core::decomposition::compositions;
use brickcount_core::enumerator::anchored_configurations;
use brickcount_core::geometry::{collides, is_connected};
use brickcount_core::tape::{decode, encode, tape_len, Tape};
use brickcount_core::{BrickShape, Configuration, Orientation, Placement};
use num_bigint::BigInt;
use proptest::prelude::*;

fn s24() -> BrickShape {
    BrickShape::TWO_BY_FOUR
}

fn a4() -> &'static [Configuration] {
    static ALL: OnceLock<Vec<Configuration>> = OnceLock::new();
    ALL.get_or_init(|| anchored_configurations(s24(), 4).unwrap())
}

fn orientation() -> impl Strategy<Value = Orientation> {
    prop_oneof![Just(Orientation::Axis), Just(Orientation::Rotated)]
}

fn placement() -> impl Strategy<Value = Placement> {
    (-6..6i32, -6..6i32, -2..3i32, orientation()).prop_map(|(x, y, z, r)| Placement::new(x, y, z, r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_key_is_constant_on_orbits(
        idx in 0..194_834usize,
        turns in 0..4u32,
        dx in -50..50i32,
        dy in -50..50i32,
        dz in -50..50i32,
    ) {
        let c = &a4()[idx];
        let moved = c.rotated(turns).translated(dx, dy, dz);
        prop_assert_eq!(moved.canonicalize(), c.canonicalize());
    }

    #[test]
    fn contact_relations_are_symmetric(p in placement(), q in placement()) {
        let s = s24();
        prop_assert_eq!(s.overlaps(&p, &q), s.overlaps(&q, &p));
        prop_assert_eq!(s.touches(&p, &q), s.touches(&q, &p));
        prop_assert_eq!(collides(s, &[p], &q), collides(s, &[q], &p));
        prop_assert!(!(s.overlaps(&p, &q) && s.touches(&p, &q)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn decoded_buildings_are_anchored_and_reencode(entries in proptest::collection::vec((0..tape_len(s24(), 4), -8..=8i32), 0..5)) {
        let mut values = vec![0; tape_len(s24(), 4)];
        for (i, v) in entries {
            values[i] = v;
        }
        let tape = Tape::new(s24(), 4, values).unwrap();
        if let Some(c) = decode(&tape).building() {
            prop_assert_eq!(c.len(), 4);
            prop_assert_eq!(tape.nonzero_count(), 3);
            prop_assert!(is_connected(s24(), c.placements()));
            prop_assert_eq!(c.in_layer(0).count(), 1);
            prop_assert_eq!(c.min_z(), 0);
            let again = encode(c).unwrap();
            prop_assert_eq!(decode(&again).building().cloned(), Some(c.clone()));
        }
    }

    #[test]
    fn any_a4_member_round_trips(idx in 0..194_834usize) {
        let c = &a4()[idx];
        let t = encode(c).unwrap();
        prop_assert_eq!(t.nonzero_count(), 3);
        prop_assert_eq!(decode(&t).building().cloned(), Some(c.clone()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lower_bound_monotone_in_counts(k in 1..6usize, extra in 1..u32::MAX) {
        let base: Vec<BigInt> = bounds::C_2X4[..k].iter().map(|&c| BigInt::from(c)).collect();
        let mut longer = base.clone();
        longer.push(BigInt::from(extra));
        let a = bounds::lower_bound_from_c(&base).unwrap();
        let b = bounds::lower_bound_from_c(&longer).unwrap();
        prop_assert!(b.hundredths >= a.hundredths);
    }
}

#[test]
fn composition_counts() {
    for n in 1..=10 {
        assert_eq!(compositions(n).len(), 1 << (n - 1));
    }
}
