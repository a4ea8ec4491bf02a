use std::collections::BTreeSet;

use chipwalk_core::{
    gcd, q_param, reachable_set, round_diagonal, thm1_condition, thm2_condition, Error, GameParams,
    PositionClass,
};
use proptest::prelude::*;

fn arb_rect(max: u64) -> impl Strategy<Value = GameParams> {
    (3..=max, 3..=max)
        .prop_flat_map(|(m, n)| (1..m.min(n) - 1, Just(m), Just(n)))
        .prop_flat_map(|(a, m, n)| (Just(a), a + 1..m.min(n), Just(m), Just(n)))
        .prop_map(|(a, b, m, n)| GameParams::new(a, b, m, n).unwrap())
}

fn arb_square(max: u64) -> impl Strategy<Value = GameParams> {
    (3..=max)
        .prop_flat_map(|n| (1..n - 1, Just(n)))
        .prop_flat_map(|(a, n)| (Just(a), a + 1..n, Just(n)))
        .prop_map(|(a, b, n)| GameParams::square(a, b, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn diagonal_pair_never_reachable(p in arb_square(80)) {
        let r = reachable_set(p).unwrap();
        prop_assert!(!r.contains(p.position(p.a() as i128, p.a() as i128)));
        prop_assert!(!r.contains(p.position(p.b() as i128, p.b() as i128)));
    }

    #[test]
    fn depth_lies_on_round_diagonal(p in arb_rect(25)) {
        let r = reachable_set(p).unwrap();
        for pos in r.reachable() {
            let d = r.depth(pos).unwrap();
            prop_assert!(round_diagonal(p, d as u64).contains(&pos));
        }
    }

    #[test]
    fn parents_are_expandable_and_one_layer_up(p in arb_rect(25)) {
        let r = reachable_set(p).unwrap();
        for pos in r.reachable() {
            let d = r.depth(pos).unwrap();
            prop_assert!(d >= 1);
            match r.parent(pos) {
                None => prop_assert_eq!(d, 1),
                Some((parent, mv)) => {
                    prop_assert_eq!(r.depth(parent), Some(d - 1));
                    prop_assert_eq!(r.class(parent), Some(PositionClass::Interior));
                    prop_assert_eq!(p.step(parent, mv), pos);
                }
            }
        }
    }

    #[test]
    fn reachable_set_is_closed_under_interior_expansion(p in arb_rect(25)) {
        let r = reachable_set(p).unwrap();
        let set: BTreeSet<_> = r.reachable().collect();
        let mut expandable: Vec<_> = set
            .iter()
            .copied()
            .filter(|&pos| p.classify(pos) == PositionClass::Interior)
            .collect();
        expandable.push(p.start());
        for pos in expandable {
            for mv in chipwalk_core::MoveKind::ALL {
                prop_assert!(set.contains(&p.step(pos, mv)));
            }
        }
    }

    #[test]
    fn witnesses_replay(p in arb_rect(20)) {
        let r = reachable_set(p).unwrap();
        for pos in r.reachable() {
            let w = r.witness_path(pos).unwrap();
            prop_assert_eq!(w.check(p), Ok(()));
            prop_assert_eq!(w.len() as u32, r.depth(pos).unwrap());
        }
    }

    #[test]
    fn q_map_is_bijective_under_gcd_conditions(p in arb_square(40)) {
        let n = p.n() as u128;
        let coprime = gcd((p.a() + p.b()) as u128, n) == 1 && gcd((p.b() - p.a()) as u128, n) == 1;
        let image: BTreeSet<_> = (0..p.n() as i128)
            .flat_map(|i| (0..p.n() as i128).map(move |j| (i, j)))
            .map(|(i, j)| q_param(p, i, j).unwrap())
            .collect();
        prop_assert_eq!(image.len() as u64 == p.cell_count(), coprime);
    }

    #[test]
    fn thm1_beyond_scan_range(p in arb_square(60)) {
        let predicted = thm1_condition(p.a(), p.b(), p.n()).unwrap();
        let observed = reachable_set(p).unwrap().full_reachability_square().unwrap();
        prop_assert_eq!(predicted, observed);
    }

    #[test]
    fn thm1_condition_mirror(p in arb_square(200)) {
        let n = p.n();
        let mirrored = thm1_condition(n - p.b(), n - p.a(), n).unwrap();
        prop_assert_eq!(thm1_condition(p.a(), p.b(), n).unwrap(), mirrored);
    }

    #[test]
    fn thm2_beyond_scan_range(p in arb_rect(45)) {
        match thm2_condition(p.a(), p.b(), p.m(), p.n()) {
            Ok(t) => prop_assert_eq!(t.holds(), reachable_set(p).unwrap().all_wins_alice()),
            Err(Error::Hypothesis(_)) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}
