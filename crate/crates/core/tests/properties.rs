use std::collections::BTreeSet;

use proptest::prelude::*;

use arithstat::continuity::{map_sequence, RealFunction};
use arithstat::density::{block_exceedance, exceedance_prefix, prefix_density};
use arithstat::kernel::{deviation, gcd_pair, SeqSample, WitnessModulus};
use arithstat::lacunary::{is_refinement, union_refinement, BlockRatio, LacunaryScheme};

fn naive_gcd(a: u64, b: u64) -> u64 {
    (1..=a.min(b)).rev().find(|d| a % d == 0 && b % d == 0).unwrap()
}

/// Values on the lattice k/4, where scaling by 0.5, 2 and sums are exact.
fn lattice_sample(max_len: usize) -> impl Strategy<Value = SeqSample> {
    prop::collection::vec(-40i32..=40, 1..max_len)
        .prop_map(|v| SeqSample::new(v.into_iter().map(|k| k as f64 / 4.0).collect()).unwrap())
}

fn scheme_strategy(max_point: u64) -> impl Strategy<Value = LacunaryScheme> {
    prop::collection::btree_set(1..=max_point, 2..12)
        .prop_map(|s| LacunaryScheme::new(s.into_iter().collect()).unwrap())
}

fn witness() -> impl Strategy<Value = WitnessModulus> {
    (1u64..=64).prop_map(|n| WitnessModulus::new(n).unwrap())
}

fn eps() -> impl Strategy<Value = f64> {
    prop::sample::select(vec![1.0, 0.5, 0.25, 0.1, 0.05, 0.01])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gcd_matches_naive(a in 1u64..2000, b in 1u64..2000) {
        prop_assert_eq!(gcd_pair(a, b).unwrap(), naive_gcd(a, b));
        prop_assert_eq!(gcd_pair(a, b).unwrap(), gcd_pair(b, a).unwrap());
    }

    #[test]
    fn exceedance_matches_brute_force(x in lattice_sample(400), n in witness(), e in eps()) {
        let t = x.len();
        let expected: Vec<u64> = (1..=t)
            .filter(|&m| (x.get(m).unwrap() - x.get(naive_gcd(m, n.get())).unwrap()).abs() >= e)
            .collect();
        prop_assert_eq!(exceedance_prefix(&x, n, e, t).unwrap().members, expected);
    }

    #[test]
    fn deviation_scales_by_abs_c(
        x in lattice_sample(200),
        n in witness(),
        c in prop::sample::select(vec![0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 4.0]),
    ) {
        let cx = x.scaled(c).unwrap();
        for m in 1..=x.len() {
            prop_assert_eq!(deviation(&cx, m, n).unwrap(), c.abs() * deviation(&x, m, n).unwrap());
        }
    }

    #[test]
    fn deviation_triangle_inequality(
        (x, y) in (1usize..200).prop_flat_map(|len| {
            let v = prop::collection::vec(-40i32..=40, len);
            (v.clone(), v)
        }),
        n in witness(),
    ) {
        let to = |v: Vec<i32>| SeqSample::new(v.into_iter().map(|k| k as f64 / 4.0).collect()).unwrap();
        let (x, y) = (to(x), to(y));
        let s = x.add(&y).unwrap();
        for m in 1..=x.len() {
            prop_assert!(deviation(&s, m, n).unwrap() <= deviation(&x, m, n).unwrap() + deviation(&y, m, n).unwrap());
        }
    }

    #[test]
    fn density_is_monotone_in_eps(x in lattice_sample(300), n in witness()) {
        let grid = [2.0, 1.0, 0.5, 0.25, 0.1, 0.01];
        let t = x.len();
        let d: Vec<f64> = grid.iter().map(|&e| prefix_density(&x, n, e, t).unwrap()).collect();
        prop_assert!(d.windows(2).all(|w| w[0] <= w[1]), "{:?}", d);
    }

    #[test]
    fn blocks_tile_the_prefix(x in lattice_sample(500), s in scheme_strategy(499), n in witness(), e in eps()) {
        let r_max = s.blocks_within(x.len());
        prop_assume!(r_max >= 1);
        let mut from_blocks = Vec::new();
        for r in 1..=r_max {
            from_blocks.extend(block_exceedance(&x, &s, n, e, r).unwrap().members);
        }
        let upper = s.points()[r_max];
        let direct: Vec<u64> = exceedance_prefix(&x, n, e, upper)
            .unwrap()
            .members
            .into_iter()
            .filter(|&m| m > s.first_point())
            .collect();
        prop_assert_eq!(from_blocks, direct);
    }

    #[test]
    fn union_refines_both(a in scheme_strategy(300), b in scheme_strategy(300)) {
        let u = union_refinement(&a, &b);
        prop_assert!(is_refinement(&a, &u));
        prop_assert!(is_refinement(&b, &u));
        let expected: BTreeSet<u64> = a.points().iter().chain(b.points()).copied().collect();
        prop_assert_eq!(u.points().to_vec(), expected.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn block_ratio_order_matches_cross_multiplication(p in 0u64..50, q in 1u64..50, r in 0u64..50, s in 1u64..50) {
        let (a, b) = (BlockRatio::new(p, q), BlockRatio::new(r, s));
        prop_assert_eq!(a.cmp(&b), (p * s).cmp(&(r * q)));
        prop_assert_eq!(a == b, p * s == r * q);
    }

    #[test]
    fn affine_map_scales_deviation(
        x in lattice_sample(200),
        n in witness(),
        a in prop::sample::select(vec![1.0, -1.0, 0.5, 2.0, -4.0]),
        b in -8i32..8,
    ) {
        let f = RealFunction::Affine { a, b: b as f64 / 4.0 };
        let y = map_sequence(&f, &x).unwrap();
        for m in 1..=x.len() {
            prop_assert_eq!(deviation(&y, m, n).unwrap(), a.abs() * deviation(&x, m, n).unwrap());
        }
        let id = map_sequence(&RealFunction::identity(), &x).unwrap();
        prop_assert_eq!(id.values(), x.values());
    }
}
