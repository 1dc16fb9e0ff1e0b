//! Property tests over the structural invariants of each module.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use cosmohedra::cosmofan::fan_meet;
use cosmohedra::exactgeom::{fmt_rat, parse_rat, rat};
use cosmohedra::matryoshka::{enumerate, Matryoshka};
use cosmohedra::polygon::{crossing, diagonals, enumerate_subdivisions, ChordSet, SubPolygon};
use cosmohedra::realization::{default_params, verify_cosmohedron, Sampling};
use cosmohedra::series::{
    f_polynomials_recurrence, g_transform, subdivision_type_count, subdivision_type_counts_by_enumeration, FPoly,
};
use cosmohedra::uloop::{compatible, default_loop_params, enumerate_loop_triangulations, loop_curves, Orientation};

fn all_matryoshkas(n: usize) -> &'static [Matryoshka] {
    static CACHE: [OnceLock<Vec<Matryoshka>>; 5] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    CACHE[n - 1].get_or_init(|| enumerate(n, false))
}

fn matryoshka(n: usize, i: usize) -> &'static Matryoshka {
    let all = all_matryoshkas(n);
    &all[i % all.len()]
}

fn poly(coeffs: Vec<i64>) -> FPoly {
    FPoly::new(coeffs.into_iter().map(BigInt::from).collect())
}

fn quads(m: &Matryoshka) -> usize {
    m.polygons().iter().filter(|p| p.size() == 4).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_text_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
    }

    #[test]
    fn bracketed_tree_round_trip(n in 1usize..=4, i in 0usize..10_000) {
        let m = matryoshka(n, i);
        prop_assert_eq!(&m.to_bracketed_tree().to_matryoshka(), m);
    }

    #[test]
    fn matryoshkas_are_valid_and_contain_the_full_polygon(n in 1usize..=4, i in 0usize..10_000) {
        let m = matryoshka(n, i);
        prop_assert!(m.validate().is_ok());
        prop_assert!(m.contains(&SubPolygon::full(n)));
        prop_assert!(m.subdivision().cells().iter().all(|c| m.contains(c)));
    }

    #[test]
    fn leq_is_a_partial_order(i in 0usize..10_000, j in 0usize..10_000, k in 0usize..10_000) {
        let (a, b, c) = (matryoshka(4, i), matryoshka(4, j), matryoshka(4, k));
        prop_assert!(a.leq(a));
        if a.leq(b) && b.leq(a) {
            prop_assert_eq!(a, b);
        }
        if a.leq(b) && b.leq(c) {
            prop_assert!(a.leq(c));
        }
    }

    #[test]
    fn covers_lie_one_step_below(n in 1usize..=4, i in 0usize..10_000) {
        let m = matryoshka(n, i);
        for c in m.covers() {
            prop_assert!(c.validate().is_ok());
            prop_assert!(c.leq(m) && &c != m);
            prop_assert_eq!(c.codim() + 1, m.codim());
        }
    }

    #[test]
    fn maximal_matryoshkas_have_edge_degree_from_quadrilaterals(n in 2usize..=5, i in 0usize..10_000) {
        let maximal: Vec<&Matryoshka> = all_matryoshkas(n).iter().filter(|m| m.is_maximal()).collect();
        let m = maximal[i % maximal.len()];
        prop_assert!(m.subdivision().is_triangulation());
        prop_assert!(quads(m) >= 1);
        prop_assert_eq!(m.covers().len(), n - 2 + quads(m));
    }

    #[test]
    fn fan_meet_is_a_common_lower_bound(i in 0usize..10_000, j in 0usize..10_000) {
        let (a, b) = (matryoshka(3, i), matryoshka(3, j));
        let m = fan_meet(a, b);
        prop_assert_eq!(&m, &fan_meet(b, a));
        prop_assert!(m.leq(a) && m.leq(b));
        if a.leq(b) {
            prop_assert_eq!(&m, a);
        }
    }

    #[test]
    fn subdivision_cells_tile_the_polygon(n in 1usize..=6, i in 0usize..100_000) {
        let subs = enumerate_subdivisions(n, true);
        let s = &subs[i % subs.len()];
        let cells = s.cells();
        prop_assert_eq!(cells.len(), s.len() + 1);
        prop_assert_eq!(cells.iter().map(|c| c.size() - 2).sum::<usize>(), n);
        prop_assert!(s.chords().iter().all(|d| !s.chords().iter().any(|e| crossing(d, e))));
    }

    #[test]
    fn chord_sets_are_normalised(n in 2usize..=6, picks in proptest::collection::vec(0usize..1000, 0..4)) {
        let ds = diagonals(n);
        let mut chosen = Vec::new();
        for d in picks.iter().map(|&p| ds[p % ds.len()]) {
            if !chosen.iter().any(|e| crossing(&d, e)) {
                chosen.push(d);
            }
        }
        let a = ChordSet::new(n, chosen.clone());
        chosen.reverse();
        let b = ChordSet::new(n, chosen);
        prop_assert_eq!(&a, &b);
        let unique: BTreeSet<_> = a.chords().iter().collect();
        prop_assert_eq!(unique.len(), a.len());
    }

    #[test]
    fn polynomial_ring_laws(
        a in proptest::collection::vec(-50i64..50, 0..6),
        b in proptest::collection::vec(-50i64..50, 0..6),
        c in proptest::collection::vec(-50i64..50, 0..6),
    ) {
        let (a, b, c) = (poly(a), poly(b), poly(c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&FPoly::one()), a.clone());
    }

    #[test]
    fn loop_compatibility_is_symmetric(n in 1usize..=4, i in 0usize..1000, j in 0usize..1000) {
        let curves = loop_curves(n);
        let (x, y) = (&curves[i % curves.len()], &curves[j % curves.len()]);
        prop_assert_eq!(compatible(n, x, y), compatible(n, y, x));
        prop_assert!(compatible(n, x, x));
    }

    #[test]
    fn default_loop_parameters_are_admissible(n in 1usize..=5, p in 1i64..100, q in 100i64..1000) {
        prop_assert!(default_loop_params(n, &rat(p, q)).problems().is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn realization_holds_below_the_epsilon_bound(n in 2usize..=3, p in 1i64..50, q in 50i64..100) {
        let base = default_params(n);
        let bound = base.epsilon_bound().unwrap_or_else(|| rat(1, 24));
        let params = base.with_epsilon(bound * rat(p, q));
        let report = verify_cosmohedron(&params, Sampling::Exhaustive);
        prop_assert!(report.ok(), "{:?}", report.failures);
    }
}

#[test]
fn subdivision_type_multiplicities_match_enumeration() {
    for n in 1..=7 {
        for (a, count) in subdivision_type_counts_by_enumeration(n) {
            assert_eq!(subdivision_type_count(n, &a), BigInt::from(count), "n={n} type {a:?}");
        }
    }
}

#[test]
fn f_polynomials_have_unit_constant_term_and_divisible_g() {
    for f in f_polynomials_recurrence(8) {
        assert!(f.coeff(0).is_one());
        let g = g_transform(&f).expect("divisible");
        assert_eq!(g.eval_one(), BigInt::from(2) * f.eval_one() - BigInt::one());
    }
}

#[test]
fn loop_triangulations_follow_central_binomials() {
    for (n, want) in [(1, 2), (2, 6), (3, 20), (4, 70)] {
        let ts = enumerate_loop_triangulations(n).expect("enumeration");
        assert_eq!(ts.len(), want, "n={n}");
        let cw = ts.iter().filter(|t| t.color() == Some(Orientation::Cw)).count();
        assert_eq!(2 * cw, want, "n={n}");
        for t in &ts {
            assert!(!t.spokes().is_empty());
            assert_eq!(t.curves.len(), n, "n={n}");
        }
    }
}

#[test]
fn cosmohedron_face_counts_sum_to_matryoshka_counts() {
    let f = f_polynomials_recurrence(4);
    for n in 1..=4 {
        let total: BigInt = f[n - 1].coeffs().iter().sum();
        assert_eq!(total, BigInt::from(all_matryoshkas(n).len()), "n={n}");
    }
}
