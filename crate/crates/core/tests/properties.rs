//! Property tests for the invariants each module promises.

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use torus_wrt::asymp::{aec_terms_su2, evaluate_expansion, phase_set, table_row};
use torus_wrt::gaussrec::{enumerate_quotient, gauss_sum_1d, lattice_gauss_lhs, lattice_gauss_rhs, random_problem, reciprocity_rhs_1d};
use torus_wrt::moduli::{
    coboundary_matrix, cocycle_matrix, cohomology_dims, cs_set, generic_triple, point_triple, random_su2, su2_components,
    sun_cs_completely_reducible, sun_cs_partially_reducible,
};
use torus_wrt::phase::mod1;
use torus_wrt::weightlat::{
    casimir_identity_sides, diagram_to_weight, enumerate_diagrams, involution_star, weight_to_diagram, YoungDiagram,
};
use torus_wrt::wrt::{
    classify, invariant_direct, invariant_su2_closed, invariant_su2_link_closed, invariant_su2_link_direct,
    invariant_word_modulus, sl2z_word, BundleClass, SL2ZMatrix,
};
use torus_wrt::{Q, C64};

fn seeded(cases: u32, seed: u64) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

fn sl2z() -> impl Strategy<Value = SL2ZMatrix> {
    // Products of random generators, so every element is reachable.
    prop::collection::vec(0u8..3, 0..8).prop_map(|w| {
        w.into_iter().fold(SL2ZMatrix::IDENTITY, |acc, g| {
            acc * match g {
                0 => SL2ZMatrix::S,
                1 => SL2ZMatrix::T,
                _ => SL2ZMatrix::T.inverse(),
            }
        })
    })
}

fn label() -> impl Strategy<Value = (usize, u32, YoungDiagram)> {
    (2usize..=6, 0u32..=12).prop_flat_map(|(n, k)| {
        let ds = enumerate_diagrams(n, k).unwrap();
        (Just(n), Just(k), prop::sample::select(ds))
    })
}

proptest! {
    #![proptest_config(seeded(400, 11))]

    #[test]
    fn casimir_identity((n, _k, lam) in label()) {
        let (lhs, rhs) = casimir_identity_sides(&lam, n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_is_an_involution((n, k, lam) in label()) {
        let s = involution_star(&lam, n).unwrap();
        prop_assert!(s.in_gamma(n, k));
        prop_assert_eq!(involution_star(&s, n).unwrap(), lam);
    }

    #[test]
    fn weights_round_trip((n, k, lam) in label()) {
        let w = diagram_to_weight(&lam, n).unwrap();
        prop_assert!(w.is_dominant() && w.in_alcove(k));
        prop_assert_eq!(weight_to_diagram(&w).unwrap(), lam);
    }
}

proptest! {
    #![proptest_config(seeded(1000, 7))]

    #[test]
    fn scalar_reciprocity(a in -30i64..=30, c in -30i64..=30, h in -30i64..30) {
        prop_assume!(a != 0 && c != 0);
        let b = 2 * h + (a * c).rem_euclid(2);
        let l = gauss_sum_1d(a, b, c).unwrap();
        let r = reciprocity_rhs_1d(a, b, c).unwrap();
        prop_assert!((l - r).norm() <= 1e-9, "{} vs {}", l, r);
    }
}

proptest! {
    #![proptest_config(seeded(300, 5))]

    #[test]
    fn quotient_representatives(m in prop::array::uniform4(-8i64..=8)) {
        let mat = vec![vec![m[0], m[1]], vec![m[2], m[3]]];
        let det = m[0] * m[3] - m[1] * m[2];
        prop_assume!(det != 0 && det.abs() <= 64);
        let reps = enumerate_quotient(&mat).unwrap();
        prop_assert_eq!(reps.len() as i64, det.abs());
        // x ≡ y mod M·Z² iff adj(M)(x − y) ≡ 0 mod det.
        let adj = [m[3], -m[1], -m[2], m[0]];
        let key = |v: &Vec<i64>| {
            ((adj[0] * v[0] + adj[1] * v[1]).rem_euclid(det.abs()), (adj[2] * v[0] + adj[3] * v[1]).rem_euclid(det.abs()))
        };
        let keys: BTreeSet<_> = reps.iter().map(key).collect();
        prop_assert_eq!(keys.len(), reps.len());
    }

    #[test]
    fn words_multiply_out(u in sl2z()) {
        let w = sl2z_word(u);
        let want = if w.negated { u.neg() } else { u };
        prop_assert_eq!(w.product(), want);
        let size = u.a.abs() + u.b.abs() + u.c.abs() + u.d.abs();
        prop_assert!(w.gens.len() as i64 <= 4 * size + 8);
    }

    #[test]
    fn classify_is_conjugation_invariant(u in sl2z(), p in sl2z()) {
        let v = p * u * p.inverse();
        prop_assert_eq!(classify(v).unwrap(), classify(u).unwrap());
    }

    #[test]
    fn classify_reconstructs_shears(b in -20i64..=20, minus in any::<bool>(), p in sl2z()) {
        let class = if minus { BundleClass::TraceMinus2(b) } else { BundleClass::Trace2(b) };
        prop_assume!(b != 0);
        let u = p * class.representative() * p.inverse();
        prop_assert_eq!(classify(u).unwrap(), class);
    }
}

proptest! {
    #![proptest_config(seeded(60, 3))]

    #[test]
    fn su2_oracles(k in 0u32..=60, b in -6i64..=6) {
        prop_assume!(b != 0);
        let direct = invariant_direct(2, k, BundleClass::Trace2(b)).unwrap().value;
        let closed = invariant_su2_closed(k, b).unwrap();
        prop_assert!((direct - closed).norm() <= 1e-9 * (1.0 + closed.norm()));
        let word = invariant_word_modulus(k, BundleClass::Trace2(b).representative());
        prop_assert!((word - closed.norm()).abs() <= 1e-8);
    }

    #[test]
    fn link_forms_agree(k in 0u32..=40, b in -6i64..=6, j in 0u32..=40) {
        prop_assume!(b != 0 && j <= k);
        let d = invariant_su2_link_direct(k, b, j).unwrap();
        let c = invariant_su2_link_closed(k, b, j).unwrap();
        prop_assert!((d - c).norm() <= 1e-9 * (1.0 + d.norm()));
    }

    #[test]
    fn cocycles_contain_coboundaries(j in 0i64..12, m in -12i64..=12, s in 0.0f64..1.0, t in 0.0f64..1.0, seed in any::<u64>()) {
        prop_assume!(m != 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_su2(&mut rng);
        let triple = generic_triple(j, m, s, t).unwrap().conjugate(&g);
        let residual = (cocycle_matrix(&triple).unwrap() * coboundary_matrix(&triple)).amax();
        prop_assert!(residual <= 1e-8);
    }

    #[test]
    fn cohomology_is_conjugation_invariant(m in prop::sample::select(vec![-7i64, -3, -1, 1, 5, 9]), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for base in [point_triple(m).unwrap(), generic_triple(1, m, 0.17, 0.61).unwrap()] {
            let before = cohomology_dims(&base).unwrap();
            let after = cohomology_dims(&base.conjugate(&random_su2(&mut rng))).unwrap();
            prop_assert_eq!(before, after);
        }
    }
}

#[test]
fn trace_minus_two_equals_trace_two_for_su2() {
    for k in 0..=60 {
        for b in -12..=12 {
            let p = invariant_direct(2, k, BundleClass::Trace2(b)).unwrap().value;
            let m = invariant_direct(2, k, BundleClass::TraceMinus2(b)).unwrap().value;
            assert_eq!(p, m);
        }
    }
}

#[test]
fn lattice_reciprocity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    for _ in 0..200 {
        let p = random_problem(&mut rng);
        let res = (lattice_gauss_lhs(&p) - lattice_gauss_rhs(&p).unwrap()).norm();
        assert!(res <= 1e-9 * (p.r() as f64).powi(p.rank() as i32), "{p:?}: {res}");
    }
}

#[test]
fn phase_sets_agree_across_modules() {
    for b in (-12i64..=12).filter(|&b| b != 0) {
        let moduli = cs_set(&su2_components(b).unwrap());
        assert_eq!(phase_set(&aec_terms_su2(b).unwrap()), moduli, "b = {b}");
        assert_eq!(table_row(&BundleClass::Trace2(b)).unwrap().cs, moduli);
    }
}

#[test]
fn reducible_formulas_specialise_to_su2() {
    for b in (-12i64..=12).filter(|&b| b != 0) {
        let mut values: BTreeSet<Q> = (0..b.abs())
            .map(|j| sun_cs_completely_reducible(2, b, &[Q::new(j, b), Q::new(-j, b)]).unwrap())
            .collect();
        if b % 2 != 0 {
            values.insert(sun_cs_partially_reducible(2, b, &[2], &[Q::new(1, 2)]).unwrap());
        }
        assert_eq!(values, cs_set(&su2_components(b).unwrap()), "b = {b}");
    }
}

#[test]
fn exact_expansion_identity() {
    for b in (-12i64..=12).filter(|&b| b != 0) {
        let terms = aec_terms_su2(b).unwrap();
        for r in 3..=300i64 {
            let z = invariant_su2_closed((r - 2) as u32, b).unwrap();
            assert!((evaluate_expansion(&terms, r, None) - z).norm() <= 1e-12, "b={b} r={r}");
        }
    }
}

#[test]
fn perturbed_phases_break_the_expansion() {
    for b in (-12i64..=12).filter(|&b| b != 0) {
        let terms = aec_terms_su2(b).unwrap();
        let den = terms.iter().fold(1i64, |acc, t| num_integer::lcm(acc, *t.c.denom()));
        for i in 0..terms.len() {
            let mut bad = terms.clone();
            bad[i].c = mod1(bad[i].c + Q::new(1, 2 * den));
            let broken = (3..=50i64).any(|r| {
                let z: C64 = invariant_su2_closed((r - 2) as u32, b).unwrap();
                (evaluate_expansion(&bad, r, None) - z).norm() > 1e-6
            });
            assert!(broken, "b={b}, term {i}");
        }
    }
}
