use abtrace_core::exact_algebra::{parse_rf, rf_equal, RationalFunction};
use abtrace_core::graded_vect::euler_trace;
use abtrace_core::projective::{
    ab_rhs, cohomology_action, fixed_points, lambda_x, lefschetz_lhs, skyscraper_local_trace, verify_ab, BundleSpec,
    ProjScenario, Verdict,
};
use abtrace_core::random;
use proptest::prelude::*;

fn rf(s: &str) -> RationalFunction {
    parse_rf(s).unwrap()
}

/// Complete homogeneous symmetric polynomial by the recursion
/// `h_m(x_0..x_k) = h_m(x_0..x_{k-1}) + x_k h_{m-1}(x_0..x_k)`.
fn h(m: i64, xs: &[RationalFunction]) -> RationalFunction {
    if m < 0 {
        return RationalFunction::zero();
    }
    if m == 0 {
        return RationalFunction::one();
    }
    match xs.split_last() {
        None => RationalFunction::zero(),
        Some((last, init)) => &h(m, init) + &(last * &h(m - 1, xs)),
    }
}

/// Alternating trace on `H^*(O(m))`: `h_m(λ)` for `m ≥ 0`, and by duality
/// `(-1)^n h_{-m-n-1}(λ^{-1}) / Π λ_i` for `m ≤ -n-1`.
fn lefschetz_oracle(lam: &[RationalFunction], m: i64) -> RationalFunction {
    let n = lam.len() as i64 - 1;
    if m >= 0 {
        return h(m, lam);
    }
    if m > -n - 1 {
        return RationalFunction::zero();
    }
    let inv: Vec<_> = lam.iter().map(|l| l.recip().unwrap()).collect();
    let prod = inv.iter().fold(RationalFunction::one(), |a, b| &a * b);
    let v = &h(-m - n - 1, &inv) * &prod;
    if n % 2 == 0 {
        v
    } else {
        &RationalFunction::zero() - &v
    }
}

fn binom(n: i64, k: i64) -> usize {
    (1..=k).fold(1i64, |acc, i| acc * (n - k + i) / i) as usize
}

fn p1() -> ProjScenario {
    ProjScenario::new(vec![rf("q"), rf("1")]).unwrap()
}

#[test]
fn p1_golden_nonnegative_twists() {
    for n in [0i64, 1, 2, 3, 5] {
        let rep = verify_ab(&p1(), &BundleSpec::line(n)).unwrap();
        let series: RationalFunction = (0..=n).map(|k| RationalFunction::var("q").pow(k).unwrap()).sum();
        let closed = rf(&format!("(q^{}-1)/(q-1)", n + 1));
        assert_eq!(rep.verdict, Verdict::Equal, "O({n})");
        assert_eq!(rep.lhs, series);
        assert!(rf_equal(&rep.lhs, &closed));
        assert!(rf_equal(rep.rhs.as_ref().unwrap(), &closed));
    }
}

#[test]
fn p1_golden_negative_twists() {
    let rep = verify_ab(&p1(), &BundleSpec::line(-1)).unwrap();
    assert!(rep.lhs.is_zero());
    assert!(rep.rhs.unwrap().is_zero());
    for n in [-2i64, -3, -5] {
        let rep = verify_ab(&p1(), &BundleSpec::line(n)).unwrap();
        let expected: RationalFunction =
            (0..=-n - 2).map(|k| &RationalFunction::zero() - &RationalFunction::var("q").pow(-(k + 1)).unwrap()).sum();
        assert_eq!(rep.verdict, Verdict::Equal, "O({n})");
        assert!(rf_equal(&rep.lhs, &expected));
        assert!(rf_equal(rep.rhs.as_ref().unwrap(), &expected));
    }
}

#[test]
fn structure_sheaf_sums_to_one() {
    for n in 1..=4 {
        let sc = ProjScenario::powers_of("q", n);
        assert!(rf_equal(&ab_rhs(&sc, &BundleSpec::line(0)).unwrap(), &RationalFunction::one()));
    }
    let mut rng = random::rng(0xc0_34);
    for n in 1..=4 {
        for _ in 0..20 {
            let sc = ProjScenario::new(random::distinct_eigenvalues(&mut rng, n)).unwrap();
            assert_eq!(ab_rhs(&sc, &BundleSpec::line(0)).unwrap(), RationalFunction::one());
        }
    }
}

#[test]
fn cohomology_matches_symmetric_function_oracle() {
    for n in 1..=3 {
        let sc = ProjScenario::powers_of("q", n);
        for m in -7..=5 {
            let g = cohomology_action(&sc, m, &RationalFunction::one()).unwrap();
            assert!(rf_equal(&euler_trace(&g).unwrap(), &lefschetz_oracle(sc.eigenvalues(), m)), "n={n} m={m}");
            let expected_dim = if m >= 0 {
                binom(m + n as i64, n as i64)
            } else if m < -(n as i64) {
                binom(-m - 1, n as i64)
            } else {
                0
            };
            assert_eq!(g.source().total_dim(), expected_dim);
        }
    }
}

#[test]
fn randomized_scenarios_agree() {
    let mut rng = random::rng(0xab_0003);
    for _ in 0..100 {
        let (sc, b) = random::proj_scenario(&mut rng, 3);
        let rep = verify_ab(&sc, &b).unwrap();
        assert_eq!(rep.verdict, Verdict::Equal);
        let oracle: RationalFunction =
            b.summands().iter().map(|(m, c)| c * &lefschetz_oracle(sc.eigenvalues(), *m)).sum();
        assert_eq!(rep.lhs, oracle);
        for x in fixed_points(&sc).unwrap() {
            let s = skyscraper_local_trace(&x.differential()).unwrap();
            assert!((&s * &lambda_x(&sc, &x).unwrap()).is_one());
        }
    }
}

#[test]
fn repeated_eigenvalue_is_reported() {
    let sc = ProjScenario::new(vec![rf("2"), rf("3"), rf("2")]).unwrap();
    let rep = verify_ab(&sc, &BundleSpec::line(1)).unwrap();
    assert_eq!(rep.verdict, Verdict::NotTransversal { i: 0, j: 2 });
    assert!(rep.rhs.is_none());
    assert_eq!(rep.lhs, rf("7"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn both_sides_are_additive(seed in any::<u64>(), m1 in -6i64..=6, m2 in -6i64..=6) {
        let mut rng = random::rng(seed);
        let sc = ProjScenario::new(random::distinct_eigenvalues(&mut rng, 2)).unwrap();
        let c = RationalFunction::from_rational(random::nonzero_rational(&mut rng, 5, 3));
        let sum = BundleSpec::new(vec![(m1, c.clone()), (m2, RationalFunction::one())]).unwrap();
        let parts = [BundleSpec::new(vec![(m1, c)]).unwrap(), BundleSpec::line(m2)];
        let lhs_parts: RationalFunction = parts.iter().map(|b| lefschetz_lhs(&sc, b).unwrap()).sum();
        let rhs_parts: RationalFunction = parts.iter().map(|b| ab_rhs(&sc, b).unwrap()).sum();
        prop_assert_eq!(lefschetz_lhs(&sc, &sum).unwrap(), lhs_parts);
        prop_assert_eq!(ab_rhs(&sc, &sum).unwrap(), rhs_parts);
    }

    #[test]
    fn scalar_lift_scales_both_sides(seed in any::<u64>(), m in -6i64..=6) {
        let mut rng = random::rng(seed);
        let sc = ProjScenario::new(random::distinct_eigenvalues(&mut rng, 3)).unwrap();
        let c = RationalFunction::from_rational(random::nonzero_rational(&mut rng, 5, 3));
        let scaled = BundleSpec::new(vec![(m, c.clone())]).unwrap();
        prop_assert_eq!(ab_rhs(&sc, &scaled).unwrap(), &c * &ab_rhs(&sc, &BundleSpec::line(m)).unwrap());
        prop_assert_eq!(lefschetz_lhs(&sc, &scaled).unwrap(), &c * &lefschetz_lhs(&sc, &BundleSpec::line(m)).unwrap());
    }

    #[test]
    fn intermediate_twists_vanish(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = random::rng(seed);
        let sc = ProjScenario::new(random::distinct_eigenvalues(&mut rng, n)).unwrap();
        for m in -(n as i64)..=-1 {
            prop_assert!(ab_rhs(&sc, &BundleSpec::line(m)).unwrap().is_zero());
        }
    }
}
