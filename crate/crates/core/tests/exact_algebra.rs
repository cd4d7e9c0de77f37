use abtrace_core::exact_algebra::{
    char_poly_via_exterior, det, det_one_plus_s, exterior_power_trace, format_rf, parse_rf, probably_equal, rf_equal,
    Matrix, RationalFunction,
};
use abtrace_core::projective::skyscraper_local_trace;
use abtrace_core::random;
use proptest::prelude::*;

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting at `pos` moves the new largest element past len-pos others
            let moved = p.len() - pos;
            out.push((q, odd ^ (moved % 2 == 1)));
        }
    }
    out
}

fn leibniz(a: &Matrix) -> RationalFunction {
    let n = a.rows();
    let mut total = RationalFunction::zero();
    for (p, odd) in permutations(n) {
        let mut term = RationalFunction::one();
        for (r, &c) in p.iter().enumerate() {
            term = &term * a.get(r, c);
        }
        total = if odd { &total - &term } else { &total + &term };
    }
    total
}

fn rf(s: &str) -> RationalFunction {
    parse_rf(s).unwrap()
}

#[test]
fn determinant_matches_leibniz_on_rational_matrices() {
    let mut rng = random::rng(101);
    for n in 0..=5 {
        for _ in 0..6 {
            let a = random::rational_matrix(&mut rng, n, n);
            assert_eq!(det(&a).unwrap(), leibniz(&a), "n = {n}");
        }
    }
}

#[test]
fn determinant_matches_leibniz_on_symbolic_matrices() {
    let a = Matrix::from_rows(vec![
        vec![rf("q"), rf("1/(1-q)"), rf("2")],
        vec![rf("t^2"), rf("q*t"), rf("q^-1")],
        vec![rf("1"), rf("0"), rf("t-q")],
    ])
    .unwrap();
    assert!(rf_equal(&det(&a).unwrap(), &leibniz(&a)));
}

#[test]
fn exterior_traces_against_char_poly_and_skyscraper() {
    let mut rng = random::rng(313);
    for i in 0..30 {
        let n = 1 + i % 6;
        let a = random::rational_matrix(&mut rng, n, n);
        let cp = char_poly_via_exterior(&a).unwrap();
        assert_eq!(cp, det_one_plus_s(&a).unwrap());
        let one_minus = &Matrix::identity(n).add(&a.scale(&RationalFunction::from_int(-1))).unwrap();
        assert_eq!(skyscraper_local_trace(&a).unwrap(), det(one_minus).unwrap());
        assert_eq!(exterior_power_trace(&a, 1).unwrap(), a.trace().unwrap());
        assert_eq!(exterior_power_trace(&a, n).unwrap(), det(&a).unwrap());
    }
}

#[test]
fn exterior_traces_symbolic() {
    let a = Matrix::from_rows(vec![vec![rf("q"), rf("1")], vec![rf("0"), rf("q^2")]]).unwrap();
    let cp = char_poly_via_exterior(&a).unwrap();
    assert_eq!(cp.coeff(1), rf("q+q^2"));
    assert_eq!(cp.coeff(2), rf("q^3"));
    assert_eq!(cp, det_one_plus_s(&a).unwrap());
}

#[test]
fn probabilistic_equality_is_consistent() {
    let mut rng = random::rng(5);
    assert!(probably_equal(&rf("(q^4-1)/(q-1)"), &rf("1+q+q^2+q^3"), 10, &mut rng));
    assert!(!probably_equal(&rf("q"), &rf("q+1/1000"), 10, &mut rng));
}

fn small_poly() -> impl Strategy<Value = String> {
    (prop::collection::vec(-4i64..=4, 1..4), prop::sample::select(vec!["q", "t"]))
        .prop_map(|(cs, v)| cs.iter().enumerate().map(|(k, c)| format!("({c})*{v}^{k}")).collect::<Vec<_>>().join("+"))
}

fn small_rf() -> impl Strategy<Value = RationalFunction> {
    (small_poly(), small_poly()).prop_filter_map("zero denominator", |(n, d)| {
        let d = parse_rf(&d).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(&parse_rf(&n).ok()? / &d)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in small_rf(), b in small_rf(), c in small_rf()) {
        prop_assert!(rf_equal(&(&a + &b), &(&b + &a)));
        prop_assert!(rf_equal(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        prop_assert!(rf_equal(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!(rf_equal(&(&a / &a), &RationalFunction::one()));
        }
    }

    #[test]
    fn printed_form_reparses(a in small_rf()) {
        prop_assert!(rf_equal(&parse_rf(&format_rf(&a)).unwrap(), &a));
    }

    #[test]
    fn determinant_is_multiplicative(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = random::rng(seed);
        let a = random::rational_matrix(&mut rng, n, n);
        let b = random::rational_matrix(&mut rng, n, n);
        prop_assert_eq!(det(&a.mul(&b).unwrap()).unwrap(), &det(&a).unwrap() * &det(&b).unwrap());
    }
}
