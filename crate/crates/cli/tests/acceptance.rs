//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use abtrace_cli::{run, Lemma313, Options, Report, Scenario, Selftest, Verdict as CliVerdict, WeylChar};
use abtrace_core::exact_algebra::{
    char_poly_via_exterior, det, det_one_plus_s, format_rf, parse_rf, rf_equal, Matrix, RationalFunction,
};
use abtrace_core::kernel2cat::{
    chern_character, chern_direct, compose_kernels, compose_lax_squares, integrate, lefschetz_discrete,
    pushforward_kernel, trace_of_kernel, trace_of_lax_square, triangle_identities_hold,
};
use abtrace_core::projective::{
    ab_rhs, fixed_points, lambda_x, skyscraper_local_trace, verify_ab, BundleSpec, ProjScenario, Verdict,
};
use abtrace_core::random;
use abtrace_core::weyl::{
    build_root_system, denominator_product, fixed_point_character_sum, freudenthal_multiplicities, weyl_character,
    weyl_denominator, weyl_dimension, RootType, WeightPolynomial,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rf(s: &str) -> RationalFunction {
    parse_rf(s).expect("literal")
}

fn q_pow(k: i64) -> RationalFunction {
    RationalFunction::var("q").pow(k).expect("q is nonzero")
}

fn p1_golden() -> Outcome {
    let p1 = ok(ProjScenario::new(vec![rf("q"), rf("1")]))?;
    for n in [0i64, 1, 2, 3, 5] {
        let r = ok(verify_ab(&p1, &BundleSpec::line(n)))?;
        let closed = rf(&format!("(q^{} - 1)/(q - 1)", n + 1));
        let series: RationalFunction = (0..=n).map(q_pow).sum();
        check!(r.verdict == Verdict::Equal, "O({n}): {:?}", r.verdict);
        check!(r.lhs == series, "O({n}): lhs {}", r.lhs);
        check!(rf_equal(&r.lhs, &closed), "O({n}): lhs is not the closed form");
        check!(rf_equal(r.rhs.as_ref().unwrap(), &closed), "O({n}): rhs is not the closed form");
    }
    let r = ok(verify_ab(&p1, &BundleSpec::line(-1)))?;
    check!(r.lhs.is_zero() && r.rhs.as_ref().is_some_and(|v| v.is_zero()), "O(-1) is not zero on both sides");
    for n in [-2i64, -3, -5] {
        let r = ok(verify_ab(&p1, &BundleSpec::line(n)))?;
        let expected: RationalFunction = (0..=-n - 2).map(|k| &RationalFunction::zero() - &q_pow(-(k + 1))).sum();
        check!(r.verdict == Verdict::Equal, "O({n}): {:?}", r.verdict);
        check!(rf_equal(&r.lhs, &expected), "O({n}): lhs {}", r.lhs);
    }
    Ok("twists 0,1,2,3,5,-1,-2,-3,-5".into())
}

fn structure_sheaf() -> Outcome {
    let mut rng = random::rng(0x0c0d_0002);
    let mut count = 0;
    for n in 1..=4 {
        let symbolic = ProjScenario::powers_of("q", n);
        check!(rf_equal(&ok(ab_rhs(&symbolic, &BundleSpec::line(0)))?, &RationalFunction::one()), "P^{n} symbolic");
        count += 1;
        for t in 0..20 {
            let sc = ok(ProjScenario::new(random::distinct_eigenvalues(&mut rng, n)))?;
            let v = ok(ab_rhs(&sc, &BundleSpec::line(0)))?;
            check!(rf_equal(&v, &RationalFunction::one()), "P^{n} tuple {t}: {v}");
            count += 1;
        }
    }
    Ok(format!("{count} eigenvalue tuples, n = 1..4"))
}

const SCENARIO_SEED: u64 = 0x0c0d_0003;

fn random_scenarios() -> Vec<(ProjScenario, BundleSpec)> {
    let mut rng = random::rng(SCENARIO_SEED);
    (0..100).map(|_| random::proj_scenario(&mut rng, 3)).collect()
}

fn randomized_ab() -> Outcome {
    for (i, (sc, b)) in random_scenarios().iter().enumerate() {
        let r = ok(verify_ab(sc, b))?;
        check!(r.verdict == Verdict::Equal, "scenario {i}: {:?}, lhs {}", r.verdict, r.lhs);
    }
    Ok(format!("100 scenarios, seed {SCENARIO_SEED:#x}"))
}

fn exterior_powers() -> Outcome {
    let mut rng = random::rng(0x0c0d_0004);
    for i in 0..50 {
        let n = 1 + i % 6;
        let a = random::rational_matrix(&mut rng, n, n);
        let ext = ok(char_poly_via_exterior(&a))?;
        let elim = ok(det_one_plus_s(&a))?;
        for p in 0..=n {
            check!(ext.coeff(p) == elim.coeff(p), "matrix {i}: coefficient of s^{p}");
        }
        let one_minus = ok(Matrix::identity(n).add(&a.scale(&RationalFunction::from_int(-1))))?;
        check!(ok(skyscraper_local_trace(&a))? == ok(det(&one_minus))?, "matrix {i}: skyscraper trace");
    }
    let mut points = 0;
    for (i, (sc, _)) in random_scenarios().iter().enumerate() {
        for x in ok(fixed_points(sc))? {
            let prod = &ok(skyscraper_local_trace(&x.differential()))? * &ok(lambda_x(sc, &x))?;
            check!(prod.is_one(), "scenario {i}, point {}: product {prod}", x.index);
            points += 1;
        }
    }
    Ok(format!("50 matrices, {points} fixed points"))
}

fn categorical() -> Outcome {
    let mut rng = random::rng(0x0c0d_0005);
    for i in 0..200 {
        let inst = random::chern_instance(&mut rng, 5, 3);
        let ch = ok(chern_character(&inst.dims, &inst.maps, &inst.map))?;
        check!(ch == ok(chern_direct(&inst.dims, &inst.maps, &inst.map))?, "chern instance {i}");
        let col = ok(Matrix::from_vec(ch.len(), 1, ch))?;
        let integrated = ok(integrate(&inst.map).and_then(|m| m.mul(&col)))?;
        let l = ok(lefschetz_discrete(&inst.dims, &inst.maps, &inst.map))?;
        check!(integrated.get(0, 0) == &l, "chern instance {i}: integral differs from Lefschetz number");

        let n = rng.random_range(1..=5);
        let f: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        let fixed = f.iter().enumerate().filter(|(s, t)| s == *t).count();
        let dim = ok(trace_of_kernel(&ok(pushforward_kernel(&f))?))?.total_dim();
        check!(dim == fixed, "pushforward of {f:?}: {dim} against {fixed}");
    }
    let mut duals = 0;
    for i in 0..100 {
        let (sq1, sq2) = random::composable_squares(&mut rng, 4, 2);
        let pasted = ok(trace_of_lax_square(&ok(compose_lax_squares(&sq1, &sq2))?))?;
        let composed = ok(ok(trace_of_lax_square(&sq2))?.mul(&ok(trace_of_lax_square(&sq1))?))?;
        check!(pasted == composed, "square pair {i}: functoriality");
        for phi in [sq1.phi(), sq2.phi()] {
            check!(ok(triangle_identities_hold(phi))?, "square pair {i}: triangle identities");
            duals += 1;
        }
    }
    for i in 0..100 {
        let (k, l) = random::composable_kernels(&mut rng, 5, 3);
        let lk = ok(trace_of_kernel(&ok(compose_kernels(&l, &k))?))?;
        let kl = ok(trace_of_kernel(&ok(compose_kernels(&k, &l))?))?;
        check!(lk.total_dim() == kl.total_dim(), "kernel pair {i}: cyclicity");
    }
    Ok(format!("200 bundles and maps, 100 square pairs, 100 kernel pairs, {duals} duals"))
}

/// Dimension polynomials written out per type (α1 long in B2, short in G2).
fn dimension_oracle(t: RootType, w: &[i64]) -> i64 {
    match t {
        RootType::A1 => w[0] + 1,
        RootType::A2 => (w[0] + 1) * (w[1] + 1) * (w[0] + w[1] + 2) / 2,
        RootType::A3 => {
            let (a, b, c) = (w[0], w[1], w[2]);
            (a + 1) * (b + 1) * (c + 1) * (a + b + 2) * (b + c + 2) * (a + b + c + 3) / 12
        }
        RootType::B2 => (w[0] + 1) * (w[1] + 1) * (w[0] + w[1] + 2) * (2 * w[0] + w[1] + 3) / 6,
        RootType::G2 => {
            let (a, b) = (w[0], w[1]);
            (a + 1) * (b + 1) * (a + b + 2) * (a + 2 * b + 3) * (a + 3 * b + 4) * (2 * a + 3 * b + 5) / 120
        }
    }
}

fn grid(rank: usize, max: i64) -> Vec<Vec<i64>> {
    (0..rank).fold(vec![vec![]], |acc, _| {
        acc.into_iter().flat_map(|w| (0..=max).map(move |k| [w.clone(), vec![k]].concat())).collect()
    })
}

fn weyl_characters() -> Outcome {
    let ranges = [
        (RootType::A1, grid(1, 10)),
        (RootType::A2, grid(2, 3)),
        (RootType::B2, grid(2, 3)),
        (RootType::G2, grid(2, 2)),
        (RootType::A3, grid(3, 2)),
    ];
    let mut count = 0;
    for (t, weights) in ranges {
        let rs = ok(build_root_system(t))?;
        check!(weyl_denominator(&rs) == denominator_product(&rs), "{t}: denominator identity");
        for lam in weights {
            let ch = ok(weyl_character(&rs, &lam))?;
            let fr = WeightPolynomial::from_terms(ok(freudenthal_multiplicities(&rs, &lam))?);
            check!(ch == fr, "{t} {lam:?}: Freudenthal");
            check!(ok(fixed_point_character_sum(&rs, &lam))? == ch, "{t} {lam:?}: fixed-point sum");
            let dim = dimension_oracle(t, &lam);
            check!(ch.coefficient_sum() == dim, "{t} {lam:?}: {} weights against {dim}", ch.coefficient_sum());
            check!(ok(weyl_dimension(&rs, &lam))? as i64 == dim, "{t} {lam:?}: dimension formula");
            count += 1;
        }
    }
    let a2 = ok(build_root_system(RootType::A2))?;
    check!(ok(weyl_character(&a2, &[1, 1]))?.coefficient_sum() == 8, "A2 adjoint");
    let g2 = ok(build_root_system(RootType::G2))?;
    let theta = g2.root_to_weight(&[3, 2]);
    check!(ok(weyl_character(&g2, &theta))?.coefficient_sum() == 14, "G2 adjoint");
    check!(dimension_oracle(RootType::G2, &theta) == 14, "G2 adjoint oracle");
    Ok(format!("{count} highest weights over A1, A2, A3, B2, G2"))
}

fn report_scenarios() -> Vec<Scenario> {
    let mut out: Vec<Scenario> = [0, 3, -1, -4].into_iter().map(Scenario::p1).collect();
    out.push(Scenario::from_json(r#"{"kind":"projective_ab","dim":2,"eigenvalues":["2","-1/3","5"],"bundle":[{"twist":3,"scalar":"7/2"},{"twist":-4}]}"#).unwrap());
    out.push(
        Scenario::from_json(r#"{"kind":"projective_ab","dim":1,"eigenvalues":["q","q"],"bundle":[{"twist":2}]}"#)
            .unwrap(),
    );
    out.push(Scenario::WeylChar(WeylChar { root_type: "A2".into(), weight: vec![1, 1] }));
    out.push(Scenario::WeylChar(WeylChar { root_type: "A1".into(), weight: vec![4] }));
    out.push(Scenario::Kernel2catSelftest(Selftest { seed: 0, trials: 4 }));
    out.push(Scenario::Lemma313(Lemma313 { dim: 4, trials: 4, seed: 7 }));
    out
}

fn zero_timing(json: &str) -> String {
    let mut r: Report = serde_json::from_str(json).expect("report JSON");
    r.elapsed_ms = 0.0;
    r.to_json()
}

fn determinism_and_round_trip() -> Outcome {
    let scenarios = report_scenarios();
    for s in &scenarios {
        let a = ok(run(s, Options::default()))?.without_timing().to_json();
        let b = ok(run(s, Options::default()))?.without_timing().to_json();
        check!(a == b, "{}: reports differ between runs", s.kind());
    }

    let bin = env!("CARGO_BIN_EXE_abtrace");
    let dir = std::env::temp_dir().join(format!("abtrace-acceptance-{}", std::process::id()));
    ok(std::fs::create_dir_all(&dir))?;
    let mut outputs = Vec::new();
    for round in 0..2 {
        let path = dir.join(format!("selftest-{round}.json"));
        let status =
            ok(Command::new(bin).args(["selftest", "--seed", "3", "--trials", "3", "--json"]).arg(&path).output())?
                .status;
        check!(status.success(), "selftest exited with {status}");
        outputs.push(zero_timing(&ok(std::fs::read_to_string(&path))?));
    }
    let _ = std::fs::remove_dir_all(&dir);
    check!(outputs[0] == outputs[1], "binary reports differ between runs");

    let mut scalars = 0;
    for s in &scenarios {
        let r = ok(run(s, Options::default()))?;
        if let Scenario::ProjectiveAb(p) = s {
            let sc = ok(ProjScenario::new(p.eigenvalues.iter().map(|e| rf(e)).collect()))?;
            let b = ok(BundleSpec::new(p.bundle.iter().map(|m| (m.twist, rf(&m.scalar))).collect()))?;
            let direct = ok(verify_ab(&sc, &b))?;
            check!(rf_equal(&ok(parse_rf(r.lhs.as_deref().unwrap()))?, &direct.lhs), "{}: lhs round trip", s.kind());
            if let (Some(text), Some(v)) = (r.rhs.as_deref(), direct.rhs.as_ref()) {
                check!(rf_equal(&ok(parse_rf(text))?, v), "rhs round trip");
            }
            check!(
                r.verdict != CliVerdict::Equal
                    || rf_equal(&rf(r.lhs.as_deref().unwrap()), &rf(r.rhs.as_deref().unwrap())),
                "equal verdict with distinct sides"
            );
            scalars += 2;
        }
    }
    for (sc, b) in random_scenarios() {
        let r = ok(verify_ab(&sc, &b))?;
        for v in [Some(&r.lhs), r.rhs.as_ref()].into_iter().flatten() {
            check!(rf_equal(&ok(parse_rf(&format_rf(v)))?, v), "round trip of {}", format_rf(v));
            scalars += 1;
        }
    }
    Ok(format!("{} scenario kinds repeated, {scalars} scalars re-parsed", scenarios.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("P1 golden twists", p1_golden),
        ("structure sheaf local terms sum to 1", structure_sheaf),
        ("randomized fixed-point formula", randomized_ab),
        ("exterior powers and skyscraper traces", exterior_powers),
        ("kernel model identities", categorical),
        ("Weyl character formula", weyl_characters),
        ("determinism and scalar round trip", determinism_and_round_trip),
    ];
    let mut failures = 0;
    let total = Instant::now();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(note) => println!("PASS  criterion {}: {name} ({note}; {secs:.2}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL  criterion {}: {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2}s",
        criteria.len() - failures,
        criteria.len(),
        total.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
