//! Seeded property suites. Trial `i` of a run with seed `s` draws its
//! instance from `random::rng(s + i)`, so a failure reproduces with
//! `--seed s+i --trials 1`.

use std::collections::BTreeMap;

use abtrace_core::exact_algebra::{char_poly_via_exterior, det, det_one_plus_s, format_rf, Matrix, RationalFunction};
use abtrace_core::kernel2cat::{
    chern_character, chern_direct, compose_kernels, compose_lax_squares, integrate, lefschetz_discrete,
    pushforward_kernel, trace_of_kernel, trace_of_lax_square, triangle_identities_hold, FinObj, Kernel, LaxSquare,
    TwoCell,
};
use abtrace_core::projective::skyscraper_local_trace;
use abtrace_core::random;
use rand::Rng;
use serde_json::{json, Value};

use crate::report::Verdict;

type Check = fn(u64) -> Result<(), String>;
type DynCheck<'a> = (&'a str, &'a dyn Fn(u64) -> Result<(), String>);

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// A lax square over a point whose 2-cell is an arbitrary matrix `t` on a
/// `d`-dimensional fiber; its trace is `tr t`.
fn vector_space_trace(seed: u64) -> Result<(), String> {
    let mut rng = random::rng(seed);
    let d = rng.random_range(1..=3);
    let t = random::rational_matrix(&mut rng, d, d);
    let phi = Kernel::from_dims(1, 1, vec![d]).map_err(fail)?;
    let id = Kernel::identity(FinObj::UNIT);
    let src = compose_kernels(&phi, &id).map_err(fail)?;
    let tgt = compose_kernels(&id, &phi).map_err(fail)?;
    let cell = TwoCell::new(src, tgt, vec![t.clone()]).map_err(fail)?;
    let sq = LaxSquare::new(phi, id.clone(), id, cell).map_err(fail)?;
    let got = trace_of_lax_square(&sq).map_err(fail)?;
    let want = t.trace().map_err(fail)?;
    ensure(got.get(0, 0) == &want, || format!("trace {} against {}", got.get(0, 0), want))
}

fn functoriality(seed: u64) -> Result<(), String> {
    let (sq1, sq2) = random::composable_squares(&mut random::rng(seed), 4, 2);
    let pasted = trace_of_lax_square(&compose_lax_squares(&sq1, &sq2).map_err(fail)?).map_err(fail)?;
    let composed =
        trace_of_lax_square(&sq2).and_then(|b| trace_of_lax_square(&sq1).and_then(|a| b.mul(&a))).map_err(fail)?;
    ensure(pasted == composed, || "trace of pasted square differs from composite of traces".into())
}

fn cyclicity(seed: u64) -> Result<(), String> {
    let mut rng = random::rng(seed);
    let (k, l) = random::composable_kernels(&mut rng, 5, 3);
    let lk = trace_of_kernel(&compose_kernels(&l, &k).map_err(fail)?).map_err(fail)?;
    let kl = trace_of_kernel(&compose_kernels(&k, &l).map_err(fail)?).map_err(fail)?;
    ensure(lk == kl, || format!("trace dimensions {} and {}", lk.total_dim(), kl.total_dim()))?;
    let alpha = random::two_cell(&mut rng, &k, &k);
    let beta = random::two_cell(&mut rng, &l, &l);
    let a = TwoCell::hcompose(&beta, &alpha).and_then(|c| c.diagonal_trace()).map_err(fail)?;
    let b = TwoCell::hcompose(&alpha, &beta).and_then(|c| c.diagonal_trace()).map_err(fail)?;
    ensure(a == b, || format!("decorated traces {a} and {b}"))
}

fn chern(seed: u64) -> Result<(), String> {
    let inst = random::chern_instance(&mut random::rng(seed), 5, 3);
    let ch = chern_character(&inst.dims, &inst.maps, &inst.map).map_err(fail)?;
    let direct = chern_direct(&inst.dims, &inst.maps, &inst.map).map_err(fail)?;
    ensure(ch == direct, || "chern character differs from fiberwise traces".into())?;
    let col = Matrix::from_vec(ch.len(), 1, ch).map_err(fail)?;
    let integrated = integrate(&inst.map).and_then(|i| i.mul(&col)).map_err(fail)?;
    let l = lefschetz_discrete(&inst.dims, &inst.maps, &inst.map).map_err(fail)?;
    ensure(integrated.get(0, 0) == &l, || format!("integral {} against {l}", integrated.get(0, 0)))
}

fn pushforward(seed: u64) -> Result<(), String> {
    let mut rng = random::rng(seed);
    let n = rng.random_range(1..=5);
    let f: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
    let fixed = f.iter().enumerate().filter(|(s, t)| s == *t).count();
    let dim = trace_of_kernel(&pushforward_kernel(&f).map_err(fail)?).map_err(fail)?.total_dim();
    ensure(dim == fixed, || format!("map {f:?}: trace dimension {dim}, {fixed} fixed points"))
}

fn triangles(seed: u64) -> Result<(), String> {
    let phi = random::kernel(&mut random::rng(seed), 3, 3, 2);
    ensure(triangle_identities_hold(&phi).map_err(fail)?, || format!("kernel {:?}", phi.dims()))
}

fn exterior_char_poly(seed: u64, dim: usize) -> Result<(), String> {
    let a = random::rational_matrix(&mut random::rng(seed), dim, dim);
    let ext = char_poly_via_exterior(&a).map_err(fail)?;
    let elim = det_one_plus_s(&a).map_err(fail)?;
    ensure(ext == elim, || format!("exterior {ext} against elimination {elim}"))
}

fn skyscraper(seed: u64, dim: usize) -> Result<(), String> {
    let a = random::rational_matrix(&mut random::rng(seed), dim, dim);
    let one_minus = Matrix::identity(dim).add(&a.scale(&RationalFunction::from_int(-1))).map_err(fail)?;
    let want = det(&one_minus).map_err(fail)?;
    let got = skyscraper_local_trace(&a).map_err(fail)?;
    ensure(got == want, || format!("{} against det(1 - A) = {}", format_rf(&got), format_rf(&want)))
}

pub(crate) struct SuiteOutcome {
    pub verdict: Verdict,
    pub details: Value,
}

fn run_suite(seed: u64, trials: usize, checks: &[DynCheck<'_>]) -> SuiteOutcome {
    let mut properties = BTreeMap::new();
    let mut first_failure: Option<Value> = None;
    for (name, check) in checks {
        let mut passed = 0;
        for i in 0..trials {
            let trial_seed = seed.wrapping_add(i as u64);
            match check(trial_seed) {
                Ok(()) => passed += 1,
                Err(message) => {
                    first_failure.get_or_insert_with(
                        || json!({"property": name, "trial": i, "seed": trial_seed, "message": message}),
                    );
                }
            }
        }
        properties.insert(name.to_string(), json!({"passed": passed, "trials": trials}));
    }
    let verdict = if first_failure.is_none() { Verdict::Equal } else { Verdict::Unequal };
    SuiteOutcome { verdict, details: json!({"properties": properties, "counterexample": first_failure}) }
}

pub(crate) fn kernel2cat_selftest(seed: u64, trials: usize) -> SuiteOutcome {
    let checks: [(&str, Check); 6] = [
        ("vector_space_trace", vector_space_trace),
        ("functoriality", functoriality),
        ("cyclicity", cyclicity),
        ("chern_character", chern),
        ("pushforward_fixed_points", pushforward),
        ("triangle_identities", triangles),
    ];
    let dyn_checks: Vec<DynCheck<'_>> =
        checks.iter().map(|(n, c)| (*n, c as &dyn Fn(u64) -> Result<(), String>)).collect();
    run_suite(seed, trials, &dyn_checks)
}

pub(crate) fn exterior_suite(dim: usize, seed: u64, trials: usize) -> SuiteOutcome {
    let cp = move |s| exterior_char_poly(s, dim);
    let sk = move |s| skyscraper(s, dim);
    run_suite(seed, trials, &[("char_poly", &cp), ("skyscraper", &sk)])
}
