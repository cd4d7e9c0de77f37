use std::time::Instant;

use abtrace_core::exact_algebra::{format_rf, parse_rf, probably_equal, rf_equal, RationalFunction};
use abtrace_core::projective::{ab_rhs, lefschetz_lhs, verify_ab, BundleSpec, ProjScenario, Verdict as AbVerdict};
use abtrace_core::random;
use abtrace_core::weyl::{
    a1_to_q, build_root_system, fixed_point_character_sum, freudenthal_multiplicities, weyl_character, weyl_dimension,
    weyl_group, RootType, WeightPolynomial,
};
use abtrace_core::Error;
use serde_json::{json, Value};

use crate::report::{Report, Verdict};
use crate::scenario::{Lemma313, ProjectiveAb, Scenario, Selftest, WeylChar};
use crate::suites;
use crate::CliError;

/// Evaluation points used by the probabilistic comparison.
pub const PROBABILISTIC_ROUNDS: usize = 20;

/// Largest matrix size accepted by `lemma313`; the exterior route visits
/// all `2^dim` principal minors.
pub const MAX_LEMMA_DIM: usize = 10;

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    /// Compare projective sides at random points instead of exactly.
    pub probabilistic_equality: bool,
}

struct Outcome {
    lhs: Option<String>,
    rhs: Option<String>,
    verdict: Verdict,
    details: Value,
    seed: Option<u64>,
}

pub fn run(scenario: &Scenario, opts: Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let out = match scenario {
        Scenario::ProjectiveAb(p) => projective(p, opts)?,
        Scenario::WeylChar(w) => weyl(w)?,
        Scenario::Kernel2catSelftest(s) => selftest(s)?,
        Scenario::Lemma313(l) => lemma313(l)?,
    };
    Ok(Report {
        kind: scenario.kind().into(),
        inputs: serde_json::to_value(scenario).expect("scenarios are plain data"),
        lhs: out.lhs,
        rhs: out.rhs,
        verdict: out.verdict,
        details: out.details,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        seed: out.seed,
    })
}

fn scalar(field: &str, src: &str) -> Result<RationalFunction, CliError> {
    parse_rf(src).map_err(|e| CliError::Input(format!("{field}: {e}")))
}

fn projective(p: &ProjectiveAb, opts: Options) -> Result<Outcome, CliError> {
    if p.eigenvalues.len() != p.dim + 1 {
        return Err(CliError::Input(format!(
            "dim {} needs {} eigenvalues, got {}",
            p.dim,
            p.dim + 1,
            p.eigenvalues.len()
        )));
    }
    let eig = p
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, e)| scalar(&format!("eigenvalues[{i}]"), e))
        .collect::<Result<Vec<_>, _>>()?;
    let summands = p
        .bundle
        .iter()
        .enumerate()
        .map(|(j, s)| Ok((s.twist, scalar(&format!("bundle[{j}].scalar"), &s.scalar)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let sc = ProjScenario::new(eig).map_err(CliError::input)?;
    let bundle = BundleSpec::new(summands).map_err(CliError::input)?;

    let (lhs, rhs, verdict) = if opts.probabilistic_equality {
        let lhs = lefschetz_lhs(&sc, &bundle)?;
        match ab_rhs(&sc, &bundle) {
            Ok(rhs) => {
                let same = probably_equal(&lhs, &rhs, PROBABILISTIC_ROUNDS, &mut random::rng(0));
                (lhs, Some(rhs), if same { AbVerdict::Equal } else { AbVerdict::Unequal })
            }
            Err(Error::NotTransversal { i, j }) => (lhs, None, AbVerdict::NotTransversal { i, j }),
            Err(e) => return Err(e.into()),
        }
    } else {
        let r = verify_ab(&sc, &bundle)?;
        (r.lhs, r.rhs, r.verdict)
    };

    let mut details = json!({
        "equality": if opts.probabilistic_equality { "probabilistic" } else { "exact" },
        "fixed_points": sc.dim() + 1,
    });
    let verdict = match verdict {
        AbVerdict::Equal => Verdict::Equal,
        AbVerdict::Unequal => Verdict::Unequal,
        AbVerdict::NotTransversal { i, j } => {
            details["coinciding_eigenvalues"] = json!([i, j]);
            Verdict::NotTransversal
        }
    };
    Ok(Outcome { lhs: Some(format_rf(&lhs)), rhs: rhs.as_ref().map(format_rf), verdict, details, seed: None })
}

fn weyl(w: &WeylChar) -> Result<Outcome, CliError> {
    let label: RootType = w.root_type.parse().map_err(CliError::input)?;
    let rs = build_root_system(label)?;
    if w.weight.len() != rs.rank() {
        return Err(CliError::Input(format!("{label} has rank {}, weight has {} entries", rs.rank(), w.weight.len())));
    }
    if !rs.is_dominant(&w.weight) {
        return Err(CliError::Input(format!("weight {:?} is not dominant", w.weight)));
    }
    let fixed = fixed_point_character_sum(&rs, &w.weight)?;
    let ch = weyl_character(&rs, &w.weight)?;
    let freudenthal = WeightPolynomial::from_terms(freudenthal_multiplicities(&rs, &w.weight)?);
    if freudenthal != ch {
        return Err(CliError::Internal(format!(
            "Freudenthal multiplicities disagree with the character of {:?}",
            w.weight
        )));
    }
    let dimension = weyl_dimension(&rs, &w.weight)?;
    if ch.coefficient_sum() != dimension as i64 {
        return Err(CliError::Internal(format!(
            "character has {} weights with multiplicity, dimension formula gives {dimension}",
            ch.coefficient_sum()
        )));
    }
    let (lhs, rhs) = (fixed.to_rational_function(rs.rank()), ch.to_rational_function(rs.rank()));
    let verdict = if fixed == ch && rf_equal(&lhs, &rhs) { Verdict::Equal } else { Verdict::Unequal };
    let mut details = json!({
        "dimension": dimension,
        "weyl_group_order": weyl_group(&rs).len(),
        "distinct_weights": ch.len(),
    });
    if label == RootType::A1 {
        let (q, kmin) = a1_to_q(&ch, "q")?;
        details["q_specialization"] = json!({"value": format_rf(&q), "lowest_weight": kmin});
    }
    Ok(Outcome { lhs: Some(format_rf(&lhs)), rhs: Some(format_rf(&rhs)), verdict, details, seed: None })
}

fn selftest(s: &Selftest) -> Result<Outcome, CliError> {
    if s.trials == 0 {
        return Err(CliError::Input("trials must be at least 1".into()));
    }
    let o = suites::kernel2cat_selftest(s.seed, s.trials);
    Ok(Outcome { lhs: None, rhs: None, verdict: o.verdict, details: o.details, seed: Some(s.seed) })
}

fn lemma313(l: &Lemma313) -> Result<Outcome, CliError> {
    if l.trials == 0 {
        return Err(CliError::Input("trials must be at least 1".into()));
    }
    if l.dim == 0 || l.dim > MAX_LEMMA_DIM {
        return Err(CliError::Input(format!("dim must lie in 1..={MAX_LEMMA_DIM}")));
    }
    let o = suites::exterior_suite(l.dim, l.seed, l.trials);
    Ok(Outcome { lhs: None, rhs: None, verdict: o.verdict, details: o.details, seed: Some(l.seed) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_json(text: &str) -> Report {
        run(&Scenario::from_json(text).unwrap(), Options::default()).unwrap()
    }

    #[test]
    fn p1_twist_three() {
        let r = run(&Scenario::p1(3), Options::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Equal);
        assert!(rf_equal(&parse_rf(r.lhs.as_deref().unwrap()).unwrap(), &parse_rf("1+q+q^2+q^3").unwrap()));
    }

    #[test]
    fn a2_adjoint() {
        let r = run_json(r#"{"kind":"weyl_char","type":"A2","weight":[1,1]}"#);
        assert_eq!(r.verdict, Verdict::Equal);
        assert_eq!(r.details["dimension"], 8);
    }

    #[test]
    fn repeated_eigenvalues() {
        let r = run_json(r#"{"kind":"projective_ab","dim":1,"eigenvalues":["q","q"],"bundle":[{"twist":1}]}"#);
        assert_eq!(r.verdict, Verdict::NotTransversal);
        assert!(r.rhs.is_none());
    }

    #[test]
    fn probabilistic_mode_is_labelled() {
        let r = run(&Scenario::p1(2), Options { probabilistic_equality: true }).unwrap();
        assert_eq!(r.verdict, Verdict::Equal);
        assert_eq!(r.details["equality"], "probabilistic");
    }

    #[test]
    fn small_selftest_passes() {
        let r = run_json(r#"{"kind":"kernel2cat_selftest","seed":0,"trials":3}"#);
        assert_eq!(r.verdict, Verdict::Equal, "{}", r.to_json());
        assert_eq!(r.details["properties"]["functoriality"]["passed"], 3);
        let l = run_json(r#"{"kind":"lemma313","dim":4,"trials":3,"seed":9}"#);
        assert_eq!(l.verdict, Verdict::Equal);
    }

    #[test]
    fn input_errors() {
        let bad = [
            r#"{"kind":"kernel2cat_selftest","seed":0,"trials":0}"#,
            r#"{"kind":"lemma313","dim":0,"trials":1}"#,
            r#"{"kind":"weyl_char","type":"E8","weight":[1]}"#,
            r#"{"kind":"weyl_char","type":"A2","weight":[1]}"#,
            r#"{"kind":"weyl_char","type":"A2","weight":[1,-1]}"#,
            r#"{"kind":"projective_ab","dim":2,"eigenvalues":["q","1"],"bundle":[{"twist":1}]}"#,
            r#"{"kind":"projective_ab","dim":1,"eigenvalues":["q","1+"],"bundle":[{"twist":1}]}"#,
            r#"{"kind":"projective_ab","dim":1,"eigenvalues":["q","0"],"bundle":[{"twist":1}]}"#,
            r#"{"kind":"projective_ab","dim":1,"eigenvalues":["q","1"],"bundle":[]}"#,
        ];
        for text in bad {
            let err = run(&Scenario::from_json(text).unwrap(), Options::default()).unwrap_err();
            assert_eq!(err.exit_code(), 4, "{text}: {err}");
        }
    }
}
