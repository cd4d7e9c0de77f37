use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// A scenario file. The `kind` field selects the payload; unknown fields
/// are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scenario {
    ProjectiveAb(ProjectiveAb),
    WeylChar(WeylChar),
    Kernel2catSelftest(Selftest),
    Lemma313(Lemma313),
}

/// `ℙ^dim` with diagonal eigenvalues and a sum of twisted line bundles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectiveAb {
    pub dim: usize,
    pub eigenvalues: Vec<String>,
    pub bundle: Vec<Summand>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summand {
    pub twist: i64,
    #[serde(default = "one")]
    pub scalar: String,
}

fn payload<T: DeserializeOwned>(value: Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        CliError::Input(format!("scenario field `{path}`: {}", e.inner()))
    })
}

fn one() -> String {
    "1".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylChar {
    #[serde(rename = "type")]
    pub root_type: String,
    pub weight: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Selftest {
    pub seed: u64,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma313 {
    pub dim: usize,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::ProjectiveAb(_) => "projective_ab",
            Scenario::WeylChar(_) => "weyl_char",
            Scenario::Kernel2catSelftest(_) => "kernel2cat_selftest",
            Scenario::Lemma313(_) => "lemma313",
        }
    }

    /// Parses JSON text; schema errors carry the path of the offending field.
    pub fn from_json(text: &str) -> Result<Scenario, CliError> {
        let mut value: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("scenario: {e}")))?;
        let kind = match value.as_object_mut().map(|m| m.remove("kind")) {
            Some(Some(Value::String(k))) => k,
            Some(Some(_)) => return Err(CliError::Input("scenario field `kind`: expected a string".into())),
            Some(None) => return Err(CliError::Input("scenario field `kind` is missing".into())),
            None => return Err(CliError::Input("scenario: expected an object".into())),
        };
        Ok(match kind.as_str() {
            "projective_ab" => Scenario::ProjectiveAb(payload(value)?),
            "weyl_char" => Scenario::WeylChar(payload(value)?),
            "kernel2cat_selftest" => Scenario::Kernel2catSelftest(payload(value)?),
            "lemma313" => Scenario::Lemma313(payload(value)?),
            other => {
                return Err(CliError::Input(format!(
                    "scenario field `kind`: unknown kind `{other}`, expected one of \
                     projective_ab, weyl_char, kernel2cat_selftest, lemma313"
                )))
            }
        })
    }

    /// `O(n)` on `ℙ¹` with eigenvalues `(q, 1)`.
    pub fn p1(n: i64) -> Scenario {
        Scenario::ProjectiveAb(ProjectiveAb {
            dim: 1,
            eigenvalues: vec!["q".into(), "1".into()],
            bundle: vec![Summand { twist: n, scalar: one() }],
        })
    }
}
