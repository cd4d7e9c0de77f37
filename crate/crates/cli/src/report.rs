use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    Unequal,
    NotTransversal,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Equal => 0,
            Verdict::Unequal => 1,
            Verdict::NotTransversal => 2,
            Verdict::Error => 3,
        }
    }
}

/// Machine-readable outcome of one scenario. Scalars are serialized in the
/// infix grammar accepted by `parse_rf`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub inputs: Value,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub verdict: Verdict,
    pub details: Value,
    pub elapsed_ms: f64,
    pub seed: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are plain data")
    }

    /// The same report with the timing field zeroed, for comparisons.
    pub fn without_timing(&self) -> Report {
        Report { elapsed_ms: 0.0, ..self.clone() }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let verdict = serde_json::to_value(self.verdict).expect("plain enum");
        let _ = writeln!(s, "{}: {}", self.kind, verdict.as_str().unwrap_or_default());
        if let Some(l) = &self.lhs {
            let _ = writeln!(s, "  lhs = {l}");
        }
        if let Some(r) = &self.rhs {
            let _ = writeln!(s, "  rhs = {r}");
        }
        if let Value::Object(m) = &self.details {
            for (k, v) in m {
                let _ = writeln!(s, "  {k}: {v}");
            }
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "  seed: {seed}");
        }
        let _ = writeln!(s, "  elapsed: {:.3} ms", self.elapsed_ms);
        s
    }
}
