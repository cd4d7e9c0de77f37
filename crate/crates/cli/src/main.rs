use std::path::PathBuf;
use std::process::ExitCode;

use abtrace_cli::{run, CliError, Lemma313, Options, Report, Scenario, Selftest, Verdict, WeylChar};
use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "abtrace", version, about = "Exact checks of fixed-point trace formulas")]
struct Cli {
    /// Also write the machine-readable report to this path (`-` for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Compare the two sides of projective scenarios at random rational
    /// points. Fast but not authoritative: `equal` may be wrong.
    #[arg(long, global = true)]
    probabilistic_equality: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Verify { file: PathBuf },
    /// `O(n)` on the projective line with eigenvalues `(q, 1)`.
    P1 {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Weyl character of a dominant weight, against the fixed-point sum.
    Weyl {
        #[arg(long = "type")]
        root_type: String,
        /// Fundamental-weight coordinates, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weight: Vec<i64>,
    },
    /// Seeded random-instance suites for the kernel model.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Exterior-power traces against elimination on random matrices.
    Lemma313 {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn scenario_of(cmd: Command) -> Result<Scenario, CliError> {
    Ok(match cmd {
        Command::Verify { file } => {
            let text =
                std::fs::read_to_string(&file).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
            Scenario::from_json(&text)?
        }
        Command::P1 { n } => Scenario::p1(n),
        Command::Weyl { root_type, weight } => Scenario::WeylChar(WeylChar { root_type, weight }),
        Command::Selftest { seed, trials } => Scenario::Kernel2catSelftest(Selftest { seed, trials }),
        Command::Lemma313 { dim, trials, seed } => Scenario::Lemma313(Lemma313 { dim, trials, seed }),
    })
}

fn emit(report: &Report, json_path: Option<&PathBuf>) -> Result<(), CliError> {
    print!("{}", report.render_text());
    match json_path {
        Some(p) if p.as_os_str() == "-" => println!("{}", report.to_json()),
        Some(p) => {
            std::fs::write(p, report.to_json() + "\n").map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?
        }
        None => {}
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options { probabilistic_equality: cli.probabilistic_equality };
    let scenario = match scenario_of(cli.command) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let report = match run(&scenario, opts) {
        Ok(r) => r,
        Err(e @ CliError::Input(_)) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code() as u8);
        }
        Err(e @ CliError::Internal(_)) => {
            eprintln!("{e}");
            Report {
                kind: scenario.kind().into(),
                inputs: serde_json::to_value(&scenario).unwrap_or_default(),
                lhs: None,
                rhs: None,
                verdict: Verdict::Error,
                details: json!({"message": e.to_string()}),
                elapsed_ms: 0.0,
                seed: None,
            }
        }
    };
    if let Err(e) = emit(&report, cli.json.as_ref()) {
        eprintln!("{e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    if let Some(c) = report.details.get("counterexample").filter(|c| !c.is_null()) {
        eprintln!("failed: {} (reproduce with --seed {} --trials 1)", c["property"], c["seed"]);
    }
    ExitCode::from(report.verdict.exit_code() as u8)
}
