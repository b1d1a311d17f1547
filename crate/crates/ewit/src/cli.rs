//! `ewit` subcommands.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ewit_core::analysis::{self, edge_report_for, EdgeThresholds, Subtraction, Verdict};
use ewit_core::states::{build_rho, ProductVector};
use ewit_core::witness::{self, build_witness, literal_matrix_crosscheck};
use ewit_core::{Operator, OptimizerConfig};
use serde::Serialize;

use crate::config::{resolve_optimizer, ConfigFile, GridSpec, OptimizerOverrides, DEFAULT_GRID};
use crate::format::{self, MatrixJson};
use crate::report::{CertificateJson, ConfigEcho, CrosscheckJson, EdgeReportJson};
use crate::sweep::{rows_to_csv, run_sweep};
use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "ewit", version, about = "Edge-state checks and entanglement witnesses for the 3⊗3 family ρ_a")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// RNG seed for see-saw starts and the sampling oracle.
    #[arg(long, global = true, env = "EWIT_SEED")]
    pub seed: Option<u64>,
    /// Number of see-saw starts.
    #[arg(long, global = true)]
    pub starts: Option<usize>,
    /// Iteration cap per start.
    #[arg(long, global = true)]
    pub max_iters: Option<usize>,
    /// Convergence tolerance on the objective.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Sample count of the oracle (0 disables it).
    #[arg(long, global = true)]
    pub oracle_points: Option<usize>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// TOML file with `starts`, `max_iters`, `tol`, `seed`, `oracle_points`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write ρ_a as matrix JSON.
    BuildState {
        #[arg(long)]
        a: GridSpec,
    },
    /// Test positivity of the partial transpose.
    CheckPpt {
        #[arg(long, required_unless_present = "matrix")]
        a: Option<GridSpec>,
        /// Matrix JSON file with a state.
        #[arg(long, conflicts_with = "a")]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = analysis::DEFAULT_PPT_TOL)]
        ppt_tol: f64,
    },
    /// PPT, subtraction and range-criterion evidence for edge states.
    CheckEdge {
        #[arg(long, required_unless_present = "matrix")]
        a: Option<GridSpec>,
        /// Matrix JSON file with a 3⊗3 state; with `--a`, the family's
        /// subtraction weight and closed-form eigenvalue are used.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Construct and certify W = P + Q^{T_B} − εI.
    BuildWitness {
        #[arg(long)]
        a: GridSpec,
    },
    /// Evaluate Tr(Wρ) for a witness file and a state.
    EvalWitness {
        /// Certificate JSON (its `W` field is used) or matrix JSON.
        #[arg(long)]
        witness: PathBuf,
        #[arg(long, required_unless_present = "state")]
        a: Option<GridSpec>,
        /// Matrix JSON file with the state.
        #[arg(long, conflicts_with = "a")]
        state: Option<PathBuf>,
        /// Also minimise W over product vectors and fail unless it is a
        /// witness that detects the state.
        #[arg(long)]
        verify: bool,
    },
    /// Run the whole pipeline over a grid of a.
    Sweep {
        #[arg(long, default_value = DEFAULT_GRID)]
        a: GridSpec,
    },
    /// Compare the literal published witness table with the constructed W.
    Crosscheck {
        #[arg(long)]
        a: GridSpec,
    },
}

/// Serialized artifact plus whether the command's own checks passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
    pub summary: String,
}

impl Outcome {
    fn json<T: Serialize>(value: &T, passed: bool, summary: impl Into<String>) -> Self {
        Self {
            text: format::to_json_string(value),
            passed,
            summary: summary.into(),
        }
    }
}

#[derive(Serialize)]
struct PptJson {
    version: String,
    a: Option<f64>,
    is_ppt: bool,
    min_pt_eigenvalue: f64,
    ppt_tol: f64,
}

#[derive(Serialize)]
struct EvalJson {
    version: String,
    value: f64,
    detected: bool,
    product_min: Option<f64>,
    passed: Option<bool>,
    config: ConfigEcho,
}

impl Cli {
    pub fn optimizer(&self) -> Result<OptimizerConfig> {
        let file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let flags = OptimizerOverrides {
            starts: self.starts,
            max_iters: self.max_iters,
            tol: self.tol,
            seed: self.seed,
            oracle_points: self.oracle_points,
        };
        resolve_optimizer(&flags, &file)
    }
}

fn ensure_3x3(op: &Operator) -> Result<()> {
    if op.dims() != (3, 3) {
        return Err(CliError::Usage(format!(
            "expected a 3⊗3 operator, got {}⊗{}",
            op.dim_a(),
            op.dim_b()
        )));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Sweep { .. }) {
        return Err(CliError::Usage("--format csv is only available for `sweep`".into()));
    }
    let cfg = cli.optimizer()?;
    let version = ewit_core::VERSION.to_owned();
    match &cli.command {
        Command::BuildState { a } => {
            let rho = build_rho(a.single()?);
            Ok(Outcome::json(&MatrixJson::from(&rho), true, "state written"))
        }
        Command::CheckPpt { a, matrix, ppt_tol } => {
            let (rho, a) = match (a, matrix) {
                (_, Some(path)) => (format::load_matrix(path)?, None),
                (Some(a), None) => {
                    let p = a.single()?;
                    (build_rho(p), Some(p.a()))
                }
                (None, None) => return Err(CliError::Usage("need --a or --matrix".into())),
            };
            let is_ppt = analysis::ppt_check(&rho, *ppt_tol)?;
            let report = PptJson {
                version,
                a,
                is_ppt,
                min_pt_eigenvalue: analysis::min_partial_transpose_eigenvalue(&rho)?,
                ppt_tol: *ppt_tol,
            };
            Ok(Outcome::json(&report, is_ppt, if is_ppt { "PPT" } else { "NPT" }))
        }
        Command::CheckEdge { a, matrix } => {
            let p = a.as_ref().map(GridSpec::single).transpose()?;
            let (rho, subtraction, closed) = match (matrix, p) {
                (Some(path), p) => {
                    let rho = format::load_matrix(path)?;
                    ensure_3x3(&rho)?;
                    let subtraction = match p {
                        Some(p) => Subtraction::for_family(p),
                        None => {
                            let vector = ProductVector::basis(3, 3, 1, 2);
                            let weight = rho.get(5, 5).re;
                            Subtraction { vector, weight }
                        }
                    };
                    (rho, subtraction, p.map(|p| p.subtraction_eigenvalue()))
                }
                (None, Some(p)) => (build_rho(p), Subtraction::for_family(p), Some(p.subtraction_eigenvalue())),
                (None, None) => return Err(CliError::Usage("need --a or --matrix".into())),
            };
            let report = edge_report_for(&rho, &subtraction, closed, &cfg, &EdgeThresholds::default())?;
            let passed = report.verdict == Verdict::EdgeEvidence;
            let summary = format!("verdict {:?}", report.verdict);
            Ok(Outcome::json(&EdgeReportJson::new(p.map(|p| p.a()), &report, &cfg), passed, summary))
        }
        Command::BuildWitness { a } => {
            let p = a.single()?;
            let cert = build_witness(p, &cfg)?;
            let passed = cert.product_min_of_w >= -witness::PRODUCT_MIN_TOL
                && cert.trace_w_rho < -witness::DETECTION_TOL;
            let summary = format!("epsilon {:e}, Tr(W rho) {:e}", cert.epsilon, cert.trace_w_rho);
            Ok(Outcome::json(&CertificateJson::from(&cert), passed, summary))
        }
        Command::EvalWitness { witness: path, a, state, verify } => {
            let w = format::load_matrix_field(path, "W")?;
            let rho = match (state, a) {
                (Some(path), _) => format::load_matrix(path)?,
                (None, Some(a)) => build_rho(a.single()?),
                (None, None) => return Err(CliError::Usage("need --a or --state".into())),
            };
            let value = witness::eval_witness(&w, &rho)?;
            let detected = value < -witness::DETECTION_TOL;
            let (product_min, passed) = if *verify {
                let check = witness::check_witness(&w, &cfg, &rho)?;
                (Some(check.product_min.value), Some(check.passed))
            } else {
                (None, None)
            };
            let report = EvalJson {
                version,
                value,
                detected,
                product_min,
                passed,
                config: (&cfg).into(),
            };
            Ok(Outcome::json(&report, passed.unwrap_or(true), format!("Tr(W rho) = {value:e}")))
        }
        Command::Sweep { a } => {
            let rows = run_sweep(a.values(), &cfg)?;
            let failed = rows.iter().filter(|r| !r.passed()).count();
            let text = match cli.format {
                Format::Csv => rows_to_csv(&rows),
                Format::Json => format::to_json_string(&rows),
            };
            Ok(Outcome {
                text,
                passed: failed == 0,
                summary: format!("{} rows, {failed} failed", rows.len()),
            })
        }
        Command::Crosscheck { a } => {
            let p = a.single()?;
            let cert = build_witness(p, &cfg)?;
            let report = literal_matrix_crosscheck(p, &cert)?;
            let summary = format!(
                "literal Hermiticity defect {:.6}, symmetrized deviation {:.6}",
                report.literal_hermiticity_defect, report.symmetrized_max_deviation
            );
            Ok(Outcome::json(&CrosscheckJson::from(&report), true, summary))
        }
    }
}

/// Runs the command, writes its artifact and maps the result to an exit
/// status: 0 success, 1 failed verification, 2 usage or input error.
pub fn execute(cli: &Cli) -> ExitCode {
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("ewit: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let written = match &cli.out {
        Some(path) => format::write_text(path, &outcome.text),
        None => std::io::stdout()
            .write_all(outcome.text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    };
    if let Err(e) = written {
        eprintln!("ewit: {e}");
        return ExitCode::from(e.exit_code());
    }
    if outcome.passed {
        eprintln!("ewit: {}", outcome.summary);
        ExitCode::SUCCESS
    } else {
        eprintln!("ewit: verification failed: {}", outcome.summary);
        ExitCode::from(1)
    }
}
