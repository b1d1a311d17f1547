//! Serialized forms of the reports produced by the commands.

use ewit_core::analysis::{EdgeReport, Verdict};
use ewit_core::witness::{CrosscheckReport, WitnessCertificate};
use ewit_core::OptimizerConfig;
use serde::{Deserialize, Serialize};

use crate::format::{MatrixJson, ProductVectorJson};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub starts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
    pub oracle_points: usize,
}

impl From<&OptimizerConfig> for ConfigEcho {
    fn from(c: &OptimizerConfig) -> Self {
        Self {
            starts: c.n_starts,
            max_iters: c.max_iters,
            tol: c.conv_tol,
            seed: c.rng_seed,
            oracle_points: c.oracle_points,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictJson {
    EdgeEvidence,
    NotEdge,
    Inconclusive,
}

impl From<Verdict> for VerdictJson {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::EdgeEvidence => VerdictJson::EdgeEvidence,
            Verdict::NotEdge => VerdictJson::NotEdge,
            Verdict::Inconclusive => VerdictJson::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeReportJson {
    pub version: String,
    pub a: Option<f64>,
    pub is_ppt: bool,
    pub min_pt_eigenvalue: f64,
    pub subtraction_neg_eigenvalue: f64,
    pub closed_form_neg_eigenvalue: Option<f64>,
    pub range_feasibility_min: f64,
    pub range_feasibility_oracle: Option<f64>,
    pub range_argmin: ProductVectorJson,
    pub kernel_dim: usize,
    pub kernel_pt_dim: usize,
    pub ppt_tol: f64,
    pub negativity_tol: f64,
    pub feasibility_threshold: f64,
    pub kernel_rel_tol: f64,
    pub verdict: VerdictJson,
    pub config: ConfigEcho,
}

impl EdgeReportJson {
    pub fn new(a: Option<f64>, r: &EdgeReport, cfg: &OptimizerConfig) -> Self {
        Self {
            version: ewit_core::VERSION.to_owned(),
            a,
            is_ppt: r.is_ppt,
            min_pt_eigenvalue: r.min_pt_eigenvalue,
            subtraction_neg_eigenvalue: r.subtraction_neg_eigenvalue,
            closed_form_neg_eigenvalue: r.closed_form_neg_eigenvalue,
            range_feasibility_min: r.range_feasibility_min,
            range_feasibility_oracle: r.range_feasibility_oracle,
            range_argmin: (&r.range_argmin).into(),
            kernel_dim: r.kernel_dim,
            kernel_pt_dim: r.kernel_pt_dim,
            ppt_tol: r.thresholds.ppt_tol,
            negativity_tol: r.thresholds.negativity_tol,
            feasibility_threshold: r.thresholds.feasibility_threshold,
            kernel_rel_tol: r.thresholds.kernel_rel_tol,
            verdict: r.verdict.into(),
            config: cfg.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub version: String,
    pub a: f64,
    pub epsilon: f64,
    pub epsilon_closed_form: f64,
    pub epsilon_oracle: Option<f64>,
    #[serde(rename = "product_min_of_W")]
    pub product_min_of_w: f64,
    #[serde(rename = "trace_W_rho")]
    pub trace_w_rho: f64,
    pub argmin: ProductVectorJson,
    pub config: ConfigEcho,
    #[serde(rename = "W")]
    pub w: MatrixJson,
    #[serde(rename = "P")]
    pub p: MatrixJson,
    #[serde(rename = "Q")]
    pub q: MatrixJson,
}

impl From<&WitnessCertificate> for CertificateJson {
    fn from(c: &WitnessCertificate) -> Self {
        Self {
            version: ewit_core::VERSION.to_owned(),
            a: c.a,
            epsilon: c.epsilon,
            epsilon_closed_form: c.epsilon_closed_form,
            epsilon_oracle: c.epsilon_oracle,
            product_min_of_w: c.product_min_of_w,
            trace_w_rho: c.trace_w_rho,
            argmin: (&c.argmin).into(),
            config: (&c.config).into(),
            w: (&c.w).into(),
            p: (&c.p).into(),
            q: (&c.q).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryDeviationJson {
    pub row: usize,
    pub col: usize,
    pub literal_symmetrized: [f64; 2],
    pub constructed: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckJson {
    pub version: String,
    pub a: f64,
    pub epsilon_literal: f64,
    pub epsilon_constructed: f64,
    pub literal_hermiticity_defect: f64,
    /// 0-based `(row, col)` pairs, `row < col`.
    pub asymmetric_pairs: Vec<(usize, usize)>,
    pub symmetrized_max_deviation: f64,
    pub deviations: Vec<EntryDeviationJson>,
    /// `[literal, constructed]` diagonal entries.
    pub diagonal: Vec<[f64; 2]>,
}

impl From<&CrosscheckReport> for CrosscheckJson {
    fn from(r: &CrosscheckReport) -> Self {
        Self {
            version: ewit_core::VERSION.to_owned(),
            a: r.a,
            epsilon_literal: r.epsilon_literal,
            epsilon_constructed: r.epsilon_constructed,
            literal_hermiticity_defect: r.literal_hermiticity_defect,
            asymmetric_pairs: r.asymmetric_pairs.clone(),
            symmetrized_max_deviation: r.symmetrized_max_deviation,
            deviations: r
                .deviations
                .iter()
                .map(|d| EntryDeviationJson {
                    row: d.row,
                    col: d.col,
                    literal_symmetrized: [d.reference.re, d.reference.im],
                    constructed: [d.candidate.re, d.candidate.im],
                })
                .collect(),
            diagonal: r.diagonal.iter().map(|&(x, y)| [x, y]).collect(),
        }
    }
}

/// One CSV row of a parameter sweep. Column order is part of the output
/// format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub a: f64,
    pub ppt: bool,
    pub min_pt_eigenvalue: f64,
    pub neg_eig: f64,
    pub neg_eig_closed_form: f64,
    pub range_min: f64,
    pub verdict: VerdictJson,
    pub epsilon: f64,
    pub epsilon_closed_form: f64,
    pub epsilon_oracle: Option<f64>,
    #[serde(rename = "product_min_of_W")]
    pub product_min_of_w: f64,
    #[serde(rename = "trace_W_rho")]
    pub trace_w_rho: f64,
    pub nondecomposable: bool,
}

impl SweepRow {
    /// The row's own verification: PPT, edge evidence, a witness that does
    /// not misfire on product vectors and detects `ρ_a` with `Tr(Wρ) = −ε`.
    pub fn passed(&self) -> bool {
        self.ppt
            && self.verdict == VerdictJson::EdgeEvidence
            && self.product_min_of_w >= -ewit_core::witness::PRODUCT_MIN_TOL
            && (self.trace_w_rho + self.epsilon).abs() <= 1e-12
            && self.nondecomposable
    }
}
