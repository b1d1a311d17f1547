//! Edge-state evidence: PPT test, product-vector subtraction test and the
//! range-criterion feasibility objective.

use alloc::vec::Vec;

use crate::linalg::{self, hermitian_eig, null_space, projector_onto, KernelBasis, Operator};
use crate::product_opt::{grid_oracle, min_over_products, OptimizerConfig, ProductMinResult};
use crate::states::{build_rho, closed_form_kernel_vectors, ProductVector, StateParameter};
use crate::{Error, Result};

pub const DEFAULT_PPT_TOL: f64 = 1e-12;
pub const DEFAULT_NEGATIVITY_TOL: f64 = 1e-10;
pub const DEFAULT_FEASIBILITY_THRESHOLD: f64 = 1e-4;
pub const UNIT_TRACE_TOL: f64 = 1e-10;

/// Smallest eigenvalue of `A^{T_B}`.
pub fn min_partial_transpose_eigenvalue(a: &Operator) -> Result<f64> {
    Ok(hermitian_eig(&a.partial_transpose_b())?.min_eigenvalue())
}

/// `true` iff the partial transpose of the state has no eigenvalue below
/// `−tol`.
pub fn ppt_check(state: &Operator, tol: f64) -> Result<bool> {
    ensure_state_like(state)?;
    Ok(min_partial_transpose_eigenvalue(state)? >= -tol)
}

fn ensure_state_like(state: &Operator) -> Result<()> {
    state.ensure_hermitian()?;
    let trace = state.trace().re;
    if (trace - 1.0).abs() > UNIT_TRACE_TOL {
        return Err(Error::NotUnitTrace { trace });
    }
    Ok(())
}

/// `ρ − w·|e,f⟩⟨e,f|`.
pub fn subtract_product(rho: &Operator, v: &ProductVector, weight: f64) -> Result<Operator> {
    let outer = Operator::outer(rho.dim_a(), rho.dim_b(), &v.tensor())?;
    rho.ensure_same_shape(&outer)?;
    Ok(rho - &outer.scale(weight))
}

/// A weighted product vector to remove from a state.
#[derive(Debug, Clone, PartialEq)]
pub struct Subtraction {
    pub vector: ProductVector,
    pub weight: f64,
}

impl Subtraction {
    /// `a/(8a+1)·|12⟩⟨12|`, the term removed from `ρ_a`.
    pub fn for_family(p: StateParameter) -> Self {
        Self {
            vector: ProductVector::basis(3, 3, 1, 2),
            weight: p.subtraction_weight(),
        }
    }
}

/// `(ρ − w|e,f⟩⟨e,f|)^{T_B}` and its smallest eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct SubtractionTest {
    pub operator: Operator,
    pub min_eigenvalue: f64,
}

pub fn subtraction_test(rho: &Operator, subtraction: &Subtraction) -> Result<SubtractionTest> {
    let operator = subtract_product(rho, &subtraction.vector, subtraction.weight)?.partial_transpose_b();
    let min_eigenvalue = hermitian_eig(&operator)?.min_eigenvalue();
    Ok(SubtractionTest {
        operator,
        min_eigenvalue,
    })
}

/// Removes `a/(8a+1)|12⟩⟨12|` from `ρ_a` and partially transposes. A negative
/// eigenvalue shows the remainder is no longer PPT.
pub fn subtraction_edge_test(p: StateParameter) -> Result<SubtractionTest> {
    subtraction_test(&build_rho(p), &Subtraction::for_family(p))
}

/// `F(e,f) = Σ_k |⟨κ_k|e⊗f⟩|² + Σ_m |⟨μ_m|e⊗f*⟩|²`, with `κ` spanning
/// `ker ρ` and `μ` spanning `ker ρ^{T_B}`.
///
/// `F = 0` exactly when `|e,f⟩ ∈ R(ρ)` and `|e,f*⟩ ∈ R(ρ^{T_B})`. For
/// orthonormal kernel bases `F(e,f) = ⟨e,f|P + Q^{T_B}|e,f⟩` with `P`, `Q`
/// the kernel projectors, which is what the see-saw minimises.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeObjective {
    pub kernel: KernelBasis,
    pub kernel_pt: KernelBasis,
}

impl RangeObjective {
    /// Kernels computed numerically from `ρ` and `ρ^{T_B}`.
    pub fn from_state(rho: &Operator, rel_tol: f64) -> Result<Self> {
        Ok(Self {
            kernel: null_space(rho, rel_tol)?,
            kernel_pt: null_space(&rho.partial_transpose_b(), rel_tol)?,
        })
    }

    /// Kernels spanned by the closed-form vectors of `ρ_a`.
    pub fn from_closed_form(p: StateParameter) -> Self {
        let k = closed_form_kernel_vectors(p);
        Self {
            kernel: KernelBasis::from_spanning(3, 3, &k.rho),
            kernel_pt: KernelBasis::from_spanning(3, 3, &k.partial_transpose),
        }
    }

    /// Direct evaluation from the kernel vectors.
    pub fn value(&self, v: &ProductVector) -> f64 {
        let ef = v.tensor();
        let ef_conj = v.conjugate_partner().tensor();
        let sum = |basis: &KernelBasis, x: &[linalg::C64]| -> f64 {
            basis
                .vectors
                .iter()
                .map(|k| linalg::inner(k, x).norm_sqr())
                .sum()
        };
        sum(&self.kernel, &ef) + sum(&self.kernel_pt, &ef_conj)
    }

    /// `P + Q^{T_B}`.
    pub fn operator(&self) -> Operator {
        let p = projector_onto(&self.kernel);
        let q = projector_onto(&self.kernel_pt);
        &p + &q.partial_transpose_b()
    }

    pub fn minimize(&self, cfg: &OptimizerConfig) -> Result<ProductMinResult> {
        min_over_products(&self.operator(), cfg)
    }
}

/// Minimum of the range-criterion objective for `ρ_a`. Strict positivity
/// means no `|e,f⟩ ∈ R(ρ_a)` has `|e,f*⟩ ∈ R(ρ_a^{T_B})`.
pub fn range_criterion_min(p: StateParameter, cfg: &OptimizerConfig) -> Result<f64> {
    let objective = RangeObjective::from_state(&build_rho(p), linalg::DEFAULT_KERNEL_REL_TOL)?;
    Ok(objective.minimize(cfg)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    EdgeEvidence,
    NotEdge,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeThresholds {
    pub ppt_tol: f64,
    /// The subtraction eigenvalue must be below `−negativity_tol`.
    pub negativity_tol: f64,
    /// The range objective minimum must exceed this.
    pub feasibility_threshold: f64,
    pub kernel_rel_tol: f64,
}

impl Default for EdgeThresholds {
    fn default() -> Self {
        Self {
            ppt_tol: DEFAULT_PPT_TOL,
            negativity_tol: DEFAULT_NEGATIVITY_TOL,
            feasibility_threshold: DEFAULT_FEASIBILITY_THRESHOLD,
            kernel_rel_tol: linalg::DEFAULT_KERNEL_REL_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeReport {
    pub is_ppt: bool,
    pub min_pt_eigenvalue: f64,
    pub subtraction_neg_eigenvalue: f64,
    /// Known only for the `ρ_a` family.
    pub closed_form_neg_eigenvalue: Option<f64>,
    pub range_feasibility_min: f64,
    /// Sampling upper bound on the same minimum, when requested.
    pub range_feasibility_oracle: Option<f64>,
    pub range_argmin: ProductVector,
    pub kernel_dim: usize,
    pub kernel_pt_dim: usize,
    pub thresholds: EdgeThresholds,
    pub verdict: Verdict,
}

impl EdgeReport {
    fn decide(is_ppt: bool, neg: f64, range_min: f64, t: &EdgeThresholds) -> Verdict {
        if !is_ppt || range_min <= t.feasibility_threshold {
            Verdict::NotEdge
        } else if neg < -t.negativity_tol {
            Verdict::EdgeEvidence
        } else {
            Verdict::Inconclusive
        }
    }
}

/// Full edge-state evidence for `ρ_a`.
pub fn edge_report(p: StateParameter, cfg: &OptimizerConfig) -> Result<EdgeReport> {
    edge_report_for(
        &build_rho(p),
        &Subtraction::for_family(p),
        Some(p.subtraction_eigenvalue()),
        cfg,
        &EdgeThresholds::default(),
    )
}

/// Edge-state evidence for an arbitrary state.
///
/// An NPT state, or a state whose range objective reaches the feasibility
/// threshold, is reported as `NotEdge`.
pub fn edge_report_for(
    rho: &Operator,
    subtraction: &Subtraction,
    closed_form_neg_eigenvalue: Option<f64>,
    cfg: &OptimizerConfig,
    thresholds: &EdgeThresholds,
) -> Result<EdgeReport> {
    ensure_state_like(rho)?;
    let min_pt_eigenvalue = min_partial_transpose_eigenvalue(rho)?;
    let is_ppt = min_pt_eigenvalue >= -thresholds.ppt_tol;
    let sub = subtraction_test(rho, subtraction)?;

    let objective = RangeObjective::from_state(rho, thresholds.kernel_rel_tol)?;
    let op = objective.operator();
    let found = min_over_products(&op, cfg)?;
    let range_feasibility_oracle = if cfg.oracle_points > 0 {
        Some(grid_oracle(&op, cfg.oracle_points, cfg.rng_seed)?)
    } else {
        None
    };

    let verdict = EdgeReport::decide(is_ppt, sub.min_eigenvalue, found.value, thresholds);
    Ok(EdgeReport {
        is_ppt,
        min_pt_eigenvalue,
        subtraction_neg_eigenvalue: sub.min_eigenvalue,
        closed_form_neg_eigenvalue,
        range_feasibility_min: found.value,
        range_feasibility_oracle,
        range_argmin: found.argmin,
        kernel_dim: objective.kernel.dim(),
        kernel_pt_dim: objective.kernel_pt.dim(),
        thresholds: *thresholds,
        verdict,
    })
}

/// Parameter grid used for sweeps and property checks: `0.05, 0.10, …, 0.95`.
pub fn standard_grid() -> Vec<StateParameter> {
    (1..=19)
        .map(|k| StateParameter::new(k as f64 * 0.05).expect("inside (0,1)"))
        .collect()
}
