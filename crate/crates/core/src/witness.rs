//! The witness `W = P + Q^{T_B} − εI` for `ρ_a`.
//!
//! `P` and `Q` are the orthogonal projectors onto `ker ρ_a` and
//! `ker ρ_a^{T_B}`, and `ε` is the minimum of `⟨e,f|P + Q^{T_B}|e,f⟩` over
//! product vectors. Then `⟨e,f|W|e,f⟩ ≥ 0` on every product vector while
//! `Tr(W ρ_a) = −ε`, since `Tr(P ρ_a) = Tr(Q ρ_a^{T_B}) = 0`.

use alloc::vec::Vec;

use crate::analysis::{ppt_check, DEFAULT_PPT_TOL};
use crate::linalg::{self, null_space, projector_onto, trace_product, Operator, C64};
use crate::product_opt::{grid_oracle, min_over_products, OptimizerConfig, ProductMinResult};
use crate::states::{build_rho, ProductVector, StateParameter};
use crate::{Error, Result};

/// Product minimum a valid witness may undershoot zero by.
pub const PRODUCT_MIN_TOL: f64 = 1e-8;
/// `Tr(Wρ)` must be below `−DETECTION_TOL` to count as detection.
pub const DETECTION_TOL: f64 = 1e-10;
/// Smallest acceptable ε.
pub const MIN_EPSILON: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessCertificate {
    pub a: f64,
    pub w: Operator,
    /// See-saw product minimum of `P + Q^{T_B}`; the shift used in `w`.
    pub epsilon: f64,
    /// Closed form `a²/(8a+1)²`, carried for comparison only.
    pub epsilon_closed_form: f64,
    /// Sampling upper bound on the same product minimum.
    pub epsilon_oracle: Option<f64>,
    pub p: Operator,
    pub q: Operator,
    pub product_min_of_w: f64,
    pub trace_w_rho: f64,
    /// Product vector attaining `epsilon`.
    pub argmin: ProductVector,
    pub config: OptimizerConfig,
}

impl WitnessCertificate {
    /// `P + Q^{T_B}`.
    pub fn decomposable_part(&self) -> Operator {
        &self.p + &self.q.partial_transpose_b()
    }

    /// Same `P`, `Q` with a different shift.
    pub fn witness_with_epsilon(&self, epsilon: f64) -> Operator {
        assemble_witness(&self.p, &self.q, epsilon)
    }

    /// `|ε_oracle − ε| / ε`, when the oracle ran.
    pub fn oracle_gap(&self) -> Option<f64> {
        self.epsilon_oracle.map(|o| (o - self.epsilon).abs() / self.epsilon)
    }
}

/// `P + Q^{T_B} − εI`.
pub fn assemble_witness(p: &Operator, q: &Operator, epsilon: f64) -> Operator {
    let shifted = Operator::identity(p.dim_a(), p.dim_b()).scale(epsilon);
    &(p + &q.partial_transpose_b()) - &shifted
}

pub fn build_witness(p: StateParameter, cfg: &OptimizerConfig) -> Result<WitnessCertificate> {
    let rho = build_rho(p);
    let proj_p = projector_onto(&null_space(&rho, linalg::DEFAULT_KERNEL_REL_TOL)?);
    let proj_q = projector_onto(&null_space(&rho.partial_transpose_b(), linalg::DEFAULT_KERNEL_REL_TOL)?);

    let decomposable = &proj_p + &proj_q.partial_transpose_b();
    let found = min_over_products(&decomposable, cfg)?;
    let epsilon = found.value;
    if epsilon <= MIN_EPSILON {
        return Err(Error::NonPositiveEpsilon(epsilon));
    }
    let epsilon_oracle = match cfg.oracle_points {
        0 => None,
        n => Some(grid_oracle(&decomposable, n, cfg.rng_seed)?),
    };

    let w = assemble_witness(&proj_p, &proj_q, epsilon);
    let product_min_of_w = min_over_products(&w, cfg)?.value;
    let trace_w_rho = eval_witness(&w, &rho)?;
    Ok(WitnessCertificate {
        a: p.a(),
        w,
        epsilon,
        epsilon_closed_form: p.closed_form_epsilon(),
        epsilon_oracle,
        p: proj_p,
        q: proj_q,
        product_min_of_w,
        trace_w_rho,
        argmin: found.argmin,
        config: *cfg,
    })
}

/// `Re Tr(W ρ)`.
pub fn eval_witness(w: &Operator, rho: &Operator) -> Result<f64> {
    w.ensure_hermitian()?;
    rho.ensure_hermitian()?;
    Ok(trace_product(w, rho)?.re)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessCheck {
    pub product_min: ProductMinResult,
    pub detection_value: f64,
    pub passed: bool,
}

/// Non-negative on product vectors (hence, by convexity, on all separable
/// states) and negative on `detector`.
pub fn check_witness(w: &Operator, cfg: &OptimizerConfig, detector: &Operator) -> Result<WitnessCheck> {
    let product_min = min_over_products(w, cfg)?;
    let detection_value = eval_witness(w, detector)?;
    let passed = product_min.value >= -PRODUCT_MIN_TOL && detection_value < -DETECTION_TOL;
    Ok(WitnessCheck {
        product_min,
        detection_value,
        passed,
    })
}

pub fn verify_witness(w: &Operator, cfg: &OptimizerConfig, detector: &Operator) -> Result<bool> {
    Ok(check_witness(w, cfg, detector)?.passed)
}

/// A witness that detects a PPT state cannot be decomposable.
pub fn nondecomposability_certificate(cert: &WitnessCertificate, p: StateParameter) -> Result<bool> {
    nondecomposability_for(&cert.w, &build_rho(p))
}

/// `ppt_check(ρ) ∧ Tr(Wρ) < 0`.
pub fn nondecomposability_for(w: &Operator, rho: &Operator) -> Result<bool> {
    if !ppt_check(rho, DEFAULT_PPT_TOL)? {
        return Ok(false);
    }
    Ok(eval_witness(w, rho)? < 0.0)
}

/// The published 9×9 witness table, transcribed entry by entry (including its
/// mismatched mirror entries), with `ε` supplied by the caller.
pub fn literal_witness_matrix(p: StateParameter, epsilon: f64) -> Operator {
    let (c, d, e) = (p.c(), p.d(), epsilon);
    let d2 = d * d;
    #[rustfmt::skip]
    let rows: [[f64; 9]; 9] = [
        [1.0 - e, 0.0, 0.0, 0.0, -1.0, 0.0, c, 0.0, -(d2 + 1.0)],
        [0.0, 1.0 - e, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, d2 - e, 0.0, 0.0, 0.0, 0.0, 0.0, -d2],
        [0.0, 0.0, 0.0, 1.0 - e, 0.0, 0.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0, 1.0 - e, 0.0, c, 0.0, -2.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0 - e, 0.0, 0.0, 0.0],
        [c, 0.0, 0.0, 0.0, c, 0.0, 2.0 * c * c + d2 - e, 0.0, d - 2.0 * c],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0 - e, 0.0],
        [-(d2 + 1.0), 0.0, -d, 0.0, -2.0, 0.0, d - 2.0 * c, 0.0, 3.0 - e],
    ];
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    Operator::from_real(3, 3, &flat).expect("finite 9×9 table")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntryDeviation {
    pub row: usize,
    pub col: usize,
    pub reference: C64,
    pub candidate: C64,
}

impl EntryDeviation {
    pub fn magnitude(&self) -> f64 {
        (self.reference - self.candidate).norm()
    }
}

/// Entries where `|reference − candidate| > tol`, in row-major order.
pub fn compare_entries(reference: &Operator, candidate: &Operator, tol: f64) -> Result<Vec<EntryDeviation>> {
    reference.ensure_same_shape(candidate)?;
    let n = reference.side();
    let mut out = Vec::new();
    for row in 0..n {
        for col in 0..n {
            let (x, y) = (reference.get(row, col), candidate.get(row, col));
            if (x - y).norm() > tol {
                out.push(EntryDeviation {
                    row,
                    col,
                    reference: x,
                    candidate: y,
                });
            }
        }
    }
    Ok(out)
}

/// Tolerance used when listing entry deviations in a cross-check.
pub const CROSSCHECK_ENTRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckReport {
    pub a: f64,
    /// The shift written into the literal table (the closed-form ε).
    pub epsilon_literal: f64,
    pub epsilon_constructed: f64,
    /// `‖M − M†‖_max` of the literal table.
    pub literal_hermiticity_defect: f64,
    /// Mirror pairs `(r, c)` with `r < c` where the literal table is not
    /// Hermitian.
    pub asymmetric_pairs: Vec<(usize, usize)>,
    /// `max |(M + M†)/2 − W|`.
    pub symmetrized_max_deviation: f64,
    /// Entrywise list behind `symmetrized_max_deviation`.
    pub deviations: Vec<EntryDeviation>,
    /// `(M_ii, W_ii)` for every diagonal index.
    pub diagonal: Vec<(f64, f64)>,
}

/// Compares the literal published table against the constructed witness.
pub fn literal_matrix_crosscheck(p: StateParameter, cert: &WitnessCertificate) -> Result<CrosscheckReport> {
    let literal = literal_witness_matrix(p, p.closed_form_epsilon());
    let n = literal.side();
    let mut asymmetric_pairs = Vec::new();
    for r in 0..n {
        for c in r + 1..n {
            if (literal.get(r, c) - literal.get(c, r).conj()).norm() > CROSSCHECK_ENTRY_TOL {
                asymmetric_pairs.push((r, c));
            }
        }
    }
    let symmetrized = literal.symmetrized();
    Ok(CrosscheckReport {
        a: p.a(),
        epsilon_literal: p.closed_form_epsilon(),
        epsilon_constructed: cert.epsilon,
        literal_hermiticity_defect: literal.hermiticity_defect(),
        asymmetric_pairs,
        symmetrized_max_deviation: symmetrized.max_abs_diff(&cert.w)?,
        deviations: compare_entries(&symmetrized, &cert.w, CROSSCHECK_ENTRY_TOL)?,
        diagonal: (0..n).map(|i| (literal.get(i, i).re, cert.w.get(i, i).re)).collect(),
    })
}
