//! Hermitian eigensolver (cyclic complex Jacobi) and closed-form spectra for
//! tiny matrices.

use alloc::vec;
use alloc::vec::Vec;

use super::{Operator, C64};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<C64>>,
}

impl EigenDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// `V·diag(λ)·V†` labelled with the given bipartite dims.
    pub fn reconstruct(&self, dim_a: usize, dim_b: usize) -> Operator {
        let n = self.len();
        let mut out = Operator::zeros(dim_a, dim_b);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for r in 0..n {
                for c in 0..n {
                    let z = out.get(r, c) + v[r] * v[c].conj() * *lambda;
                    out.set(r, c, z);
                }
            }
        }
        out
    }
}

/// Eigendecomposition of a Hermitian operator.
///
/// Fails with [`Error::NotHermitian`] when `‖A − A†‖_max > 1e-12`; see
/// [`hermitian_eig_symmetrized`] for the opt-in variant.
pub fn hermitian_eig(a: &Operator) -> Result<EigenDecomposition> {
    a.ensure_hermitian()?;
    jacobi(a)
}

/// Eigendecomposition of `(A + A†)/2`, for callers that accept symmetrising
/// slightly non-Hermitian input.
pub fn hermitian_eig_symmetrized(a: &Operator) -> Result<EigenDecomposition> {
    jacobi(&a.symmetrized())
}

fn jacobi(a: &Operator) -> Result<EigenDecomposition> {
    let n = a.side();
    let mut m: Vec<C64> = a.entries().to_vec();
    for i in 0..n {
        m[i * n + i].im = 0.0;
    }
    let mut v = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = C64::new(1.0, 0.0);
    }

    let scale: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    let threshold = (f64::EPSILON * f64::EPSILON) * scale;

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = (0..n)
            .flat_map(|r| (0..n).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| m[r * n + c].norm_sqr())
            .sum();
        if off <= threshold || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, n, p, q);
            }
        }
    }
    if !converged {
        let off: f64 = (0..n)
            .flat_map(|r| (0..n).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| m[r * n + c].norm_sqr())
            .sum();
        if off > threshold && off != 0.0 {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[x * n + x].re.total_cmp(&m[y * n + y].re));
    let eigenvalues = order.iter().map(|&k| m[k * n + k].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| (0..n).map(|r| v[r * n + k]).collect())
        .collect();
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// One complex Jacobi rotation annihilating `m[p,q]`.
///
/// The rotation is `G = diag(1, e^{-iφ})·R` on the `(p, q)` plane, where
/// `φ = arg m[p,q]` and `R` is the real Jacobi rotation for the phase-removed
/// block; `m ← G†·m·G`, `v ← v·G`.
fn rotate(m: &mut [C64], v: &mut [C64], n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = m[p * n + p].re;
    let aqq = m[q * n + q].re;
    let phase = apq / mag;

    let theta = 0.5 * (aqq - app) / mag;
    let t = {
        let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    // m ← m·G
    for k in 0..n {
        let akp = m[k * n + p];
        let akq = m[k * n + q];
        m[k * n + p] = akp * g_pp + akq * g_qp;
        m[k * n + q] = akp * g_pq + akq * g_qq;
    }
    // m ← G†·m
    for k in 0..n {
        let apk = m[p * n + k];
        let aqk = m[q * n + k];
        m[p * n + k] = g_pp.conj() * apk + g_qp.conj() * aqk;
        m[q * n + k] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    m[p * n + q] = C64::new(0.0, 0.0);
    m[q * n + p] = C64::new(0.0, 0.0);
    m[p * n + p] = C64::new(app - t * mag, 0.0);
    m[q * n + q] = C64::new(aqq + t * mag, 0.0);

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * g_pp + vkq * g_qp;
        v[k * n + q] = vkp * g_pq + vkq * g_qq;
    }
}

/// Ascending eigenvalues of a Hermitian `n×n` row-major matrix, `n ≤ 3`,
/// from the characteristic polynomial (trigonometric form for the cubic).
///
/// Returns `None` for larger matrices. Accuracy degrades towards
/// `√ε·‖M‖` near a triple root; intended for sampling, not certification.
pub fn small_hermitian_eigenvalues(m: &[C64], n: usize) -> Option<Vec<f64>> {
    debug_assert_eq!(m.len(), n * n);
    match n {
        1 => Some(vec![m[0].re]),
        2 => {
            let (a, d) = (m[0].re, m[3].re);
            let mean = 0.5 * (a + d);
            let r = libm::hypot(0.5 * (a - d), m[1].norm());
            Some(vec![mean - r, mean + r])
        }
        3 => {
            let (a00, a11, a22) = (m[0].re, m[4].re, m[8].re);
            let (a01, a02, a12) = (m[1], m[2], m[5]);
            let off = a01.norm_sqr() + a02.norm_sqr() + a12.norm_sqr();
            let q = (a00 + a11 + a22) / 3.0;
            let (b00, b11, b22) = (a00 - q, a11 - q, a22 - q);
            let p2 = b00 * b00 + b11 * b11 + b22 * b22 + 2.0 * off;
            if p2 == 0.0 {
                return Some(vec![q, q, q]);
            }
            let p = libm::sqrt(p2 / 6.0);
            // det(B)/2 with B = (M − qI)/p
            let det = b00 * b11 * b22 + 2.0 * (a01 * a12 * a02.conj()).re
                - b00 * a12.norm_sqr()
                - b11 * a02.norm_sqr()
                - b22 * a01.norm_sqr();
            let r = (det / (2.0 * p * p * p)).clamp(-1.0, 1.0);
            let phi = libm::acos(r) / 3.0;
            let third = 2.0 * core::f64::consts::PI / 3.0;
            let hi = q + 2.0 * p * libm::cos(phi);
            let lo = q + 2.0 * p * libm::cos(phi + third);
            let mid = 3.0 * q - hi - lo;
            Some(vec![lo, mid, hi])
        }
        _ => None,
    }
}
