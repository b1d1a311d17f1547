use alloc::vec::Vec;

use super::{hermitian_eig, Operator, C64};
use crate::Result;

/// Default relative tolerance for numerical null spaces.
pub const DEFAULT_KERNEL_REL_TOL: f64 = 1e-9;

/// Orthonormal basis of a numerical null space.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<C64>>,
    /// Relative tolerance the basis was extracted with.
    pub tolerance: f64,
    pub dim_a: usize,
    pub dim_b: usize,
}

impl KernelBasis {
    pub fn new(dim_a: usize, dim_b: usize, vectors: Vec<Vec<C64>>, tolerance: f64) -> Self {
        Self {
            vectors,
            tolerance,
            dim_a,
            dim_b,
        }
    }

    /// Orthonormalises arbitrary spanning vectors (modified Gram–Schmidt),
    /// dropping any that are linearly dependent to within `1e-12`.
    pub fn from_spanning(dim_a: usize, dim_b: usize, spanning: &[Vec<C64>]) -> Self {
        let mut basis: Vec<Vec<C64>> = Vec::new();
        for v in spanning {
            let mut w = v.clone();
            // Two passes keep the basis orthogonal to working precision.
            for _ in 0..2 {
                for b in &basis {
                    let proj = super::inner(b, &w);
                    for (x, y) in w.iter_mut().zip(b) {
                        *x -= proj * y;
                    }
                }
            }
            if let Some(u) = super::normalized(&w) {
                if super::norm(&w) > 1e-12 * super::norm(v).max(1.0) {
                    basis.push(u);
                }
            }
        }
        Self::new(dim_a, dim_b, basis, 0.0)
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `‖v − Π v‖` where `Π` projects onto the span of this basis.
    pub fn projection_defect(&self, v: &[C64]) -> f64 {
        let mut residual = v.to_vec();
        for b in &self.vectors {
            let proj = super::inner(b, v);
            for (x, y) in residual.iter_mut().zip(b) {
                *x -= proj * y;
            }
        }
        super::norm(&residual)
    }
}

/// Eigenvectors of Hermitian `A` whose `|λ| ≤ rel_tol·max|λ|`.
pub fn null_space(a: &Operator, rel_tol: f64) -> Result<KernelBasis> {
    let decomp = hermitian_eig(a)?;
    let cutoff = rel_tol * decomp.max_abs_eigenvalue();
    let vectors = decomp
        .eigenvalues
        .iter()
        .zip(decomp.eigenvectors)
        .filter(|(lambda, _)| lambda.abs() <= cutoff)
        .map(|(_, v)| v)
        .collect();
    Ok(KernelBasis::new(a.dim_a(), a.dim_b(), vectors, rel_tol))
}

/// Orthogonal projector `Σ_k |v_k⟩⟨v_k|` onto the span of an orthonormal basis.
pub fn projector_onto(basis: &KernelBasis) -> Operator {
    let mut out = Operator::zeros(basis.dim_a, basis.dim_b);
    let n = out.side();
    for r in 0..n {
        for c in r..n {
            let z: C64 = basis.vectors.iter().map(|v| v[r] * v[c].conj()).sum();
            if r == c {
                out.set(r, r, C64::new(z.re, 0.0));
            } else {
                out.set(r, c, z);
                out.set(c, r, z.conj());
            }
        }
    }
    out
}
