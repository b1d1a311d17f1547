//! Dense complex linear algebra on bipartite spaces `C^dA ⊗ C^dB`.
//!
//! Composite basis ordering is row-major: `|i⟩ ⊗ |j⟩` sits at index
//! `dB·i + j`, so the qutrit-qutrit basis runs `|00⟩, |01⟩, …, |22⟩`.

mod eigen;
mod kernel;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

pub use eigen::{hermitian_eig, hermitian_eig_symmetrized, small_hermitian_eigenvalues, EigenDecomposition};
pub use kernel::{null_space, projector_onto, KernelBasis, DEFAULT_KERNEL_REL_TOL};

use crate::{Error, Result};

pub type C64 = num_complex::Complex64;

/// Hermiticity gate applied before eigensolving.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Allowed deviation from unit norm for vectors fed to [`expectation`].
pub const NORM_TOL: f64 = 1e-12;

/// Dense square complex matrix acting on `C^dim_a ⊗ C^dim_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim_a: usize,
    dim_b: usize,
    entries: Vec<C64>,
}

impl Operator {
    /// Builds an operator from row-major entries, validating shape and
    /// finiteness.
    pub fn new(dim_a: usize, dim_b: usize, entries: Vec<C64>) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::ZeroDimension);
        }
        let side = dim_a * dim_b;
        if entries.len() != side * side {
            let got = libm::sqrt(entries.len() as f64) as usize;
            return Err(Error::DimensionMismatch {
                side: got,
                dim_a,
                dim_b,
            });
        }
        if let Some(idx) = entries
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite {
                row: idx / side,
                col: idx % side,
            });
        }
        Ok(Self {
            dim_a,
            dim_b,
            entries,
        })
    }

    /// Builds an operator from nested rows.
    pub fn from_rows(dim_a: usize, dim_b: usize, rows: &[Vec<C64>]) -> Result<Self> {
        let side = dim_a * dim_b;
        if rows.len() != side || rows.iter().any(|r| r.len() != side) {
            return Err(Error::DimensionMismatch {
                side: rows.len(),
                dim_a,
                dim_b,
            });
        }
        Self::new(dim_a, dim_b, rows.iter().flatten().copied().collect())
    }

    /// Real-valued convenience constructor.
    pub fn from_real(dim_a: usize, dim_b: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            dim_a,
            dim_b,
            entries.iter().map(|&x| C64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(dim_a: usize, dim_b: usize) -> Self {
        let side = dim_a * dim_b;
        Self {
            dim_a,
            dim_b,
            entries: vec![C64::new(0.0, 0.0); side * side],
        }
    }

    pub fn identity(dim_a: usize, dim_b: usize) -> Self {
        let mut out = Self::zeros(dim_a, dim_b);
        let side = out.side();
        for i in 0..side {
            out.entries[i * side + i] = C64::new(1.0, 0.0);
        }
        out
    }

    /// Real diagonal operator on a single factor (`dim_b = 1`).
    pub fn diagonal(values: &[f64]) -> Self {
        let mut out = Self::zeros(values.len(), 1);
        let n = values.len();
        for (i, &v) in values.iter().enumerate() {
            out.entries[i * n + i] = C64::new(v, 0.0);
        }
        out
    }

    /// `|v⟩⟨v|` on the given bipartite space.
    pub fn outer(dim_a: usize, dim_b: usize, v: &[C64]) -> Result<Self> {
        let side = dim_a * dim_b;
        if v.len() != side {
            return Err(Error::VectorLength {
                len: v.len(),
                expected: side,
            });
        }
        let mut out = Self::zeros(dim_a, dim_b);
        for r in 0..side {
            for c in r..side {
                let z = v[r] * v[c].conj();
                out.entries[r * side + c] = z;
                out.entries[c * side + r] = z.conj();
            }
            out.entries[r * side + r].im = 0.0;
        }
        Ok(out)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    /// Side length `dim_a·dim_b`.
    pub fn side(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.side() + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        let side = self.side();
        self.entries[row * side + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[C64]> {
        self.entries.chunks(self.side())
    }

    /// Composite index of `|i⟩ ⊗ |j⟩`.
    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        self.dim_b * i + j
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.side();
        let mut out = self.clone();
        for r in 0..n {
            for c in 0..n {
                out.entries[c * n + r] = self.entries[r * n + c].conj();
            }
        }
        out
    }

    /// Transposition on the second factor:
    /// `out[(i,j),(k,l)] = in[(i,l),(k,j)]`.
    pub fn partial_transpose_b(&self) -> Self {
        let (da, db) = self.dims();
        let n = self.side();
        let mut out = self.clone();
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    for l in 0..db {
                        out.entries[(db * i + j) * n + db * k + l] =
                            self.entries[(db * i + l) * n + db * k + j];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.side()).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus, `‖A‖_max`.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖A − A†‖_max`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.side();
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in r..n {
                let d = (self.get(r, c) - self.get(c, r).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub(crate) fn ensure_hermitian(&self) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian { defect });
        }
        Ok(())
    }

    /// `(A + A†)/2`.
    pub fn symmetrized(&self) -> Self {
        let adj = self.adjoint();
        let mut out = self.clone();
        for (z, w) in out.entries.iter_mut().zip(adj.entries) {
            *z = (*z + w) * 0.5;
        }
        out
    }

    /// `max |A − B|` entrywise.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.ensure_same_shape(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    pub fn matvec(&self, v: &[C64]) -> Result<Vec<C64>> {
        let n = self.side();
        if v.len() != n {
            return Err(Error::VectorLength {
                len: v.len(),
                expected: n,
            });
        }
        Ok(self
            .rows()
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.ensure_same_shape(other)?;
        let n = self.side();
        let mut out = Self::zeros(self.dim_a, self.dim_b);
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    out.entries[r * n + c] += a * other.entries[k * n + c];
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.entries.iter_mut().for_each(|z| *z *= factor);
        out
    }

    /// Same matrix with different bipartite labels.
    pub fn with_dims(self, dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::new(dim_a, dim_b, self.entries)
    }

    pub(crate) fn ensure_same_shape(&self, other: &Self) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::ShapeMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(())
    }
}

fn zip_entries(a: &Operator, b: &Operator, f: impl Fn(C64, C64) -> C64) -> Operator {
    assert_eq!(a.dims(), b.dims(), "operator shapes differ");
    let mut out = a.clone();
    for (z, w) in out.entries.iter_mut().zip(&b.entries) {
        *z = f(*z, *w);
    }
    out
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        zip_entries(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        zip_entries(self, rhs, |x, y| x - y)
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: f64) -> Operator {
        self.scale(rhs)
    }
}

/// Free-function form of [`Operator::adjoint`].
pub fn adjoint(a: &Operator) -> Operator {
    a.adjoint()
}

/// Free-function form of [`Operator::partial_transpose_b`].
pub fn partial_transpose_b(a: &Operator) -> Operator {
    a.partial_transpose_b()
}

/// Kronecker product of two local vectors; component `dB·i + j` is `u_i·v_j`.
pub fn tensor(u: &[C64], v: &[C64]) -> Vec<C64> {
    u.iter()
        .flat_map(|&x| v.iter().map(move |&y| x * y))
        .collect()
}

pub fn norm(v: &[C64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// `⟨u|v⟩`, antilinear in the first argument.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(x, y)| x.conj() * y).sum()
}

/// Returns `v/‖v‖`, or `None` for the zero vector.
pub fn normalized(v: &[C64]) -> Option<Vec<C64>> {
    let n = norm(v);
    if n == 0.0 || !n.is_finite() {
        return None;
    }
    Some(v.iter().map(|z| z / n).collect())
}

/// Standard basis vector `e_index` in dimension `dim`.
pub fn basis_vector(dim: usize, index: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[index] = C64::new(1.0, 0.0);
    v
}

/// `⟨v|A|v⟩` for Hermitian `A` and unit `v`.
pub fn expectation(a: &Operator, v: &[C64]) -> Result<f64> {
    let n = norm(v);
    if (n - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm: n });
    }
    Ok(quadratic_form(a, v)?.re)
}

/// `⟨v|A|v⟩` without any normalisation requirement.
pub(crate) fn quadratic_form(a: &Operator, v: &[C64]) -> Result<C64> {
    let av = a.matvec(v)?;
    Ok(inner(v, &av))
}

/// `Tr(A·B) = Σ_{r,c} A[r,c]·B[c,r]`, without forming the product.
pub fn trace_product(a: &Operator, b: &Operator) -> Result<C64> {
    a.ensure_same_shape(b)?;
    let n = a.side();
    let mut acc = C64::new(0.0, 0.0);
    for r in 0..n {
        for c in 0..n {
            acc += a.entries[r * n + c] * b.entries[c * n + r];
        }
    }
    Ok(acc)
}
