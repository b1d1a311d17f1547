//! The qutrit-qutrit state family `ρ_a`, product vectors and closed-form
//! kernel vectors.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{self, basis_vector, Operator, C64};
use crate::{Error, Result};

const DIM: usize = 3;

/// The family parameter `a`, strictly inside `(0, 1)`.
///
/// `a = 0` degenerates the state and `a = 1` makes `d` singular, so both
/// endpoints are rejected.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct StateParameter(f64);

impl StateParameter {
    pub fn new(a: f64) -> Result<Self> {
        if a.is_finite() && a > 0.0 && a < 1.0 {
            Ok(Self(a))
        } else {
            Err(Error::ParameterOutOfRange(a))
        }
    }

    pub fn a(self) -> f64 {
        self.0
    }

    /// `1/(8a+1)`, the overall normalisation of `ρ_a`.
    pub fn normalization(self) -> f64 {
        1.0 / (8.0 * self.0 + 1.0)
    }

    /// `c = √(1−a²)/(1+a)`.
    pub fn c(self) -> f64 {
        libm::sqrt(1.0 - self.0 * self.0) / (1.0 + self.0)
    }

    /// `d = √(1−a²)/(a−1)`. Negative on `(0,1)`, with `|d| = √((1+a)/(1−a))`.
    pub fn d(self) -> f64 {
        libm::sqrt(1.0 - self.0 * self.0) / (self.0 - 1.0)
    }

    /// Weight `a/(8a+1)` of `|12⟩⟨12|` inside `ρ_a`.
    pub fn subtraction_weight(self) -> f64 {
        self.0 * self.normalization()
    }

    /// Closed-form `ε = a²/(8a+1)²` quoted alongside the witness.
    pub fn closed_form_epsilon(self) -> f64 {
        let w = self.subtraction_weight();
        w * w
    }

    /// Closed-form negative eigenvalue `(1−√5)/2 · a/(8a+1)` left after
    /// removing `|12⟩⟨12|` and partially transposing.
    pub fn subtraction_eigenvalue(self) -> f64 {
        0.5 * (1.0 - libm::sqrt(5.0)) * self.subtraction_weight()
    }
}

impl TryFrom<f64> for StateParameter {
    type Error = Error;

    fn try_from(a: f64) -> Result<Self> {
        Self::new(a)
    }
}

/// `ρ_a` on `C³ ⊗ C³`.
pub fn build_rho(p: StateParameter) -> Operator {
    let a = p.a();
    let mut m = [[0.0f64; 9]; 9];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = a;
    }
    for &i in &[0, 4, 8] {
        for &j in &[0, 4, 8] {
            m[i][j] = a;
        }
    }
    let diag = 0.5 * (1.0 + a);
    let off = 0.5 * libm::sqrt(1.0 - a * a);
    m[6][6] = diag;
    m[8][8] = diag;
    m[6][8] = off;
    m[8][6] = off;

    let scale = p.normalization();
    let entries = m
        .iter()
        .flatten()
        .map(|&x| C64::new(x * scale, 0.0))
        .collect();
    Operator::new(DIM, DIM, entries).expect("ρ_a is a finite 9×9 matrix")
}

/// Projector onto `(|00⟩ + |11⟩ + … )/√d` on `C^d ⊗ C^d`.
pub fn maximally_entangled_projector(dim: usize) -> Operator {
    let mut psi = vec![C64::new(0.0, 0.0); dim * dim];
    let amp = 1.0 / libm::sqrt(dim as f64);
    for i in 0..dim {
        psi[dim * i + i] = C64::new(amp, 0.0);
    }
    Operator::outer(dim, dim, &psi).expect("length matches")
}

/// A product vector `|e⟩ ⊗ |f⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductVector {
    pub e: Vec<C64>,
    pub f: Vec<C64>,
}

impl ProductVector {
    pub fn new(e: Vec<C64>, f: Vec<C64>) -> Self {
        Self { e, f }
    }

    /// Computational basis product `|i⟩ ⊗ |j⟩`.
    pub fn basis(dim_a: usize, dim_b: usize, i: usize, j: usize) -> Self {
        Self::new(basis_vector(dim_a, i), basis_vector(dim_b, j))
    }

    pub fn from_real(e: &[f64], f: &[f64]) -> Self {
        let lift = |v: &[f64]| v.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::new(lift(e), lift(f))
    }

    /// Both factors rescaled to unit norm; `None` if either is zero.
    pub fn normalized(&self) -> Option<Self> {
        Some(Self::new(
            linalg::normalized(&self.e)?,
            linalg::normalized(&self.f)?,
        ))
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (linalg::norm(&self.e) - 1.0).abs() <= tol && (linalg::norm(&self.f) - 1.0).abs() <= tol
    }

    pub fn tensor(&self) -> Vec<C64> {
        linalg::tensor(&self.e, &self.f)
    }

    /// `|e, f*⟩`: conjugation on the second factor only.
    pub fn conjugate_partner(&self) -> Self {
        Self::new(self.e.clone(), self.f.iter().map(|z| z.conj()).collect())
    }

    /// Same vector with independent global phases on each factor.
    pub fn with_phases(&self, phase_e: f64, phase_f: f64) -> Self {
        let pe = C64::from_polar(1.0, phase_e);
        let pf = C64::from_polar(1.0, phase_f);
        Self::new(
            self.e.iter().map(|z| z * pe).collect(),
            self.f.iter().map(|z| z * pf).collect(),
        )
    }
}

/// Free-function form of [`ProductVector::conjugate_partner`].
pub fn conjugate_partner(v: &ProductVector) -> ProductVector {
    v.conjugate_partner()
}

/// Closed-form, unnormalised kernel vectors of `ρ_a` and `ρ_a^{T_B}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormKernels {
    /// `|00⟩ + c|20⟩ − |22⟩` and `|11⟩ + c|20⟩ − |22⟩`.
    pub rho: Vec<Vec<C64>>,
    /// `−d|02⟩ + d|20⟩ + |22⟩`, `−|12⟩ + |21⟩` and `−|01⟩ + |10⟩`.
    pub partial_transpose: Vec<Vec<C64>>,
}

pub fn closed_form_kernel_vectors(p: StateParameter) -> ClosedFormKernels {
    let (c, d) = (p.c(), p.d());
    let ket = |terms: &[(usize, usize, f64)]| {
        let mut v = vec![C64::new(0.0, 0.0); DIM * DIM];
        for &(i, j, w) in terms {
            v[DIM * i + j] += C64::new(w, 0.0);
        }
        v
    };
    ClosedFormKernels {
        rho: vec![
            ket(&[(0, 0, 1.0), (2, 0, c), (2, 2, -1.0)]),
            ket(&[(1, 1, 1.0), (2, 0, c), (2, 2, -1.0)]),
        ],
        partial_transpose: vec![
            ket(&[(0, 2, -d), (2, 0, d), (2, 2, 1.0)]),
            ket(&[(1, 2, -1.0), (2, 1, 1.0)]),
            ket(&[(0, 1, -1.0), (1, 0, 1.0)]),
        ],
    }
}
