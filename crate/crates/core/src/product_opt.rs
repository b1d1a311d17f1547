//! Minimisation of `⟨e,f|A|e,f⟩` over normalised product vectors.
//!
//! [`min_over_products`] runs a multistart see-saw: with `f` fixed the
//! objective is the quadratic form of the reduced `dA×dA` matrix
//! `M_f[i,k] = Σ_{j,l} f_j* A[(i,j),(k,l)] f_l`, minimised exactly by its
//! lowest eigenvector; then the roles swap. Each half-step is a global
//! minimisation over one block, so the objective never increases.
//!
//! [`grid_oracle`] is an independent upper bound built from seeded random
//! product vectors.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{self, hermitian_eig, small_hermitian_eigenvalues, Operator, C64};
use crate::states::ProductVector;
use crate::{Error, Result};

/// Multistart see-saw settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub n_starts: usize,
    /// Maximum number of full (e then f) iterations per start.
    pub max_iters: usize,
    /// A start has converged once a full iteration changes the value by
    /// less than this.
    pub conv_tol: f64,
    pub rng_seed: u64,
    /// Sample count for [`grid_oracle`]; `0` disables the oracle where it is
    /// optional.
    pub oracle_points: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            n_starts: 50,
            max_iters: 500,
            conv_tol: 1e-12,
            rng_seed: 42,
            oracle_points: 1_000_000,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_starts == 0 {
            return Err(Error::InvalidConfig("n_starts must be at least 1"));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1"));
        }
        if !(self.conv_tol > 0.0 && self.conv_tol.is_finite()) {
            return Err(Error::InvalidConfig("conv_tol must be positive and finite"));
        }
        Ok(())
    }
}

/// Best product vector found over all starts.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductMinResult {
    /// `⟨e,f|A|e,f⟩` evaluated at `argmin`.
    pub value: f64,
    pub argmin: ProductVector,
    /// Full iterations spent by the winning start.
    pub iterations_used: usize,
    pub starts_converged: usize,
    /// Index of the winning start.
    pub best_start: usize,
}

/// Result of a single see-saw descent.
#[derive(Debug, Clone, PartialEq)]
pub struct StartOutcome {
    pub start: usize,
    pub value: f64,
    pub argmin: ProductVector,
    pub iterations: usize,
    pub converged: bool,
}

/// `M_f[i,k] = Σ_{j,l} f_j* A[(i,j),(k,l)] f_l`, as a `dA×1` operator.
pub fn reduce_to_first(a: &Operator, f: &[C64]) -> Result<Operator> {
    let (da, db) = a.dims();
    check_len(f, db)?;
    let mut weights = vec![C64::new(0.0, 0.0); db * db];
    for j in 0..db {
        for l in 0..db {
            weights[j * db + l] = f[j].conj() * f[l];
        }
    }
    let mut out = Operator::zeros(da, 1);
    for i in 0..da {
        for k in i..da {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..db {
                for l in 0..db {
                    acc += a.get(db * i + j, db * k + l) * weights[j * db + l];
                }
            }
            set_hermitian(&mut out, i, k, acc);
        }
    }
    Ok(out)
}

/// `N_e[j,l] = Σ_{i,k} e_i* A[(i,j),(k,l)] e_k`, as a `dB×1` operator.
pub fn reduce_to_second(a: &Operator, e: &[C64]) -> Result<Operator> {
    let (da, db) = a.dims();
    check_len(e, da)?;
    let mut weights = vec![C64::new(0.0, 0.0); da * da];
    for i in 0..da {
        for k in 0..da {
            weights[i * da + k] = e[i].conj() * e[k];
        }
    }
    let mut out = Operator::zeros(db, 1);
    for j in 0..db {
        for l in j..db {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..da {
                for k in 0..da {
                    acc += a.get(db * i + j, db * k + l) * weights[i * da + k];
                }
            }
            set_hermitian(&mut out, j, l, acc);
        }
    }
    Ok(out)
}

fn set_hermitian(m: &mut Operator, r: usize, c: usize, z: C64) {
    if r == c {
        m.set(r, r, C64::new(z.re, 0.0));
    } else {
        m.set(r, c, z);
        m.set(c, r, z.conj());
    }
}

fn check_len(v: &[C64], expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::VectorLength {
            len: v.len(),
            expected,
        });
    }
    Ok(())
}

/// Lowest eigenpair of a small Hermitian matrix with a reproducible choice of
/// eigenvector.
///
/// Every candidate is phase-fixed so its first non-negligible component is
/// real positive. When the lowest eigenvalue is degenerate, the candidate
/// with the lexicographically largest real parts wins.
pub fn minimal_eigenvector(m: &Operator) -> Result<(f64, Vec<C64>)> {
    let decomp = hermitian_eig(m)?;
    let lowest = decomp.min_eigenvalue();
    let tie = 1e-12 * decomp.max_abs_eigenvalue().max(1.0);
    let best = decomp
        .eigenvalues
        .iter()
        .zip(&decomp.eigenvectors)
        .take_while(|(lambda, _)| **lambda <= lowest + tie)
        .map(|(_, v)| phase_fixed(v))
        .max_by(|x, y| lexicographic_re(x, y))
        .expect("non-empty spectrum");
    Ok((lowest, best))
}

fn phase_fixed(v: &[C64]) -> Vec<C64> {
    let scale = linalg::norm(v);
    match v.iter().find(|z| z.norm() > 1e-12 * scale) {
        Some(pivot) => {
            let phase = pivot.conj() / pivot.norm();
            v.iter().map(|z| z * phase).collect()
        }
        None => v.to_vec(),
    }
}

fn lexicographic_re(x: &[C64], y: &[C64]) -> Ordering {
    for (a, b) in x.iter().zip(y) {
        match a.re.total_cmp(&b.re) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn gaussian_unit(rng: &mut ChaCha8Rng, dim: usize, complex: bool) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = if complex { StandardNormal.sample(rng) } else { 0.0 };
                C64::new(re, im)
            })
            .collect();
        if let Some(u) = linalg::normalized(&v) {
            return u;
        }
    }
}

/// Random unit product vector for start `index`, drawn from its own ChaCha
/// stream so that starts are independent of evaluation order.
pub fn random_start(seed: u64, index: usize, dim_a: usize, dim_b: usize) -> ProductVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let e = gaussian_unit(&mut rng, dim_a, true);
    let f = gaussian_unit(&mut rng, dim_b, true);
    ProductVector::new(e, f)
}

/// See-saw descent from `start`. `observer` receives the objective after
/// every half-step.
pub fn descend(
    a: &Operator,
    start: ProductVector,
    max_iters: usize,
    conv_tol: f64,
    mut observer: impl FnMut(f64),
) -> Result<(ProductVector, usize, bool)> {
    let ProductVector { mut e, mut f } = start;
    let mut previous = linalg::quadratic_form(a, &linalg::tensor(&e, &f))?.re;
    observer(previous);
    for iter in 1..=max_iters {
        let (value, new_e) = minimal_eigenvector(&reduce_to_first(a, &f)?)?;
        e = new_e;
        observer(value);
        let (value, new_f) = minimal_eigenvector(&reduce_to_second(a, &e)?)?;
        f = new_f;
        observer(value);
        if (previous - value).abs() < conv_tol {
            return Ok((ProductVector::new(e, f), iter, true));
        }
        previous = value;
    }
    Ok((ProductVector::new(e, f), max_iters, false))
}

/// One start of the multistart search. Exposed so callers can distribute
/// starts across threads and recombine with [`combine_starts`].
pub fn run_start(a: &Operator, cfg: &OptimizerConfig, index: usize) -> Result<StartOutcome> {
    let start = random_start(cfg.rng_seed, index, a.dim_a(), a.dim_b());
    let (argmin, iterations, converged) = descend(a, start, cfg.max_iters, cfg.conv_tol, |_| {})?;
    let value = linalg::expectation(a, &argmin.tensor())?;
    Ok(StartOutcome {
        start: index,
        value,
        argmin,
        iterations,
        converged,
    })
}

/// Order-independent reduction: lowest value wins, ties go to the lower
/// start index.
pub fn combine_starts(outcomes: impl IntoIterator<Item = StartOutcome>) -> Option<ProductMinResult> {
    let mut converged = 0;
    let mut best: Option<StartOutcome> = None;
    for outcome in outcomes {
        converged += usize::from(outcome.converged);
        let better = match &best {
            None => true,
            Some(b) => match outcome.value.total_cmp(&b.value) {
                Ordering::Less => true,
                Ordering::Equal => outcome.start < b.start,
                Ordering::Greater => false,
            },
        };
        if better {
            best = Some(outcome);
        }
    }
    best.map(|b| ProductMinResult {
        value: b.value,
        argmin: b.argmin,
        iterations_used: b.iterations,
        starts_converged: converged,
        best_start: b.start,
    })
}

/// Multistart see-saw minimum of `⟨e,f|A|e,f⟩` over unit product vectors.
///
/// Non-convergence is not an error: the best value found is returned and
/// `starts_converged` says how many starts met `conv_tol`.
pub fn min_over_products(a: &Operator, cfg: &OptimizerConfig) -> Result<ProductMinResult> {
    cfg.validate()?;
    a.ensure_hermitian()?;
    let outcomes = (0..cfg.n_starts)
        .map(|i| run_start(a, cfg, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(combine_starts(outcomes).expect("n_starts ≥ 1"))
}

/// Upper bound on the product minimum from `n_points` seeded random samples.
///
/// Each sample draws one local factor (alternating between the two factors,
/// and between complex Gaussian and real Gaussian directions) and pairs it
/// with the exact best partner for that factor, taken from the
/// characteristic polynomial of the reduced matrix. Every sample is thus the
/// value of a concrete product vector. `n_points = 0` returns `+∞`.
pub fn grid_oracle(a: &Operator, n_points: usize, rng_seed: u64) -> Result<f64> {
    a.ensure_hermitian()?;
    let (da, db) = a.dims();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed ^ 0x6f72_6163_6c65);
    let mut best = f64::INFINITY;
    for k in 0..n_points {
        let complex = k % 4 < 2;
        let reduced = if k % 2 == 0 {
            let f = gaussian_unit(&mut rng, db, complex);
            reduce_to_first(a, &f)?
        } else {
            let e = gaussian_unit(&mut rng, da, complex);
            reduce_to_second(a, &e)?
        };
        let lowest = match small_hermitian_eigenvalues(reduced.entries(), reduced.side()) {
            Some(values) => values[0],
            None => hermitian_eig(&reduced)?.min_eigenvalue(),
        };
        best = best.min(lowest);
    }
    Ok(best)
}
