#![allow(dead_code, clippy::needless_range_loop)]

use ewit_core::{Operator, C64};
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random Hermitian matrix with entries of order one.
pub fn random_hermitian(rng: &mut StdRng, dim_a: usize, dim_b: usize) -> Operator {
    let n = dim_a * dim_b;
    let mut m = Operator::zeros(dim_a, dim_b);
    for r in 0..n {
        m.set(r, r, C64::new(rng.gen_range(-1.0..1.0), 0.0));
        for c in r + 1..n {
            let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m.set(r, c, z);
            m.set(c, r, z.conj());
        }
    }
    m
}

pub fn random_matrix(rng: &mut StdRng, dim_a: usize, dim_b: usize) -> Operator {
    let n = dim_a * dim_b;
    let entries = (0..n * n)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Operator::new(dim_a, dim_b, entries).unwrap()
}

/// Real roots of the characteristic polynomial of a 2×2 or 3×3 Hermitian
/// matrix, by the quadratic formula or sign-change bisection on the cubic.
pub fn charpoly_roots(m: &Operator) -> Vec<f64> {
    let n = m.side();
    let g = |r: usize, c: usize| m.get(r, c);
    match n {
        2 => {
            let tr = g(0, 0).re + g(1, 1).re;
            let det = g(0, 0).re * g(1, 1).re - g(0, 1).norm_sqr();
            let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
            vec![(tr - disc) / 2.0, (tr + disc) / 2.0]
        }
        3 => {
            // λ³ − t λ² + s λ − det
            let t = g(0, 0).re + g(1, 1).re + g(2, 2).re;
            let s = g(0, 0).re * g(1, 1).re + g(0, 0).re * g(2, 2).re + g(1, 1).re * g(2, 2).re
                - g(0, 1).norm_sqr()
                - g(0, 2).norm_sqr()
                - g(1, 2).norm_sqr();
            let det = g(0, 0).re * (g(1, 1).re * g(2, 2).re - g(1, 2).norm_sqr())
                - (g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))).re
                + (g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))).re;
            let p = |x: f64| ((x - t) * x + s) * x - det;
            let bound = 1.0 + (0..3).flat_map(|r| (0..3).map(move |c| (r, c))).map(|(r, c)| g(r, c).norm()).sum::<f64>();
            let steps = 20_000;
            let mut roots = Vec::new();
            let mut x0 = -bound;
            let mut p0 = p(x0);
            for k in 1..=steps {
                let x1 = -bound + 2.0 * bound * k as f64 / steps as f64;
                let p1 = p(x1);
                if p0 == 0.0 {
                    roots.push(x0);
                } else if p0 * p1 < 0.0 {
                    let (mut lo, mut hi) = (x0, x1);
                    for _ in 0..200 {
                        let mid = 0.5 * (lo + hi);
                        if p(lo) * p(mid) <= 0.0 {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                    roots.push(0.5 * (lo + hi));
                }
                x0 = x1;
                p0 = p1;
            }
            roots
        }
        _ => unimplemented!("only 2×2 and 3×3"),
    }
}

pub fn quadratic_form(a: &Operator, v: &[C64]) -> f64 {
    let n = a.side();
    let mut acc = C64::new(0.0, 0.0);
    for r in 0..n {
        for c in 0..n {
            acc += v[r].conj() * a.get(r, c) * v[c];
        }
    }
    acc.re
}

/// Near-uniform points on the unit 2-sphere (Fibonacci lattice).
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Minimum of `⟨e,f|A|e,f⟩` over all pairs of real unit vectors from an
/// `n×n` Fibonacci-lattice grid on `S² × S²`.
pub fn real_product_grid_min(a: &Operator, n: usize) -> f64 {
    let pts = fibonacci_sphere(n);
    let mut best = f64::INFINITY;
    for f in &pts {
        // reduced matrix on the first factor, built from scratch
        let mut m = [[0.0f64; 3]; 3];
        for i in 0..3 {
            for k in 0..3 {
                let mut acc = 0.0;
                for j in 0..3 {
                    for l in 0..3 {
                        acc += f[j] * a.get(3 * i + j, 3 * k + l).re * f[l];
                    }
                }
                m[i][k] = acc;
            }
        }
        for e in &pts {
            let mut v = 0.0;
            for i in 0..3 {
                for k in 0..3 {
                    v += e[i] * m[i][k] * e[k];
                }
            }
            best = best.min(v);
        }
    }
    best
}
