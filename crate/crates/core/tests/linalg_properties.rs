mod common;

use common::{charpoly_roots, random_hermitian, random_matrix, rng};
use ewit_core::linalg::{self, hermitian_eig, null_space, projector_onto, trace_product, Operator, C64};
use ewit_core::states::{build_rho, StateParameter};
use proptest::prelude::*;

fn residual_ok(a: &Operator) {
    let d = hermitian_eig(a).unwrap();
    let bound = 1e-10 * a.max_abs().max(1.0);
    for (lambda, v) in d.eigenvalues.iter().zip(&d.eigenvectors) {
        let av = a.matvec(v).unwrap();
        let r: Vec<C64> = av.iter().zip(v).map(|(x, y)| x - y * *lambda).collect();
        assert!(linalg::norm(&r) <= bound, "residual {}", linalg::norm(&r));
    }
    for (i, u) in d.eigenvectors.iter().enumerate() {
        for (j, w) in d.eigenvectors.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!((linalg::inner(u, w) - C64::new(expected, 0.0)).norm() <= 1e-10);
        }
    }
    assert!(d.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    let sum: f64 = d.eigenvalues.iter().sum();
    assert!((sum - a.trace().re).abs() <= bound);
    let rebuilt = d.reconstruct(a.dim_a(), a.dim_b());
    assert!(rebuilt.max_abs_diff(a).unwrap() <= bound);
}

#[test]
fn random_hermitian_9x9_decompositions() {
    let mut r = rng(2024);
    for _ in 0..100 {
        residual_ok(&random_hermitian(&mut r, 3, 3));
    }
}

#[test]
fn degenerate_and_scaled_spectra() {
    residual_ok(&Operator::identity(4, 4));
    residual_ok(&build_rho(StateParameter::new(0.5).unwrap()));
    residual_ok(&build_rho(StateParameter::new(0.5).unwrap()).partial_transpose_b());
    let mut r = rng(5);
    residual_ok(&random_hermitian(&mut r, 4, 4).scale(1e6));
    residual_ok(&random_hermitian(&mut r, 2, 2).scale(1e-9));
}

#[test]
fn small_matrices_match_characteristic_polynomial() {
    let mut r = rng(77);
    for dim in [2, 3] {
        for _ in 0..200 {
            let m = random_hermitian(&mut r, dim, 1);
            let expected = charpoly_roots(&m);
            assert_eq!(expected.len(), dim, "root finder lost a root");
            let jacobi = hermitian_eig(&m).unwrap().eigenvalues;
            let closed = linalg::small_hermitian_eigenvalues(m.entries(), dim).unwrap();
            for ((x, y), z) in jacobi.iter().zip(&expected).zip(&closed) {
                assert!((x - y).abs() <= 1e-10, "jacobi {x} vs charpoly {y}");
                assert!((z - y).abs() <= 1e-10, "closed form {z} vs charpoly {y}");
            }
        }
    }
}

#[test]
fn golden_block_from_quadratic_formula() {
    for a in [0.05, 0.5, 0.9] {
        let m = Operator::from_real(2, 1, &[0.0, a, a, a]).unwrap();
        let got = hermitian_eig(&m).unwrap().eigenvalues;
        // λ² − aλ − a² = 0
        let disc = (a * a + 4.0 * a * a).sqrt();
        assert!((got[0] - (a - disc) / 2.0).abs() < 1e-14);
        assert!((got[1] - (a + disc) / 2.0).abs() < 1e-14);
    }
}

#[test]
fn adjoint_of_rho_is_rho() {
    for a in [0.1, 0.5, 0.9] {
        let rho = build_rho(StateParameter::new(a).unwrap());
        assert_eq!(rho.adjoint(), rho);
    }
}

#[test]
fn rho_projector_annihilates() {
    let rho = build_rho(StateParameter::new(0.5).unwrap());
    let k = null_space(&rho, 1e-9).unwrap();
    assert_eq!(k.dim(), 2);
    let p = projector_onto(&k);
    assert!(p.matmul(&rho).unwrap().max_abs() < 1e-12);
    assert!(p.matmul(&p).unwrap().max_abs_diff(&p).unwrap() < 1e-12);
    assert!((p.trace().re - 2.0).abs() < 1e-12);
    for v in &k.vectors {
        let pv = p.matvec(v).unwrap();
        let d: Vec<C64> = pv.iter().zip(v).map(|(x, y)| x - y).collect();
        assert!(linalg::norm(&d) < 1e-12);
    }
    assert!(trace_product(&p, &rho).unwrap().norm() <= 1e-12);

    let pt = rho.partial_transpose_b();
    let q = projector_onto(&null_space(&pt, 1e-9).unwrap());
    assert!(trace_product(&q.partial_transpose_b(), &rho).unwrap().norm() <= 1e-12);
    assert!(trace_product(&Operator::identity(3, 3), &rho).unwrap().re - 1.0 < 1e-14);
}

#[test]
fn expectation_examples() {
    let rho = build_rho(StateParameter::new(0.5).unwrap());
    let v = linalg::tensor(&linalg::basis_vector(3, 1), &linalg::basis_vector(3, 2));
    assert!((linalg::expectation(&rho, &v).unwrap() - 0.1).abs() < 1e-15);
}

fn arb_matrix(dim_a: usize, dim_b: usize) -> impl Strategy<Value = Operator> {
    let n = dim_a * dim_b;
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
        Operator::new(dim_a, dim_b, v.into_iter().map(|(re, im)| C64::new(re, im)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn partial_transpose_is_trace_preserving_involution(m in arb_matrix(3, 3)) {
        let pt = m.partial_transpose_b();
        prop_assert!(pt.partial_transpose_b().max_abs_diff(&m).unwrap() <= 1e-14);
        prop_assert!((pt.trace() - m.trace()).norm() <= 1e-12);
        prop_assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn partial_transpose_on_2x3(m in arb_matrix(2, 3)) {
        prop_assert_eq!(m.partial_transpose_b().partial_transpose_b(), m);
    }

    #[test]
    fn trace_product_matches_full_product(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, 3, 3);
        let b = random_matrix(&mut r, 3, 3);
        let full = a.matmul(&b).unwrap().trace();
        prop_assert!((trace_product(&a, &b).unwrap() - full).norm() <= 1e-12);
        let h = random_hermitian(&mut r, 3, 3);
        let k = random_hermitian(&mut r, 3, 3);
        prop_assert!((trace_product(&h, &k).unwrap() - trace_product(&k, &h).unwrap()).norm() <= 1e-12);
    }
}
