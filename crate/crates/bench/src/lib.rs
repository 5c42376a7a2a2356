//! Fixtures shared by the criterion benches.

use ybx_core::catalog::glq;
use ybx_core::quadratic::QuadraticPresentation;
use ybx_core::symmetry::Symmetry;
use ybx_core::{Matrix, RatFun, Rational};

/// Dense integer matrix with a fixed pseudo-random pattern.
pub fn dense_rational(rows: usize, cols: usize) -> Matrix<Rational> {
    let data = (0..rows * cols).map(|i| Rational::from_integer((((i * 7919) % 13) as i64 - 6).into())).collect();
    Matrix::from_vec(rows, cols, data).unwrap()
}

pub fn glq_matrix(n: usize) -> Matrix<RatFun> {
    glq(n)
}

pub fn glq_symmetry(n: usize) -> Symmetry {
    ybx_core::catalog::catalog_get(&format!("glq{n}")).unwrap().symmetry().unwrap()
}

/// Polynomial algebra relations of `glq(n)` over `ℚ(q)`.
pub fn quantum_polynomial(n: usize) -> QuadraticPresentation<RatFun> {
    QuadraticPresentation::new(glq_symmetry(n).complement(0)).unwrap()
}
