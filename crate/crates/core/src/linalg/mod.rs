//! Exact dense linear algebra over any [`Field`](crate::field::Field).

mod matrix;
mod spectral;
mod subspace;

pub use matrix::Matrix;
pub use spectral::{lk_decomposition, minimal_polynomial, LkDecomposition};
pub use subspace::{image, is_direct_sum, kernel, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
}
