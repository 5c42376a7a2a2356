//! Exact-arithmetic checks for Yang–Baxter operators and the flatness of the
//! quadratic algebras, quantum semigroups and tower algebras they define.
//!
//! Everything is computed over ℚ or the rational-function field ℚ(q); no
//! floating point is involved, so every dimension reported is certified.

pub mod catalog;
pub mod field;
pub mod linalg;
pub mod quadratic;
pub mod scalars;
pub mod semigroup;
pub mod symmetry;
pub mod tensor;
pub mod tower;

pub use field::Field;
pub use linalg::{Matrix, Subspace};
pub use scalars::{parse_scalar, Poly, RatFun, Rational};
