//! The quantum semigroup `M(V; I_1, …, I_n)`: its relation space inside
//! `End(V)^⊗2`, built two ways, and its homogeneous dimensions.
//!
//! `End(V) ≅ V ⊗ V*` with `e_ij` ordered row-major, so a vector in
//! `End(V)^⊗2` is indexed by `(i1, j1, i2, j2)`.

use crate::field::Field;
use crate::linalg::{image, Matrix, Subspace};
use crate::quadratic::{hilbert_dims, HilbertTable, QuadraticError, QuadraticPresentation, ResourceLimits};
use crate::symmetry::Symmetry;
use crate::tensor::{annihilator, shuffle_23_permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Perp,
    Commutator,
}

impl Construction {
    pub fn as_str(self) -> &'static str {
        match self {
            Construction::Perp => "perp-construction",
            Construction::Commutator => "commutator-construction",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupPresentation<F> {
    pub n: usize,
    pub relations: Subspace<F>,
    pub source: Construction,
}

/// `σ_{2,3}(Σ_i I_i ⊗ I_i^⊥)`.
pub fn relations_perp<F: Field>(sym: &Symmetry<F>) -> SemigroupPresentation<F> {
    let n = sym.n();
    let mut acc = Subspace::zero(n.pow(4));
    for space in sym.eigenspaces() {
        let term = space.tensor(&annihilator(space));
        acc = acc.sum(&term).expect("all terms live in (V⊗V)⊗(V*⊗V*)");
    }
    let relations = acc.permute_coordinates(&shuffle_23_permutation(n)).expect("n⁴ coordinates");
    SemigroupPresentation { n, relations, source: Construction::Perp }
}

/// Image of `X ↦ SX - XS` on `End(V⊗V) = End(V)^⊗2`.
pub fn relations_commutator<F: Field>(sym: &Symmetry<F>) -> SemigroupPresentation<F> {
    let n = sym.n();
    let s = sym.matrix();
    let id = Matrix::identity(n * n);
    // row-major vec(SX) = (S ⊗ 1) vec X, vec(XS) = (1 ⊗ Sᵀ) vec X
    let map = &s.kron(&id) - &id.kron(&s.transpose());
    let raw = image(&map);
    // raw coordinates are (i1, i2, j1, j2); regroup factor-wise
    let relations = raw.permute_coordinates(&shuffle_23_permutation(n)).expect("n⁴ coordinates");
    SemigroupPresentation { n, relations, source: Construction::Commutator }
}

/// Expected relation dimension `Σ_i dim I_i · (n² - dim I_i)`.
pub fn expected_relation_dim<F: Field>(sym: &Symmetry<F>) -> usize {
    let nn = sym.n() * sym.n();
    sym.eigenspace_dims().iter().map(|d| d * (nn - d)).sum()
}

/// Hilbert dimensions of the quadratic algebra on the `n²` generators `t_ij`.
pub fn semigroup_dims<F: Field>(
    p: &SemigroupPresentation<F>,
    max_degree: usize,
    limits: ResourceLimits,
) -> Result<HilbertTable, QuadraticError> {
    hilbert_dims(&QuadraticPresentation::new(p.relations.clone())?, max_degree, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_get;
    use crate::scalars::{RatFun, Rational};
    use crate::symmetry::{eigen_decompose, SymmetryKind};

    #[test]
    fn flip2_constructions_agree() {
        let s = catalog_get("flip2").unwrap().symmetry().unwrap();
        let a = relations_perp(&s);
        let b = relations_commutator(&s);
        assert_eq!(a.relations, b.relations);
        assert_eq!(a.relations.dim(), 6);
        assert_eq!(expected_relation_dim(&s), 6);
    }

    #[test]
    fn glq2_constructions_agree() {
        let s = catalog_get("glq2").unwrap().symmetry().unwrap();
        let a = relations_perp(&s);
        assert_eq!(a.relations, relations_commutator(&s).relations);
        assert_eq!(a.relations.dim(), 6);
        let t = semigroup_dims(&a, 2, ResourceLimits::default()).unwrap();
        assert_eq!(t.dims, vec![1, 4, 10]);
    }

    #[test]
    fn commuting_matrix_entries() {
        let s = catalog_get("flip2").unwrap().symmetry().unwrap();
        let rel = relations_perp(&s).relations;
        // t_11 t_22 - t_22 t_11: generators t_ij at index 2i + j
        let mut v = vec![RatFun::zero(); 16];
        v[3] = RatFun::one();
        v[12] = RatFun::from_int(-1);
        assert!(rel.contains(&v));
    }

    #[test]
    fn scalar_operator_has_no_relations() {
        let id = Matrix::<Rational>::identity(4);
        let s = eigen_decompose(&id, 2, &[Rational::from_int(1)], SymmetryKind::GenericYb).unwrap();
        assert!(relations_perp(&s).relations.is_zero());
        assert!(relations_commutator(&s).relations.is_zero());
        let t = semigroup_dims(&relations_perp(&s), 2, ResourceLimits::default()).unwrap();
        assert_eq!(t.dims, vec![1, 4, 16]);
    }

    #[test]
    fn guard_on_large_degree() {
        let s = catalog_get("flip3").unwrap().symmetry().unwrap();
        let p = relations_perp(&s);
        assert!(matches!(semigroup_dims(&p, 5, ResourceLimits::default()), Err(QuadraticError::ResourceGuard { .. })));
    }
}
