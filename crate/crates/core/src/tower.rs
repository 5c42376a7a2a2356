//! The tower algebras `A_k(S) ⊂ End(V^⊗k)` generated by `S_1, …, S_{k-1}`,
//! their trace-form semisimplicity certificates, and the check that their
//! dimensions do not move under `q → 1`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::linalg::{LinalgError, Matrix};
use crate::scalars::{RatFun, Rational};
use crate::symmetry::{specialize_matrix, Symmetry, SymmetryError};
use crate::tensor::{place, PlacementSpec, TensorError};

/// Default cap on the side `n^k` of the matrices being multiplied.
pub const DEFAULT_MAX_MATRIX_DIM: usize = 81;

/// Seed for the random specialization point unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 0x5EED;

const RANDOM_POINT_TRIES: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error("End(V^⊗{k}) has matrices of size {size}, over the bound {bound} (raise it with --max-ambient)")]
    ResourceGuard { k: usize, size: usize, bound: usize },
    #[error("tower degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("generators must be square matrices of size {expected}")]
    Shape { expected: usize },
    #[error("no usable random point found in {RANDOM_POINT_TRIES} draws")]
    NoRandomPoint,
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Rows kept in echelon form for incremental membership tests.
struct Echelon<F> {
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Echelon<F> {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.minus(&c.times(r));
                }
            }
        }
        v
    }

    /// Insert if independent; returns the reduced, normalized vector.
    fn insert(&mut self, v: Vec<F>) -> Option<Vec<F>> {
        let v = self.reduce(v);
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = v[p].inverse().expect("nonzero pivot");
        let v: Vec<F> = v.iter().map(|x| x.times(&inv)).collect();
        self.rows.push((p, v.clone()));
        Some(v)
    }
}

fn to_matrix<F: Field>(size: usize, v: Vec<F>) -> Matrix<F> {
    Matrix::from_vec(size, size, v).expect("vectorized square matrix")
}

/// A unital algebra of `size × size` matrices with a linear basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAlgebra<F> {
    pub size: usize,
    pub basis: Vec<Matrix<F>>,
    /// Dimension after each closure round; the last entry repeats when the
    /// final round adds nothing.
    pub growth: Vec<usize>,
}

impl<F: Field> MatrixAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical (reduced row echelon) basis of the same span.
    pub fn canonical_basis(&self) -> Vec<Matrix<F>> {
        let rows: Vec<Vec<F>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        let span = crate::linalg::Subspace::span(self.size * self.size, rows).expect("uniform width");
        span.basis_vectors().into_iter().map(|v| to_matrix(self.size, v)).collect()
    }

    /// Residual of `x` after projecting onto the span; zero iff `x` lies in it.
    pub fn residual(&self, x: &Matrix<F>) -> Vec<F> {
        let mut e = Echelon::new();
        for b in &self.basis {
            e.insert(b.entries().to_vec());
        }
        e.reduce(x.entries().to_vec())
    }
}

/// Unital algebra generated by `generators`: start from `{1} ∪ generators`,
/// multiply each new element by every generator on the left, then on the
/// right, keep what is independent, and repeat until nothing is added.
pub fn generate_algebra<F: Field>(generators: &[Matrix<F>], size: usize) -> Result<MatrixAlgebra<F>, TowerError> {
    if generators.iter().any(|g| g.rows() != size || g.cols() != size) {
        return Err(TowerError::Shape { expected: size });
    }
    let mut echelon = Echelon::new();
    let mut basis = Vec::new();
    let mut frontier = Vec::new();
    for m in std::iter::once(Matrix::identity(size)).chain(generators.iter().cloned()) {
        if let Some(v) = echelon.insert(m.into_entries()) {
            let b = to_matrix(size, v);
            basis.push(b.clone());
            frontier.push(b);
        }
    }
    let mut growth = vec![basis.len()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for b in &frontier {
            let left = generators.iter().map(|g| g.matmul(b));
            let right = generators.iter().map(|g| b.matmul(g));
            for product in left.chain(right) {
                if let Some(v) = echelon.insert(product?.into_entries()) {
                    let m = to_matrix(size, v);
                    basis.push(m.clone());
                    next.push(m);
                }
            }
        }
        growth.push(basis.len());
        frontier = next;
    }
    Ok(MatrixAlgebra { size, basis, growth })
}

fn guard(n: usize, k: usize, max_matrix_dim: usize) -> Result<usize, TowerError> {
    if k < 2 {
        return Err(TowerError::DegreeTooSmall(k));
    }
    let size = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > max_matrix_dim as u128 {
        return Err(TowerError::ResourceGuard {
            k,
            size: size.min(usize::MAX as u128) as usize,
            bound: max_matrix_dim,
        });
    }
    Ok(size as usize)
}

/// `S_1, …, S_{k-1}` acting on `V^⊗k`.
pub fn tower_generators<F: Field>(s: &Matrix<F>, n: usize, k: usize) -> Result<Vec<Matrix<F>>, TowerError> {
    (1..k).map(|i| Ok(place(s, PlacementSpec::new(n, k, i)?)?)).collect()
}

/// `A_k(S)` for an operator on `V ⊗ V`.
pub fn tower_algebra<F: Field>(
    s: &Matrix<F>,
    n: usize,
    k: usize,
    max_matrix_dim: usize,
) -> Result<MatrixAlgebra<F>, TowerError> {
    let size = guard(n, k, max_matrix_dim)?;
    generate_algebra(&tower_generators(s, n, k)?, size)
}

pub fn tower_dim(s: &Symmetry, k: usize, max_matrix_dim: usize) -> Result<usize, TowerError> {
    Ok(tower_algebra(s.matrix(), s.n(), k, max_matrix_dim)?.dim())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    GenericSymbolic,
    SpecializedAt(Rational),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::GenericSymbolic => f.write_str("generic-symbolic"),
            Strategy::SpecializedAt(a) => write!(f, "specialized-at {a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimplicityCertificate {
    /// `tr(b_i b_j)`; constant entries when the strategy specializes.
    pub gram: Matrix<RatFun>,
    pub rank: usize,
    pub nondegenerate: bool,
    pub strategy: Strategy,
}

/// `tr(a b)` without forming the product.
fn trace_pairing<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> F {
    let n = a.rows();
    let mut acc = F::zero();
    for r in 0..n {
        for c in 0..n {
            let x = a.get(r, c);
            if !x.is_zero() {
                let y = b.get(c, r);
                if !y.is_zero() {
                    acc = acc.plus(&x.times(y));
                }
            }
        }
    }
    acc
}

pub fn trace_form<F: Field>(basis: &[Matrix<F>]) -> Matrix<F> {
    let d = basis.len();
    let mut g = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let t = trace_pairing(&basis[i], &basis[j]);
            g.set(j, i, t.clone());
            g.set(i, j, t);
        }
    }
    g
}

/// Trace-form test: a matrix algebra over a field of characteristic zero is
/// semisimple iff its trace form is nondegenerate.
pub fn semisimplicity(basis: &[Matrix<RatFun>], strategy: Strategy) -> Result<SemisimplicityCertificate, TowerError> {
    let (gram, rank) = match &strategy {
        Strategy::GenericSymbolic => {
            let g = trace_form(basis);
            let rank = g.rank();
            (g, rank)
        }
        Strategy::SpecializedAt(a) => {
            let special = basis.iter().map(|b| specialize_matrix(b, a)).collect::<Result<Vec<_>, _>>()?;
            let g = trace_form(&special);
            let rank = g.rank();
            (g.map(|x| RatFun::constant(x.clone())), rank)
        }
    };
    Ok(SemisimplicityCertificate { nondegenerate: rank == basis.len(), gram, rank, strategy })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub k: usize,
    pub generic_dim: usize,
    pub classical_dim: usize,
    pub generic_growth: Vec<usize>,
    pub at_classical: SemisimplicityCertificate,
    pub at_random: SemisimplicityCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerVerdict {
    Satisfied { up_to: usize },
    DimensionJump { k: usize },
    Degenerate { k: usize, at: Rational },
}

impl fmt::Display for TowerVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerVerdict::Satisfied { up_to } => write!(f, "CRITERION SATISFIED to k = {up_to}"),
            TowerVerdict::DimensionJump { k } => write!(f, "NOT SATISFIED: dim A_{k} jumps at the classical point"),
            TowerVerdict::Degenerate { k, at } => {
                write!(f, "NOT SATISFIED: trace form of A_{k} is degenerate at q = {at}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerReport {
    pub classical_at: Rational,
    pub random_point: Rational,
    pub levels: Vec<TowerLevel>,
    pub verdict: TowerVerdict,
}

/// A random rational `num/den` with `|num|, den ≤ 97`, avoiding `0`, `±1`,
/// the classical point, poles of the operator and eigenvalue collisions.
pub fn random_point(s: &Symmetry, classical_at: &Rational, seed: u64) -> Result<Rational, TowerError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_POINT_TRIES {
        let num: i64 = rng.gen_range(-97..=97);
        let den: i64 = rng.gen_range(1..=97);
        let q0 = Rational::new(num.into(), den.into());
        if q0.is_zero() || q0 == Rational::from_int(1) || q0 == Rational::from_int(-1) || q0 == *classical_at {
            continue;
        }
        if s.specialize(&q0).is_ok() {
            return Ok(q0);
        }
    }
    Err(TowerError::NoRandomPoint)
}

/// For `2 ≤ k ≤ k_max`: `dim A_k` over ℚ(q) and at `q = classical_at`, plus
/// trace-form certificates at the classical point and at a seeded random
/// point. The verdict names the first failing check.
pub fn tower_flatness(
    s: &Symmetry,
    k_max: usize,
    classical_at: &Rational,
    seed: u64,
    max_matrix_dim: usize,
) -> Result<TowerReport, TowerError> {
    guard(s.n(), k_max, max_matrix_dim)?;
    let classical = specialize_matrix(s.matrix(), classical_at)?;
    let mut seed = seed;
    let mut q0 = random_point(s, classical_at, seed)?;
    let mut levels = Vec::new();
    let mut verdict = None;
    for k in 2..=k_max {
        let generic = tower_algebra(s.matrix(), s.n(), k, max_matrix_dim)?;
        let special = tower_algebra(&classical, s.n(), k, max_matrix_dim)?;
        let special_basis: Vec<Matrix<RatFun>> =
            special.basis.iter().map(|b| b.map(|x| RatFun::constant(x.clone()))).collect();
        let at_classical = semisimplicity(&special_basis, Strategy::SpecializedAt(classical_at.clone()))?;
        // the generic basis may have a pole at q0 even when S does not
        let at_random = loop {
            match semisimplicity(&generic.basis, Strategy::SpecializedAt(q0.clone())) {
                Ok(c) => break c,
                Err(TowerError::Symmetry(SymmetryError::Specialization { .. })) => {
                    seed = seed.wrapping_add(1);
                    q0 = random_point(s, classical_at, seed)?;
                }
                Err(e) => return Err(e),
            }
        };
        if verdict.is_none() {
            verdict = if generic.dim() != special.dim() {
                Some(TowerVerdict::DimensionJump { k })
            } else if !at_classical.nondegenerate {
                Some(TowerVerdict::Degenerate { k, at: classical_at.clone() })
            } else if !at_random.nondegenerate {
                Some(TowerVerdict::Degenerate { k, at: q0.clone() })
            } else {
                None
            };
        }
        levels.push(TowerLevel {
            k,
            generic_dim: generic.dim(),
            classical_dim: special.dim(),
            generic_growth: generic.growth,
            at_classical,
            at_random,
        });
    }
    Ok(TowerReport {
        classical_at: classical_at.clone(),
        random_point: q0,
        levels,
        verdict: verdict.unwrap_or(TowerVerdict::Satisfied { up_to: k_max }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_get;
    use crate::tensor::flip;

    fn q1() -> Rational {
        Rational::from_int(1)
    }

    #[test]
    fn identity_generates_scalars() {
        let a = generate_algebra(&[Matrix::<Rational>::identity(4)], 4).unwrap();
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn symmetric_group_images() {
        let a = tower_algebra(&flip::<Rational>(2), 2, 3, 81).unwrap();
        assert_eq!(a.dim(), 5);
        let a = tower_algebra(&flip::<Rational>(3), 3, 3, 81).unwrap();
        assert_eq!(a.dim(), 6);
        let a = tower_algebra(&flip::<Rational>(2), 2, 2, 81).unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn closure_is_closed_and_growth_increases() {
        let a = tower_algebra(&flip::<Rational>(2), 2, 4, 81).unwrap();
        for x in &a.basis {
            for y in &a.basis {
                assert!(a.residual(&x.matmul(y).unwrap()).iter().all(Field::is_zero));
            }
        }
        let g = &a.growth;
        assert!(g.windows(2).take(g.len() - 2).all(|w| w[0] < w[1]));
        assert_eq!(g[g.len() - 1], g[g.len() - 2]);
    }

    #[test]
    fn guards() {
        assert_eq!(
            tower_algebra(&flip::<Rational>(3), 3, 5, 81).unwrap_err(),
            TowerError::ResourceGuard { k: 5, size: 243, bound: 81 }
        );
        assert_eq!(tower_algebra(&flip::<Rational>(2), 2, 1, 81).unwrap_err(), TowerError::DegreeTooSmall(1));
        assert!(matches!(generate_algebra(&[Matrix::<Rational>::identity(3)], 4), Err(TowerError::Shape { .. })));
    }

    #[test]
    fn semisimplicity_on_known_algebras() {
        let e = |i, j| Matrix::<RatFun>::unit(2, 2, i, j);
        let diag = semisimplicity(&[e(0, 0), e(1, 1)], Strategy::GenericSymbolic).unwrap();
        assert!(diag.nondegenerate);
        let nil = semisimplicity(&[Matrix::identity(2), e(0, 1)], Strategy::GenericSymbolic).unwrap();
        assert!(!nil.nondegenerate);
        assert_eq!(nil.rank, 1);
    }

    #[test]
    fn a3_of_flip_is_semisimple() {
        let a = tower_algebra(&flip::<RatFun>(2), 2, 3, 81).unwrap();
        let c = semisimplicity(&a.basis, Strategy::SpecializedAt(q1())).unwrap();
        assert!(c.nondegenerate);
        assert_eq!(c.rank, 5);
    }

    #[test]
    fn glq2_tower_is_flat() {
        let s = catalog_get("glq2").unwrap().symmetry().unwrap();
        let r = tower_flatness(&s, 3, &q1(), DEFAULT_SEED, 81).unwrap();
        let dims: Vec<(usize, usize)> = r.levels.iter().map(|l| (l.generic_dim, l.classical_dim)).collect();
        assert_eq!(dims, vec![(2, 2), (5, 5)]);
        assert_eq!(r.verdict, TowerVerdict::Satisfied { up_to: 3 });
        assert!(r.random_point != q1() && r.random_point != Rational::from_int(0));
    }

    #[test]
    fn random_point_is_seeded() {
        let s = catalog_get("glq2").unwrap().symmetry().unwrap();
        assert_eq!(random_point(&s, &q1(), 7).unwrap(), random_point(&s, &q1(), 7).unwrap());
    }

    #[test]
    fn negative_entry_reports_structure() {
        let s = catalog_get("twisted_flip2").unwrap().symmetry().unwrap();
        let r = tower_flatness(&s, 3, &q1(), DEFAULT_SEED, 81).unwrap();
        assert_eq!(r.levels.len(), 2);
        if let TowerVerdict::DimensionJump { k } = r.verdict {
            let l = &r.levels[k - 2];
            assert_ne!(l.generic_dim, l.classical_dim);
        }
    }
}
