//! Quadratic algebras `(V, J) = T(V)/(J)`: homogeneous dimensions,
//! well-situated pairs, the `q → a` limit of a subspace family, and the
//! degree-by-degree flatness comparison.

use std::fmt;

use crate::field::Field;
use crate::linalg::{LinalgError, Matrix, Subspace};
use crate::scalars::{Poly, RatFun, Rational, ScalarError};
use crate::tensor::{isqrt_exact, iterated_intersection, iterated_sum, TensorError};

/// Iteration cap for [`limit_subspace`]; each round lowers the total
/// `(q - a)`-adic valuation, so hitting it means a bug.
pub const SATURATION_ROUNDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadraticError {
    #[error("degree {degree} needs ambient dimension {ambient}, over the bound {bound} (raise it with --max-ambient)")]
    ResourceGuard { degree: usize, ambient: usize, bound: usize },
    #[error("maximum degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("relation space lives in dimension {0}, which is not n² for any n")]
    NotASquare(usize),
    #[error("the pair is not complementary in V⊗V")]
    NotComplementary,
    #[error("family rows are linearly dependent over ℚ(q)")]
    DependentFamily,
    #[error("family entry ({row}, {col}) has a pole at q = {at}")]
    Pole { row: usize, col: usize, at: Rational },
    #[error("saturation did not stabilize within {SATURATION_ROUNDS} rounds")]
    SaturationBound,
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Bound on the ambient dimension `n^k` of any degree the tool will touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceLimits {
    pub max_ambient: usize,
}

impl Default for ResourceLimits {
    fn default() -> Self {
        ResourceLimits { max_ambient: 10_000 }
    }
}

impl ResourceLimits {
    pub fn check(&self, base: usize, degree: usize) -> Result<(), QuadraticError> {
        let ambient = (base as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
        if ambient > self.max_ambient as u128 {
            return Err(QuadraticError::ResourceGuard {
                degree,
                ambient: ambient.min(usize::MAX as u128) as usize,
                bound: self.max_ambient,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPresentation<F = RatFun> {
    n: usize,
    relations: Subspace<F>,
}

impl<F: Field> QuadraticPresentation<F> {
    pub fn new(relations: Subspace<F>) -> Result<Self, QuadraticError> {
        let n = isqrt_exact(relations.ambient_dim()).ok_or(QuadraticError::NotASquare(relations.ambient_dim()))?;
        Ok(QuadraticPresentation { n, relations })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &Subspace<F> {
        &self.relations
    }
}

/// `dims[k] = dim Q^k` for `k = 0..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    pub max_degree: usize,
    pub dims: Vec<usize>,
    /// Entry `k - 2` is the well-situatedness verdict in degree `k`.
    pub well_situated: Option<Vec<bool>>,
}

impl fmt::Display for HilbertTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        f.write_str(&dims.join(", "))
    }
}

fn check_degree(max_degree: usize) -> Result<(), QuadraticError> {
    if max_degree < 2 {
        return Err(QuadraticError::DegreeTooSmall(max_degree));
    }
    Ok(())
}

/// `dim Q^k = n^k - dim J^k`.
pub fn hilbert_dims<F: Field>(
    p: &QuadraticPresentation<F>,
    max_degree: usize,
    limits: ResourceLimits,
) -> Result<HilbertTable, QuadraticError> {
    check_degree(max_degree)?;
    limits.check(p.n, max_degree)?;
    let n = p.n;
    let mut dims = vec![1, n];
    let mut jk = p.relations.clone();
    dims.push(n * n - jk.dim());
    for k in 3..=max_degree {
        let left = jk.tensor(&Subspace::full(n));
        let right = Subspace::full(n.pow(k as u32 - 2)).tensor(&p.relations);
        jk = left.sum(&right)?;
        dims.push(n.pow(k as u32) - jk.dim());
    }
    Ok(HilbertTable { max_degree, dims, well_situated: None })
}

/// For each `2 ≤ k ≤ max_degree`: `V^⊗k = I^(k) ⊕ J^k`.
pub fn check_well_situated<F: Field>(
    i: &Subspace<F>,
    j: &Subspace<F>,
    max_degree: usize,
    limits: ResourceLimits,
) -> Result<Vec<bool>, QuadraticError> {
    check_degree(max_degree)?;
    let n = isqrt_exact(i.ambient_dim()).ok_or(QuadraticError::NotASquare(i.ambient_dim()))?;
    limits.check(n, max_degree)?;
    if i.ambient_dim() != j.ambient_dim() || i.dim() + j.dim() != n * n || !i.intersect(j)?.is_zero() {
        return Err(QuadraticError::NotComplementary);
    }
    (2..=max_degree)
        .map(|k| {
            let ik = iterated_intersection(i, k)?;
            let jk = iterated_sum(j, k)?;
            Ok(ik.dim() + jk.dim() == n.pow(k as u32) && ik.intersect(&jk)?.is_zero())
        })
        .collect()
}

/// Hilbert table of `(V, J)` annotated with well-situatedness of `(I, J)`.
pub fn hilbert_with_complement<F: Field>(
    i: &Subspace<F>,
    j: &Subspace<F>,
    max_degree: usize,
    limits: ResourceLimits,
) -> Result<HilbertTable, QuadraticError> {
    let mut table = hilbert_dims(&QuadraticPresentation::new(j.clone())?, max_degree, limits)?;
    table.well_situated = Some(check_well_situated(i, j, max_degree, limits)?);
    Ok(table)
}

/// A parametrized spanning set: rows are vectors over ℚ(q), independent at
/// the generic point. Unlike a [`Subspace`], the rows are kept as given,
/// because how they specialize is the point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFamily {
    rows: Matrix<RatFun>,
}

impl SubspaceFamily {
    pub fn new(rows: Matrix<RatFun>) -> Result<Self, QuadraticError> {
        if rows.rank() != rows.rows() {
            return Err(QuadraticError::DependentFamily);
        }
        Ok(SubspaceFamily { rows })
    }

    /// Family whose rows are the canonical basis of `s`, each scaled to a
    /// primitive polynomial vector so no row has a pole.
    pub fn from_subspace(s: &Subspace<RatFun>) -> Self {
        let rows = (0..s.dim()).map(|i| primitive_row(s.basis().row(i))).collect();
        let rows = Matrix::from_rows(s.ambient_dim(), rows).expect("basis width");
        SubspaceFamily { rows }
    }

    pub fn rows(&self) -> &Matrix<RatFun> {
        &self.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows.cols()
    }

    pub fn generic_dim(&self) -> usize {
        self.rows.rows()
    }

    pub fn generic_subspace(&self) -> Subspace<RatFun> {
        Subspace::row_space(&self.rows)
    }
}

/// Clear denominators and content of a row over ℚ(q).
fn primitive_row(row: &[RatFun]) -> Vec<RatFun> {
    let polys = clear_denominators(row);
    let content = polys.iter().fold(Poly::zero(), |g, p| g.gcd(p));
    polys
        .into_iter()
        .map(|p| RatFun::from_poly(if content.is_zero() { p } else { p.div_exact(&content).unwrap() }))
        .collect()
}

fn clear_denominators(row: &[RatFun]) -> Vec<Poly<Rational>> {
    let l = row.iter().fold(Poly::one(), |acc, e| acc.lcm(e.denom()));
    row.iter().map(|e| (e.numer() * &l).div_exact(e.denom()).expect("lcm is a multiple")).collect()
}

/// Result of taking `q → at` in a subspace family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    /// The saturated limit; always of the generic dimension.
    pub limit: Subspace<Rational>,
    /// Rank of the rows specialized entrywise, before saturation.
    pub naive_rank: usize,
    /// `naive_rank` fell below the generic dimension.
    pub dropped: bool,
    pub rounds: usize,
}

/// Saturate the family at `q = at` and specialize.
///
/// Rows are made polynomial and stripped of common `(q - at)` factors; then,
/// while the specialized rows are dependent, a dependent combination is
/// formed (it vanishes at `at`), divided by the largest power of `(q - at)`,
/// and swapped in.
pub fn limit_subspace(family: &SubspaceFamily, at: &Rational) -> Result<Limit, QuadraticError> {
    let rows = family.rows();
    let naive = rows.try_map(|e| e.specialize(at)).map_err(|(row, col, err)| match err {
        ScalarError::Pole { .. } | ScalarError::Indeterminate { .. } => {
            QuadraticError::Pole { row, col, at: at.clone() }
        }
        ScalarError::DivisionByZero => unreachable!("specialization does not divide by a constant"),
    })?;
    let naive_rank = naive.rank();
    let generic = family.generic_dim();

    let mut polys: Vec<Vec<Poly<Rational>>> =
        (0..rows.rows()).map(|i| strip_root(clear_denominators(rows.row(i)), at)).collect();
    let mut rounds = 0;
    loop {
        let special = specialize_poly_rows(&polys, at, family.ambient_dim());
        let left_kernel = crate::linalg::kernel(&special.transpose());
        if left_kernel.is_zero() {
            let limit = Subspace::row_space(&special);
            debug_assert_eq!(limit.dim(), generic);
            return Ok(Limit { limit, naive_rank, dropped: naive_rank < generic, rounds });
        }
        if rounds == SATURATION_ROUNDS {
            return Err(QuadraticError::SaturationBound);
        }
        rounds += 1;
        let c = left_kernel.basis().row(0);
        let target = c.iter().rposition(|x| !x.is_zero()).expect("kernel vector is nonzero");
        let width = family.ambient_dim();
        let mut combo = vec![Poly::zero(); width];
        for (ci, row) in c.iter().zip(&polys) {
            if ci.is_zero() {
                continue;
            }
            for (acc, p) in combo.iter_mut().zip(row) {
                *acc = &*acc + &p.scale(ci);
            }
        }
        if combo.iter().all(Poly::is_zero) {
            return Err(QuadraticError::DependentFamily);
        }
        polys[target] = strip_root(combo, at);
    }
}

/// Divide a polynomial row by the largest power of `(q - at)` dividing it.
fn strip_root(row: Vec<Poly<Rational>>, at: &Rational) -> Vec<Poly<Rational>> {
    let v = row.iter().filter_map(|p| p.valuation_at(at)).min().unwrap_or(0);
    if v == 0 {
        return row;
    }
    let factor = Poly::linear(at).pow(v as u32);
    row.into_iter().map(|p| p.div_exact(&factor).expect("common root")).collect()
}

fn specialize_poly_rows(rows: &[Vec<Poly<Rational>>], at: &Rational, width: usize) -> Matrix<Rational> {
    let data = rows.iter().flat_map(|r| r.iter().map(|p| p.eval(at))).collect();
    Matrix::from_vec(rows.len(), width, data).expect("rows have the family width")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatnessVerdict {
    /// Dimensions agree in every degree up to the bound.
    Flat { up_to: usize },
    /// First degree where the dimensions differ.
    NotFlat { degree: usize },
    /// The entrywise limit lost rank: not a deformation of a subspace.
    NotADeformation,
}

impl fmt::Display for FlatnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlatnessVerdict::Flat { up_to } => write!(f, "FLAT to degree {up_to}"),
            FlatnessVerdict::NotFlat { degree } => write!(f, "NOT FLAT (dimension jump in degree {degree})"),
            FlatnessVerdict::NotADeformation => f.write_str("NOT-A-DEFORMATION"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatnessReport {
    pub generic: HilbertTable,
    pub classical: Option<HilbertTable>,
    pub limit: Limit,
    pub verdict: FlatnessVerdict,
    pub koszul_note: Option<String>,
}

pub const KOSZUL_NOTE: &str = "if the classical algebra is Koszul, freeness of the degree-3 component \
already implies flatness in all degrees (Drinfeld); Koszulity itself is not checked";

/// Compare two tables degree by degree.
pub fn compare_tables(generic: &HilbertTable, classical: &HilbertTable) -> FlatnessVerdict {
    match generic.dims.iter().zip(&classical.dims).position(|(a, b)| a != b) {
        Some(degree) => FlatnessVerdict::NotFlat { degree },
        None => FlatnessVerdict::Flat { up_to: generic.max_degree },
    }
}

/// Generic-vs-classical dimension comparison for the relations given by a
/// family. Stops at `NOT-A-DEFORMATION` when the family drops rank at `at`.
pub fn flatness_report(
    family: &SubspaceFamily,
    max_degree: usize,
    at: &Rational,
    limits: ResourceLimits,
    koszul_claimed: bool,
) -> Result<FlatnessReport, QuadraticError> {
    let limit = limit_subspace(family, at)?;
    let generic = hilbert_dims(&QuadraticPresentation::new(family.generic_subspace())?, max_degree, limits)?;
    let koszul_note = koszul_claimed.then(|| KOSZUL_NOTE.to_string());
    if limit.dropped {
        return Ok(FlatnessReport {
            generic,
            classical: None,
            limit,
            verdict: FlatnessVerdict::NotADeformation,
            koszul_note,
        });
    }
    let classical = hilbert_dims(&QuadraticPresentation::new(limit.limit.clone())?, max_degree, limits)?;
    let verdict = compare_tables(&generic, &classical);
    Ok(FlatnessReport { generic, classical: Some(classical), limit, verdict, koszul_note })
}
