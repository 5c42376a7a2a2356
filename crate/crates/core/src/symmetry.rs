//! Axiom checks for candidate symmetries `S` on `V ⊗ V`: the braid relation,
//! the Hecke quadratic relation, the Birman–Wenzl axioms, and verification of
//! a declared spectrum.

use std::fmt;

use crate::field::Field;
use crate::linalg::{kernel, minimal_polynomial, LinalgError, Matrix, Subspace};
use crate::scalars::{Poly, RatFun, Rational, ScalarError};
use crate::tensor::{place, PlacementSpec, TensorError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetryError {
    #[error("operator is {rows}x{cols}, expected {expected}x{expected}")]
    Shape { rows: usize, cols: usize, expected: usize },
    #[error("no eigenvalues declared")]
    EmptySpectrum,
    #[error("eigenvalue #{index} is repeated")]
    DuplicateEigenvalue { index: usize },
    #[error("eigenvalue #{index} is zero, operator would not be invertible")]
    ZeroEigenvalue { index: usize },
    #[error("declared spectrum is incomplete: eigenspaces span {found} of {expected} dimensions")]
    IncompleteSpectrum { found: usize, expected: usize },
    #[error("product of (S - λ_i) over the declared spectrum is not zero")]
    AnnihilationFailed,
    #[error("Birman-Wenzl parameters must be nonzero and pairwise distinct")]
    InvalidBwParameters,
    #[error("Hecke parameters must be distinct")]
    InvalidHeckeParameters,
    #[error("specialization failed at entry ({row}, {col}): {source}")]
    Specialization { row: usize, col: usize, source: ScalarError },
    #[error("specialized eigenvalues collide at q = {at}")]
    SpectrumCollision { at: Rational },
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryKind {
    GenericYb,
    Hecke,
    BirmanWenzl,
}

impl SymmetryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SymmetryKind::GenericYb => "generic-yb",
            SymmetryKind::Hecke => "hecke",
            SymmetryKind::BirmanWenzl => "birman-wenzl",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "generic-yb" => Some(SymmetryKind::GenericYb),
            "hecke" => Some(SymmetryKind::Hecke),
            "birman-wenzl" => Some(SymmetryKind::BirmanWenzl),
            _ => None,
        }
    }
}

impl fmt::Display for SymmetryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An operator on `V ⊗ V` together with a verified complete spectrum.
///
/// Only [`eigen_decompose`] builds one, so every value satisfies: eigenvalues
/// distinct and nonzero, `I_i = ker(S - λ_i)`, `⊕ I_i = V ⊗ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetry<F = RatFun> {
    n: usize,
    matrix: Matrix<F>,
    eigenvalues: Vec<F>,
    eigenspaces: Vec<Subspace<F>>,
    kind: SymmetryKind,
}

impl<F: Field> Symmetry<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &[F] {
        &self.eigenvalues
    }

    /// `I_i`, in the order of the declared eigenvalues.
    pub fn eigenspaces(&self) -> &[Subspace<F>] {
        &self.eigenspaces
    }

    pub fn kind(&self) -> SymmetryKind {
        self.kind
    }

    /// `J_m = ⊕_{i≠m} I_i` (0-based `m`).
    pub fn complement(&self, m: usize) -> Subspace<F> {
        let mut acc = Subspace::zero(self.n * self.n);
        for (i, s) in self.eigenspaces.iter().enumerate() {
            if i != m {
                acc = acc.sum(s).expect("eigenspaces share the ambient space");
            }
        }
        acc
    }

    pub fn eigenspace_dims(&self) -> Vec<usize> {
        self.eigenspaces.iter().map(Subspace::dim).collect()
    }
}

impl Symmetry<RatFun> {
    /// Evaluate at `q = at` and re-verify the specialized spectrum.
    pub fn specialize(&self, at: &Rational) -> Result<Symmetry<Rational>, SymmetryError> {
        let matrix = specialize_matrix(&self.matrix, at)?;
        let eigenvalues = self
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, l)| l.specialize(at).map_err(|source| SymmetryError::Specialization { row: i, col: 0, source }))
            .collect::<Result<Vec<_>, _>>()?;
        match eigen_decompose(&matrix, self.n, &eigenvalues, self.kind) {
            Err(SymmetryError::DuplicateEigenvalue { .. }) => Err(SymmetryError::SpectrumCollision { at: at.clone() }),
            other => other,
        }
    }
}

/// Entrywise `q ↦ at`.
pub fn specialize_matrix(m: &Matrix<RatFun>, at: &Rational) -> Result<Matrix<Rational>, SymmetryError> {
    m.try_map(|e| e.specialize(at)).map_err(|(row, col, source)| SymmetryError::Specialization { row, col, source })
}

fn check_shape<F: Field>(s: &Matrix<F>, n: usize) -> Result<(), SymmetryError> {
    if s.rows() != n * n || s.cols() != n * n {
        return Err(SymmetryError::Shape { rows: s.rows(), cols: s.cols(), expected: n * n });
    }
    Ok(())
}

/// `S₁S₂S₁ = S₂S₁S₂` on `V^⊗3`, exactly.
pub fn check_braid<F: Field>(s: &Matrix<F>, n: usize) -> Result<bool, SymmetryError> {
    check_shape(s, n)?;
    let s1 = place(s, PlacementSpec::new(n, 3, 1)?)?;
    let s2 = place(s, PlacementSpec::new(n, 3, 2)?)?;
    let s12 = &s1 * &s2;
    let s21 = &s2 * &s1;
    Ok(&s12 * &s1 == &s21 * &s2)
}

/// `(S - a)(S - b)` for a list of roots.
fn product_of_shifts<F: Field>(s: &Matrix<F>, roots: &[&F]) -> Matrix<F> {
    let mut acc = Matrix::identity(s.rows());
    for r in roots {
        acc = &acc * &s.shift(r);
    }
    acc
}

/// Braid relation together with `(S - λ)(S - μ) = 0`.
pub fn check_hecke<F: Field>(s: &Matrix<F>, n: usize, lambda: &F, mu: &F) -> Result<bool, SymmetryError> {
    check_shape(s, n)?;
    if lambda == mu {
        return Err(SymmetryError::InvalidHeckeParameters);
    }
    if !product_of_shifts(s, &[lambda, mu]).is_zero() {
        return Ok(false);
    }
    check_braid(s, n)
}

/// Outcome of the four Birman–Wenzl axioms for a given `(λ, μ, ν)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BwReport<F> {
    pub lambda: F,
    pub mu: F,
    pub nu: F,
    /// Constant in `P₁S₂P₁ = a·P₁`, when proportional.
    pub a: Option<F>,
    /// Constant in `P₁P₂P₁ = b·P₁`, when proportional.
    pub b: Option<F>,
    pub braid: bool,
    pub cubic: bool,
    pub contraction_s: bool,
    pub contraction_p: bool,
    /// All axioms hold and `a = λμ(λ+μ)`, `b = (λ+μ)²ν²`.
    pub formula_consistent: bool,
}

impl<F: Field> BwReport<F> {
    pub fn all_axioms_pass(&self) -> bool {
        self.braid && self.cubic && self.contraction_s && self.contraction_p
    }

    /// First failing axiom, named as in the report output.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            (self.braid, "braid"),
            (self.cubic, "cubic"),
            (self.contraction_s, "contraction-a"),
            (self.contraction_p, "contraction-b"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, name)| name)
    }

    pub fn expected_a(&self) -> F {
        self.lambda.times(&self.mu).times(&self.lambda.plus(&self.mu))
    }

    pub fn expected_b(&self) -> F {
        let s = self.lambda.plus(&self.mu);
        s.times(&s).times(&self.nu).times(&self.nu)
    }
}

/// Solve `lhs = c·p` for a scalar `c`: divide at the first nonzero entry of
/// `p` (row-major), then verify the whole identity.
fn proportionality<F: Field>(lhs: &Matrix<F>, p: &Matrix<F>) -> Option<F> {
    let idx = p.entries().iter().position(|e| !e.is_zero())?;
    let c = lhs.entries()[idx].divided(&p.entries()[idx])?;
    (p.scale(&c) == *lhs).then_some(c)
}

pub fn check_bw<F: Field>(s: &Matrix<F>, n: usize, lambda: &F, mu: &F, nu: &F) -> Result<BwReport<F>, SymmetryError> {
    check_shape(s, n)?;
    let params = [lambda, mu, nu];
    if params.iter().any(|x| x.is_zero()) || lambda == mu || mu == nu || lambda == nu {
        return Err(SymmetryError::InvalidBwParameters);
    }
    let braid = check_braid(s, n)?;
    let p = product_of_shifts(s, &[lambda, mu]);
    let cubic = (&p * &s.shift(nu)).is_zero() && !p.is_zero();
    let p1 = place(&p, PlacementSpec::new(n, 3, 1)?)?;
    let p2 = place(&p, PlacementSpec::new(n, 3, 2)?)?;
    let s2 = place(s, PlacementSpec::new(n, 3, 2)?)?;
    let a = proportionality(&(&(&p1 * &s2) * &p1), &p1);
    let b = proportionality(&(&(&p1 * &p2) * &p1), &p1);
    let mut report = BwReport {
        lambda: lambda.clone(),
        mu: mu.clone(),
        nu: nu.clone(),
        contraction_s: a.is_some(),
        contraction_p: b.is_some(),
        a,
        b,
        braid,
        cubic,
        formula_consistent: false,
    };
    report.formula_consistent = report.all_axioms_pass()
        && report.a.as_ref() == Some(&report.expected_a())
        && report.b.as_ref() == Some(&report.expected_b());
    Ok(report)
}

/// Compute `I_i = ker(S - λ_i)` and certify that the declared spectrum is
/// complete and annihilates `S`.
pub fn eigen_decompose<F: Field>(
    s: &Matrix<F>,
    n: usize,
    eigenvalues: &[F],
    kind: SymmetryKind,
) -> Result<Symmetry<F>, SymmetryError> {
    check_shape(s, n)?;
    if eigenvalues.is_empty() {
        return Err(SymmetryError::EmptySpectrum);
    }
    for (i, l) in eigenvalues.iter().enumerate() {
        if eigenvalues[..i].contains(l) {
            return Err(SymmetryError::DuplicateEigenvalue { index: i });
        }
        if l.is_zero() {
            return Err(SymmetryError::ZeroEigenvalue { index: i });
        }
    }
    let eigenspaces: Vec<Subspace<F>> = eigenvalues.iter().map(|l| kernel(&s.shift(l))).collect();
    let found: usize = eigenspaces.iter().map(Subspace::dim).sum();
    if found < n * n {
        return Err(SymmetryError::IncompleteSpectrum { found, expected: n * n });
    }
    let roots: Vec<&F> = eigenvalues.iter().collect();
    if !product_of_shifts(s, &roots).is_zero() {
        return Err(SymmetryError::AnnihilationFailed);
    }
    Ok(Symmetry { n, matrix: s.clone(), eigenvalues: eigenvalues.to_vec(), eigenspaces, kind })
}

/// Roots of the form `±q^e` with `|e| ≤ max_exp`, found by substitution.
///
/// Eigenvalues are normally declared by the caller; this is the helper for
/// finding them from the minimal polynomial of a catalog-style operator.
pub fn monomial_roots(p: &Poly<RatFun>, max_exp: i32) -> Vec<RatFun> {
    let mut roots = Vec::new();
    for e in -max_exp..=max_exp {
        for sign in [1, -1] {
            let candidate = RatFun::q_pow(e).times(&RatFun::from_int(sign));
            if p.eval(&candidate).is_zero() {
                roots.push(candidate);
            }
        }
    }
    roots
}

/// Minimal polynomial of the operator.
pub fn spectrum_polynomial<F: Field>(s: &Matrix<F>) -> Result<Poly<F>, SymmetryError> {
    Ok(minimal_polynomial(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;
    use crate::tensor::flip;

    fn r(s: &str) -> RatFun {
        parse_scalar(s).unwrap()
    }

    /// Hand-written 4x4 glq(2) braiding, independent of the catalog generator.
    fn glq2_by_hand() -> Matrix<RatFun> {
        let rows = [["q", "0", "0", "0"], ["0", "0", "1", "0"], ["0", "1", "q - 1/q", "0"], ["0", "0", "0", "q"]];
        Matrix::from_rows(4, rows.iter().map(|row| row.iter().map(|s| r(s)).collect()).collect()).unwrap()
    }

    #[test]
    fn flip_satisfies_braid() {
        for n in 1..=3 {
            assert!(check_braid(&flip::<RatFun>(n), n).unwrap());
        }
    }

    #[test]
    fn glq2_satisfies_braid() {
        assert!(check_braid(&glq2_by_hand(), 2).unwrap());
    }

    #[test]
    fn perturbed_flip_breaks_braid() {
        // The diagonal e11⊗e11 perturbation keeps braid (it only rescales a
        // basis tensor); an off-diagonal one does not.
        let f = flip::<RatFun>(2);
        let diag = &f + &Matrix::unit(4, 4, 0, 0).scale(&r("q"));
        assert!(check_braid(&diag, 2).unwrap());
        let off = &f + &Matrix::unit(4, 4, 0, 1).scale(&r("q"));
        assert!(!check_braid(&off, 2).unwrap());
    }

    #[test]
    fn hecke_examples() {
        assert!(check_hecke(&flip::<RatFun>(2), 2, &r("1"), &r("-1")).unwrap());
        assert!(check_hecke(&glq2_by_hand(), 2, &r("q"), &r("-1/q")).unwrap());
        assert!(!check_hecke(&glq2_by_hand(), 2, &r("q"), &r("1/q")).unwrap());
        assert!(check_hecke(&glq2_by_hand(), 2, &r("q"), &r("q")).is_err());
    }

    #[test]
    fn decompose_flip() {
        let s = eigen_decompose(&flip::<RatFun>(2), 2, &[r("1"), r("-1")], SymmetryKind::Hecke).unwrap();
        assert_eq!(s.eigenspace_dims(), vec![3, 1]);
        assert_eq!(s.complement(0), s.eigenspaces()[1]);
    }

    #[test]
    fn decompose_glq2() {
        let s = eigen_decompose(&glq2_by_hand(), 2, &[r("q"), r("-1/q")], SymmetryKind::Hecke).unwrap();
        assert_eq!(s.eigenspace_dims(), vec![3, 1]);
        let anti = &s.eigenspaces()[1];
        assert!(anti.contains(&[r("0"), r("1"), r("-1/q"), r("0")]));
    }

    #[test]
    fn decompose_errors() {
        let m = glq2_by_hand();
        assert_eq!(
            eigen_decompose(&m, 2, &[r("q")], SymmetryKind::Hecke),
            Err(SymmetryError::IncompleteSpectrum { found: 3, expected: 4 })
        );
        assert_eq!(
            eigen_decompose(&m, 2, &[r("q"), r("q")], SymmetryKind::Hecke),
            Err(SymmetryError::DuplicateEigenvalue { index: 1 })
        );
        assert_eq!(eigen_decompose(&m, 2, &[], SymmetryKind::Hecke), Err(SymmetryError::EmptySpectrum));
        let jordan = Matrix::from_rows(
            4,
            vec![
                vec![r("1"), r("1"), r("0"), r("0")],
                vec![r("0"), r("1"), r("0"), r("0")],
                vec![r("0"), r("0"), r("1"), r("0")],
                vec![r("0"), r("0"), r("0"), r("2")],
            ],
        )
        .unwrap();
        assert!(matches!(
            eigen_decompose(&jordan, 2, &[r("1"), r("2")], SymmetryKind::GenericYb),
            Err(SymmetryError::IncompleteSpectrum { .. })
        ));
    }

    #[test]
    fn bw_rejects_hecke_with_fake_third_eigenvalue() {
        let rep = check_bw(&glq2_by_hand(), 2, &r("q"), &r("-1/q"), &r("7")).unwrap();
        assert!(rep.braid);
        assert!(!rep.cubic);
        assert!(!rep.formula_consistent);
        assert_eq!(rep.first_failure(), Some("cubic"));
    }

    #[test]
    fn bw_parameter_preconditions() {
        let f = flip::<RatFun>(2);
        assert_eq!(check_bw(&f, 2, &r("1"), &r("-1"), &r("1")), Err(SymmetryError::InvalidBwParameters));
        assert_eq!(check_bw(&f, 2, &r("1"), &r("-1"), &r("0")), Err(SymmetryError::InvalidBwParameters));
        let rep = check_bw(&f, 2, &r("1"), &r("-1"), &r("2")).unwrap();
        assert!(!rep.cubic);
    }

    #[test]
    fn monomial_roots_of_glq2_minpoly() {
        let p = spectrum_polynomial(&glq2_by_hand()).unwrap();
        let roots = monomial_roots(&p, 4);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&r("q")) && roots.contains(&r("-1/q")));
    }

    #[test]
    fn specialization_at_one_gives_flip() {
        let s = eigen_decompose(&glq2_by_hand(), 2, &[r("q"), r("-1/q")], SymmetryKind::Hecke).unwrap();
        let one = Rational::from_int(1);
        let c = s.specialize(&one).unwrap();
        assert_eq!(*c.matrix(), flip::<Rational>(2));
        assert_eq!(c.eigenspace_dims(), vec![3, 1]);
    }
}
