//! Built-in symmetries with known spectra. Every entry is generated from its
//! formula and re-verified when requested.

use crate::field::Field;
use crate::linalg::Matrix;
use crate::quadratic::SubspaceFamily;
use crate::scalars::{RatFun, Rational};
use crate::symmetry::{
    check_braid, check_bw, check_hecke, eigen_decompose, monomial_roots, spectrum_polynomial, Symmetry, SymmetryError,
    SymmetryKind,
};
use crate::tensor::flip;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}` (try `catalog list`)")]
    UnknownName(String),
    #[error("`{0}` is a subspace family, not a symmetry")]
    NotASymmetry(String),
    #[error("catalog entry `{name}` failed self-validation: {reason}")]
    Invalid { name: String, reason: String },
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Permutation,
    Hecke,
    BirmanWenzl,
    /// Deliberately fails an axiom; used to exercise failure reporting.
    Negative,
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::Permutation => "permutation",
            EntryKind::Hecke => "hecke",
            EntryKind::BirmanWenzl => "birman-wenzl",
            EntryKind::Negative => "negative",
        }
    }

    /// Which axiom set the checker should apply.
    pub fn symmetry_kind(self) -> SymmetryKind {
        match self {
            EntryKind::Permutation | EntryKind::Hecke => SymmetryKind::Hecke,
            EntryKind::BirmanWenzl => SymmetryKind::BirmanWenzl,
            EntryKind::Negative => SymmetryKind::GenericYb,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub n: usize,
    pub matrix: Matrix<RatFun>,
    pub eigenvalues: Vec<RatFun>,
    pub kind: EntryKind,
}

impl CatalogEntry {
    pub fn symmetry(&self) -> Result<Symmetry, SymmetryError> {
        eigen_decompose(&self.matrix, self.n, &self.eigenvalues, self.kind.symmetry_kind())
    }
}

pub const SYMMETRY_NAMES: &[&str] =
    &["flip1", "flip2", "flip3", "flip4", "glq1", "glq2", "glq3", "so3", "twisted_flip2"];
pub const FAMILY_NAMES: &[&str] = &["nonflat2"];

/// `(name, description)` for every entry, symmetries first.
pub fn catalog_list() -> Vec<(&'static str, &'static str)> {
    let mut out: Vec<(&str, &str)> = SYMMETRY_NAMES
        .iter()
        .map(|&name| {
            let what = match name {
                "flip1" | "flip2" | "flip3" | "flip4" => "permutation",
                "glq1" | "glq2" | "glq3" => "hecke",
                "so3" => "birman-wenzl",
                _ => "negative",
            };
            (name, what)
        })
        .collect();
    out.extend(FAMILY_NAMES.iter().map(|&name| (name, "family")));
    out
}

fn int(k: i64) -> RatFun {
    RatFun::from_int(k)
}

/// Operator `Σ c · e_ab ⊗ e_cd` from `(a, b, c, d, coefficient)` terms.
fn operator(n: usize, terms: impl IntoIterator<Item = (usize, usize, usize, usize, RatFun)>) -> Matrix<RatFun> {
    let mut m = Matrix::<RatFun>::zeros(n * n, n * n);
    for (a, b, c, d, coeff) in terms {
        let (row, col) = (a * n + c, b * n + d);
        let value = m.get(row, col).plus(&coeff);
        m.set(row, col, value);
    }
    m
}

/// `σ R` with the standard GL(n) R-matrix.
pub fn glq(n: usize) -> Matrix<RatFun> {
    let q = RatFun::q();
    let gap = q.minus(&RatFun::q_pow(-1));
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = if i == j { q.clone() } else { RatFun::one() };
            terms.push((i, i, j, j, c));
            if i < j {
                terms.push((i, j, j, i, gap.clone()));
            }
        }
    }
    &flip::<RatFun>(n) * &operator(n, terms)
}

/// `σ R` with the B₁ R-matrix in the vector representation, written in
/// `q = √q_FRT` so that every entry is a Laurent polynomial in `q`.
pub fn so3() -> Matrix<RatFun> {
    let n = 3;
    let bar = |i: usize| n - 1 - i;
    // 2ρ = (1, 0, -1)
    let two_rho = [1i32, 0, -1];
    let gap = RatFun::q_pow(2).minus(&RatFun::q_pow(-2));
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = if i == j && i != bar(i) {
                RatFun::q_pow(2)
            } else if i == j {
                RatFun::one()
            } else if j == bar(i) {
                RatFun::q_pow(-2)
            } else {
                RatFun::one()
            };
            terms.push((i, i, j, j, c));
            if i > j {
                terms.push((i, j, j, i, gap.clone()));
                let twist = RatFun::q_pow(two_rho[i] - two_rho[j]);
                terms.push((i, j, bar(i), bar(j), gap.times(&twist).negated()));
            }
        }
    }
    &flip::<RatFun>(n) * &operator(n, terms)
}

/// `g σ g⁻¹` for a `q`-dependent shear `g` sending `e₂⊗e₁` to `e₂⊗e₁ + (q-1) e₁⊗e₂`.
/// Has spectrum `{1, -1}` but is not a braid operator for `q ≠ 1`.
pub fn twisted_flip2() -> Matrix<RatFun> {
    let mut g = Matrix::<RatFun>::identity(4);
    g.set(1, 2, RatFun::q().minus(&RatFun::one()));
    let g_inv = g.inverse().expect("unipotent");
    &(&g * &flip::<RatFun>(2)) * &g_inv
}

/// Two relations `e₁⊗e₂ - e₂⊗e₁` and `e₁⊗e₂ - q e₂⊗e₁`: independent for
/// `q ≠ 1`, equal at `q = 1`.
pub fn nonflat_family() -> SubspaceFamily {
    let rows = vec![vec![int(0), int(1), int(-1), int(0)], vec![int(0), int(1), RatFun::q().negated(), int(0)]];
    SubspaceFamily::new(Matrix::from_rows(4, rows).unwrap()).expect("independent for generic q")
}

/// Spectrum of a catalog operator, read off its minimal polynomial and
/// ordered by decreasing eigenspace dimension.
fn derived_spectrum(name: &str, m: &Matrix<RatFun>, n: usize) -> Result<Vec<RatFun>, CatalogError> {
    let minpoly = spectrum_polynomial(m)?;
    let mut roots = monomial_roots(&minpoly, 8);
    if roots.len() != minpoly.degree().unwrap_or(0) {
        return Err(CatalogError::Invalid {
            name: name.to_string(),
            reason: format!("minimal polynomial {minpoly} does not split into ±q^e roots"),
        });
    }
    let dims = |l: &RatFun| crate::linalg::kernel(&m.shift(l)).dim();
    roots.sort_by_key(|l| std::cmp::Reverse(dims(l)));
    debug_assert!(roots.iter().map(dims).sum::<usize>() == n * n);
    Ok(roots)
}

fn build(name: &str) -> Result<CatalogEntry, CatalogError> {
    let unknown = || CatalogError::UnknownName(name.to_string());
    if FAMILY_NAMES.contains(&name) {
        return Err(CatalogError::NotASymmetry(name.to_string()));
    }
    let sized = |prefix: &str, max: usize| {
        name.strip_prefix(prefix)
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|n| (1..=max).contains(n) && format!("{prefix}{n}") == name)
    };
    let (n, matrix, eigenvalues, kind) = if let Some(n) = sized("flip", 4) {
        let eigs = if n == 1 { vec![int(1)] } else { vec![int(1), int(-1)] };
        (n, flip::<RatFun>(n), eigs, EntryKind::Permutation)
    } else if let Some(n) = sized("glq", 3) {
        let q = RatFun::q();
        let eigs = if n == 1 { vec![q] } else { vec![q, RatFun::q_pow(-1).negated()] };
        (n, glq(n), eigs, EntryKind::Hecke)
    } else if name == "so3" {
        let m = so3();
        let eigs = derived_spectrum(name, &m, 3)?;
        (3, m, eigs, EntryKind::BirmanWenzl)
    } else if name == "twisted_flip2" {
        (2, twisted_flip2(), vec![int(1), int(-1)], EntryKind::Negative)
    } else {
        return Err(unknown());
    };
    Ok(CatalogEntry { name: name.to_string(), n, matrix, eigenvalues, kind })
}

/// Look up an entry and re-verify its axioms.
pub fn catalog_get(name: &str) -> Result<CatalogEntry, CatalogError> {
    let entry = build(name)?;
    let invalid = |reason: &str| CatalogError::Invalid { name: name.to_string(), reason: reason.to_string() };
    entry.symmetry()?;
    let (m, n, eigs) = (&entry.matrix, entry.n, &entry.eigenvalues);
    match entry.kind {
        EntryKind::Negative => {
            if check_braid(m, n)? {
                return Err(invalid("negative entry unexpectedly satisfies the braid relation"));
            }
        }
        EntryKind::Permutation | EntryKind::Hecke => {
            if !check_braid(m, n)? {
                return Err(invalid("braid relation fails"));
            }
            if eigs.len() == 2 && !check_hecke(m, n, &eigs[0], &eigs[1])? {
                return Err(invalid("Hecke relation fails"));
            }
        }
        EntryKind::BirmanWenzl => {
            let report = check_bw(m, n, &eigs[0], &eigs[1], &eigs[2])?;
            if let Some(axiom) = report.first_failure() {
                return Err(invalid(&format!("axiom `{axiom}` fails")));
            }
            if !report.formula_consistent {
                return Err(invalid("contraction constants do not match the λ, μ, ν formulas"));
            }
        }
    }
    Ok(entry)
}

/// Look up a subspace family by name.
pub fn catalog_family(name: &str) -> Result<SubspaceFamily, CatalogError> {
    match name {
        "nonflat2" => Ok(nonflat_family()),
        _ if SYMMETRY_NAMES.contains(&name) => Err(CatalogError::UnknownName(format!("{name} (a symmetry)"))),
        _ => Err(CatalogError::UnknownName(name.to_string())),
    }
}

/// Entrywise evaluation at a rational point.
pub fn specialize_entry(entry: &CatalogEntry, at: &Rational) -> Result<Matrix<Rational>, SymmetryError> {
    crate::symmetry::specialize_matrix(&entry.matrix, at)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::limit_subspace;

    #[test]
    fn every_symmetry_entry_validates() {
        for name in SYMMETRY_NAMES {
            let e = catalog_get(name).unwrap_or_else(|err| panic!("{name}: {err}"));
            assert_eq!(e.matrix.rows(), e.n * e.n);
        }
    }

    #[test]
    fn flip2_is_a_permutation() {
        let e = catalog_get("flip2").unwrap();
        assert_eq!(e.kind, EntryKind::Permutation);
        assert_eq!(e.matrix, flip::<RatFun>(2));
    }

    #[test]
    fn glq_at_one_is_flip() {
        let one = Rational::from_int(1);
        for n in 1..=3 {
            let e = catalog_get(&format!("glq{n}")).unwrap();
            assert_eq!(specialize_entry(&e, &one).unwrap(), flip::<Rational>(n));
        }
    }

    #[test]
    fn glq2_matches_hand_matrix() {
        let q = RatFun::q();
        let m = glq(2);
        assert_eq!(*m.get(0, 0), q);
        assert_eq!(*m.get(1, 2), RatFun::one());
        assert_eq!(*m.get(2, 1), RatFun::one());
        assert_eq!(*m.get(2, 2), q.minus(&RatFun::q_pow(-1)));
        assert_eq!(*m.get(1, 1), RatFun::zero());
    }

    #[test]
    fn so3_spectrum_and_constants() {
        let e = catalog_get("so3").unwrap();
        assert_eq!(e.eigenvalues, vec![RatFun::q_pow(2), RatFun::q_pow(-2).negated(), RatFun::q_pow(-4)]);
        assert_eq!(e.symmetry().unwrap().eigenspace_dims(), vec![5, 3, 1]);
        let r = check_bw(&e.matrix, 3, &e.eigenvalues[0], &e.eigenvalues[1], &e.eigenvalues[2]).unwrap();
        let (l, m, nu) = (&e.eigenvalues[0], &e.eigenvalues[1], &e.eigenvalues[2]);
        let s = l.plus(m);
        assert_eq!(r.a.unwrap(), l.times(m).times(&s));
        assert_eq!(r.b.unwrap(), s.times(&s).times(nu).times(nu));
    }

    #[test]
    fn so3_at_one_is_flip() {
        let e = catalog_get("so3").unwrap();
        assert_eq!(specialize_entry(&e, &Rational::from_int(1)).unwrap(), flip::<Rational>(3));
    }

    #[test]
    fn unknown_names() {
        assert_eq!(catalog_get("nosuch"), Err(CatalogError::UnknownName("nosuch".into())));
        assert!(matches!(catalog_get("flip5"), Err(CatalogError::UnknownName(_))));
        assert!(matches!(catalog_get("flip02"), Err(CatalogError::UnknownName(_))));
        assert!(matches!(catalog_get("nonflat2"), Err(CatalogError::NotASymmetry(_))));
    }

    #[test]
    fn nonflat_family_drops() {
        let l = limit_subspace(&catalog_family("nonflat2").unwrap(), &Rational::from_int(1)).unwrap();
        assert!(l.dropped);
        assert_eq!(l.limit.dim(), 2);
    }

    #[test]
    fn list_covers_all_names() {
        let names: Vec<&str> = catalog_list().into_iter().map(|(n, _)| n).collect();
        assert_eq!(names.len(), SYMMETRY_NAMES.len() + FAMILY_NAMES.len());
    }
}
