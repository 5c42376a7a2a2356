use std::fmt;

use super::{LinalgError, Matrix};
use crate::field::Field;
use crate::linalg::matrix::rref_in_place;

/// A subspace of `F^ambient`, stored as the reduced row-echelon basis.
///
/// The basis is unique for the subspace, so equality of `Subspace` values is
/// equality of subspaces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, mut vectors: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(LinalgError::AmbientMismatch { left: ambient, right: v.len() });
        }
        let pivots = rref_in_place(&mut vectors, ambient);
        vectors.truncate(pivots.len());
        let basis = Matrix::from_rows(ambient, vectors)?;
        Ok(Subspace { basis, pivots })
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix<F>) -> Self {
        Self::span(m.cols(), m.row_vecs()).expect("rows have matrix width")
    }

    /// Wrap rows already known to be a reduced echelon basis.
    pub(crate) fn from_rref_unchecked(basis: Matrix<F>) -> Self {
        let pivots =
            (0..basis.rows()).map(|i| basis.row(i).iter().position(|e| !e.is_zero()).expect("no zero rows")).collect();
        let s = Subspace { basis, pivots };
        debug_assert!(s.is_canonical());
        s
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn is_canonical(&self) -> bool {
        let mut last = None;
        for (i, &p) in self.pivots.iter().enumerate() {
            if last.is_some_and(|l| l >= p) || !self.basis.get(i, p).is_one() {
                return false;
            }
            if (0..self.dim()).any(|k| k != i && !self.basis.get(k, p).is_zero()) {
                return false;
            }
            last = Some(p);
        }
        true
    }

    /// Residual of `v` after reduction against the basis.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    out[j] = out[j].minus(&factor.times(b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        v.len() == self.ambient_dim() && self.reduce(v).iter().all(F::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient_dim() == other.ambient_dim() && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(LinalgError::AmbientMismatch { left: self.ambient_dim(), right: other.ambient_dim() });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_full() {
            return Ok(other.clone());
        }
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Self::span(self.ambient_dim(), rows)
    }

    /// Intersection by the Zassenhaus trick: reduce `[a | a]` stacked on
    /// `[b | 0]`; rows whose left half vanishes carry the intersection.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        let n = self.ambient_dim();
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        let mut rows: Vec<Vec<F>> = Vec::with_capacity(self.dim() + other.dim());
        for i in 0..self.dim() {
            let r = self.basis.row(i);
            rows.push(r.iter().chain(r).cloned().collect());
        }
        for i in 0..other.dim() {
            let r = other.basis.row(i);
            rows.push(r.iter().cloned().chain(std::iter::repeat_with(F::zero).take(n)).collect());
        }
        let pivots = rref_in_place(&mut rows, 2 * n);
        let meet = pivots.iter().enumerate().filter(|(_, &p)| p >= n).map(|(i, _)| rows[i][n..].to_vec()).collect();
        Self::span(n, meet)
    }

    /// Tensor product `self ⊗ other` inside `F^(a·b)`, left factor slow.
    ///
    /// The Kronecker product of two reduced echelon bases is again reduced
    /// echelon, so no elimination is needed.
    pub fn tensor(&self, other: &Self) -> Self {
        let (a, b) = (self.ambient_dim(), other.ambient_dim());
        let mut data = Vec::with_capacity(self.dim() * other.dim() * a * b);
        for i in 0..self.dim() {
            for k in 0..other.dim() {
                for x in self.basis.row(i) {
                    for y in other.basis.row(k) {
                        data.push(if x.is_zero() || y.is_zero() { F::zero() } else { x.times(y) });
                    }
                }
            }
        }
        let basis = Matrix::from_vec(self.dim() * other.dim(), a * b, data).expect("sized");
        Self::from_rref_unchecked(basis)
    }

    /// Image under the coordinate permutation `e_j ↦ e_{perm[j]}`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<Self, LinalgError> {
        if perm.len() != self.ambient_dim() {
            return Err(LinalgError::AmbientMismatch { left: self.ambient_dim(), right: perm.len() });
        }
        let rows = (0..self.dim())
            .map(|i| {
                let mut v = vec![F::zero(); perm.len()];
                for (j, e) in self.basis.row(i).iter().enumerate() {
                    v[perm[j]] = e.clone();
                }
                v
            })
            .collect();
        Self::span(perm.len(), rows)
    }

    /// Image under a linear map given by its matrix (acting on column vectors).
    pub fn image_under(&self, m: &Matrix<F>) -> Result<Self, LinalgError> {
        if m.cols() != self.ambient_dim() {
            return Err(LinalgError::AmbientMismatch { left: m.cols(), right: self.ambient_dim() });
        }
        let rows = (0..self.dim()).map(|i| m.apply(self.basis.row(i))).collect();
        Self::span(m.rows(), rows)
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> Subspace<G> {
        Subspace::row_space(&self.basis.map(f))
    }
}

impl<F: Field> fmt::Display for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.basis.row(i).iter().map(ToString::to_string).collect();
            write!(f, "({})", row.join(", "))?;
        }
        write!(f, "}} in dim {}", self.ambient_dim())
    }
}

/// Null space `{x : m·x = 0}`.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let cols = m.cols();
    let mut rows = m.row_vecs();
    let pivots = rref_in_place(&mut rows, cols);
    let mut is_pivot = vec![None; cols];
    for (r, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(r);
    }
    let vectors = (0..cols)
        .filter(|&f| is_pivot[f].is_none())
        .map(|f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                let e = &rows[r][f];
                if !e.is_zero() {
                    v[p] = e.negated();
                }
            }
            v
        })
        .collect();
    Subspace::span(cols, vectors).expect("kernel vectors have matrix width")
}

/// Column space of `m`.
pub fn image<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    Subspace::row_space(&m.transpose())
}

/// True iff the parts are independent and together fill the ambient space.
pub fn is_direct_sum<F: Field>(parts: &[Subspace<F>]) -> Result<bool, LinalgError> {
    let Some(first) = parts.first() else { return Ok(false) };
    let ambient = first.ambient_dim();
    let mut total = Subspace::zero(ambient);
    let mut dims = 0;
    for p in parts {
        total = total.sum(p)?;
        dims += p.dim();
    }
    Ok(dims == total.dim() && dims == ambient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{parse_scalar, RatFun};

    fn v(xs: &[&str]) -> Vec<RatFun> {
        xs.iter().map(|s| parse_scalar(s).unwrap()).collect()
    }

    fn e(n: usize, i: usize) -> Vec<RatFun> {
        (0..n).map(|j| if i == j { RatFun::one() } else { RatFun::zero() }).collect()
    }

    fn span(n: usize, vs: Vec<Vec<RatFun>>) -> Subspace<RatFun> {
        Subspace::span(n, vs).unwrap()
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        assert!(kernel(&Matrix::<RatFun>::zeros(2, 2)).is_full());
    }

    #[test]
    fn image_of_identity_is_everything() {
        assert!(image(&Matrix::<RatFun>::identity(4)).is_full());
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = Matrix::from_rows(2, vec![v(&["1", "-q"])]).unwrap();
        let k = kernel(&m);
        assert_eq!(k, span(2, vec![v(&["q", "1"])]));
        assert_eq!(k.basis().row(0), v(&["1", "1/q"]).as_slice());
    }

    #[test]
    fn lattice_examples() {
        let x = span(3, vec![v(&["1", "q", "2"])]);
        assert_eq!(x.sum(&x).unwrap(), x);
        assert!(span(3, vec![e(3, 0)]).intersect(&span(3, vec![e(3, 1)])).unwrap().is_zero());
        let a = span(3, vec![e(3, 0), e(3, 1)]);
        let b = span(3, vec![e(3, 1), e(3, 2)]);
        assert!(a.sum(&b).unwrap().is_full());
        assert_eq!(a.intersect(&b).unwrap(), span(3, vec![e(3, 1)]));
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let a = Subspace::<RatFun>::full(2);
        let b = Subspace::<RatFun>::full(3);
        assert_eq!(a.sum(&b), Err(LinalgError::AmbientMismatch { left: 2, right: 3 }));
        assert!(a.intersect(&b).is_err());
        assert!(is_direct_sum(&[a, b]).is_err());
    }

    #[test]
    fn direct_sums() {
        let e1 = span(2, vec![e(2, 0)]);
        let e2 = span(2, vec![e(2, 1)]);
        let diag = span(2, vec![v(&["1", "1"])]);
        assert!(is_direct_sum(&[e1.clone(), e2.clone()]).unwrap());
        assert!(!is_direct_sum(&[e1, diag, e2]).unwrap());
    }

    #[test]
    fn symmetric_plus_antisymmetric_in_dim_four() {
        let sym = span(4, vec![v(&["1", "0", "0", "0"]), v(&["0", "1", "1", "0"]), v(&["0", "0", "0", "1"])]);
        let anti = span(4, vec![v(&["0", "1", "-1", "0"])]);
        assert!(is_direct_sum(&[sym, anti]).unwrap());
    }

    #[test]
    fn tensor_of_rref_is_rref() {
        let a = span(2, vec![v(&["1", "q"])]);
        let b = span(3, vec![v(&["1", "0", "2"]), v(&["0", "1", "q"])]);
        let t = a.tensor(&b);
        assert_eq!(t.dim(), 2);
        assert_eq!(Subspace::row_space(t.basis()), t);
    }
}
