//! Tensor-space bookkeeping on `V^⊗k`.
//!
//! Basis tensors `e_{i1} ⊗ … ⊗ e_{ik}` are ordered lexicographically with the
//! first factor most significant, the same convention as [`Matrix::kron`].
//! Duals carry the dual basis; `V` and `V*` are never identified.

use crate::field::Field;
use crate::linalg::{kernel, LinalgError, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("position {i} out of range for V^⊗{k} (need 1 ≤ i ≤ k-1)")]
    Bounds { i: usize, k: usize },
    #[error("operator is {rows}x{cols}, expected {expected}x{expected}")]
    OperatorShape { rows: usize, cols: usize, expected: usize },
    #[error("ambient dimension {0} is not a perfect square")]
    NotASquare(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Where to put a two-site operator: positions `i, i+1` of `V^⊗k`, `dim V = n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlacementSpec {
    pub n: usize,
    pub k: usize,
    pub i: usize,
}

impl PlacementSpec {
    pub fn new(n: usize, k: usize, i: usize) -> Result<Self, TensorError> {
        if i == 0 || i + 1 > k {
            return Err(TensorError::Bounds { i, k });
        }
        Ok(PlacementSpec { n, k, i })
    }
}

pub fn kron<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.kron(b)
}

/// `id^⊗(i-1) ⊗ s ⊗ id^⊗(k-i-1)`.
pub fn place<F: Field>(s: &Matrix<F>, spec: PlacementSpec) -> Result<Matrix<F>, TensorError> {
    let PlacementSpec { n, k, i } = spec;
    if i == 0 || i + 1 > k {
        return Err(TensorError::Bounds { i, k });
    }
    let nn = n * n;
    if s.rows() != nn || s.cols() != nn {
        return Err(TensorError::OperatorShape { rows: s.rows(), cols: s.cols(), expected: nn });
    }
    let left = Matrix::identity(n.pow(i as u32 - 1));
    let right = Matrix::identity(n.pow((k - i - 1) as u32));
    Ok(left.kron(s).kron(&right))
}

/// The flip `u ⊗ v ↦ v ⊗ u` on `V ⊗ V`.
pub fn flip<F: Field>(n: usize) -> Matrix<F> {
    let perm: Vec<usize> = (0..n * n).map(|idx| (idx % n) * n + idx / n).collect();
    Matrix::permutation(&perm)
}

/// Functionals vanishing on `x`, in dual-basis coordinates.
pub fn annihilator<F: Field>(x: &Subspace<F>) -> Subspace<F> {
    kernel(x.basis())
}

pub(crate) fn isqrt_exact(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r.checked_mul(r) == Some(n)).then_some(r)
}

fn check_k(k: usize) -> Result<(), TensorError> {
    if k < 2 {
        return Err(TensorError::Bounds { i: 1, k });
    }
    Ok(())
}

/// `J^k = Σ_i V^⊗(i-1) ⊗ J ⊗ V^⊗(k-i-1)`.
///
/// Built from `J^k = J^(k-1) ⊗ V + V^⊗(k-2) ⊗ J`.
pub fn iterated_sum<F: Field>(j: &Subspace<F>, k: usize) -> Result<Subspace<F>, TensorError> {
    check_k(k)?;
    let n = isqrt_exact(j.ambient_dim()).ok_or(TensorError::NotASquare(j.ambient_dim()))?;
    let v = Subspace::full(n);
    let mut acc = j.clone();
    for d in 3..=k {
        let left = acc.tensor(&v);
        let right = Subspace::full(n.pow(d as u32 - 2)).tensor(j);
        acc = left.sum(&right)?;
    }
    Ok(acc)
}

/// `I^(k) = ∩_i V^⊗(i-1) ⊗ I ⊗ V^⊗(k-i-1)`.
///
/// Built from `I^(k) = I^(k-1) ⊗ V ∩ V^⊗(k-2) ⊗ I`.
pub fn iterated_intersection<F: Field>(i: &Subspace<F>, k: usize) -> Result<Subspace<F>, TensorError> {
    check_k(k)?;
    let n = isqrt_exact(i.ambient_dim()).ok_or(TensorError::NotASquare(i.ambient_dim()))?;
    let v = Subspace::full(n);
    let mut acc = i.clone();
    for d in 3..=k {
        let left = acc.tensor(&v);
        let right = Subspace::full(n.pow(d as u32 - 2)).tensor(i);
        acc = left.intersect(&right)?;
    }
    Ok(acc)
}

/// Index map for `V⊗V⊗V*⊗V* → V⊗V*⊗V⊗V*`, swapping the middle factors:
/// position of `(a,b,c,d)` goes to the position of `(a,c,b,d)`.
pub fn shuffle_23_permutation(n: usize) -> Vec<usize> {
    let mut perm = vec![0; n.pow(4)];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    perm[((a * n + b) * n + c) * n + d] = ((a * n + c) * n + b) * n + d;
                }
            }
        }
    }
    perm
}

/// The factor swap `σ_{2,3}` as an `n⁴×n⁴` permutation matrix.
pub fn shuffle_23<F: Field>(n: usize) -> Matrix<F> {
    Matrix::permutation(&shuffle_23_permutation(n))
}

/// Positions (1-based) of the reduced word
/// `(s_m … s_1)(s_{m+1} … s_2) … (s_{2m-1} … s_m)` exchanging two blocks of
/// `m` strands.
pub fn block_exchange_word(m: usize) -> Vec<usize> {
    (0..m).flat_map(|g| (g + 1..=g + m).rev()).collect()
}

/// The induced operator on `V^⊗m ⊗ V^⊗m`: product of placed copies of `s`
/// along [`block_exchange_word`].
pub fn cable_symmetry<F: Field>(s: &Matrix<F>, n: usize, m: usize) -> Result<Matrix<F>, TensorError> {
    if m == 0 {
        return Err(TensorError::Bounds { i: 0, k: 0 });
    }
    let k = 2 * m;
    let mut acc = Matrix::identity(n.pow(k as u32));
    for i in block_exchange_word(m) {
        acc = &acc * &place(s, PlacementSpec::new(n, k, i)?)?;
    }
    Ok(acc)
}
