//! Brute-force oracles and random generators shared by the integration
//! tests. Nothing here calls the library's elimination or subspace code.
#![allow(dead_code)]

use rand::Rng;
use ybx_core::{Field, Matrix, Rational};

pub fn rat(n: i64) -> Rational {
    Rational::from_int(n)
}

/// Rank by plain Gaussian elimination, first nonzero pivot.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone() / pivot.clone();
            let (top, rest) = rows.split_at_mut(i);
            for (x, y) in rest[0][c..].iter_mut().zip(&top[r][c..]) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        r += 1;
    }
    r
}

/// `dim V^⊗k / J^k` for `k ≤ k_max`, from the full spanning set
/// `{e_u ⊗ v ⊗ e_w}` of `J^k` in one pass per degree.
pub fn hilbert_oracle(n: usize, j_basis: &[Vec<Rational>], k_max: usize) -> Vec<usize> {
    let mut dims = vec![1, n];
    for k in 2..=k_max {
        let total = n.pow(k as u32);
        let mut rows = Vec::new();
        for i in 0..k - 1 {
            let (left, right) = (n.pow(i as u32), n.pow((k - i - 2) as u32));
            for u in 0..left {
                for v in j_basis {
                    for w in 0..right {
                        let mut row = vec![rat(0); total];
                        for (x, coeff) in v.iter().enumerate() {
                            row[(u * n * n + x) * right + w] = coeff.clone();
                        }
                        rows.push(row);
                    }
                }
            }
        }
        dims.push(total - rank(rows));
    }
    dims
}

pub fn random_vectors(rng: &mut impl Rng, count: usize, len: usize) -> Vec<Vec<Rational>> {
    (0..count).map(|_| (0..len).map(|_| rat(rng.gen_range(-3..=3))).collect()).collect()
}

/// Sparse-ish random vectors, so small-rank phenomena actually occur.
pub fn random_sparse_vectors(rng: &mut impl Rng, count: usize, len: usize) -> Vec<Vec<Rational>> {
    (0..count)
        .map(|_| (0..len).map(|_| if rng.gen_bool(0.35) { rat(rng.gen_range(-2..=2)) } else { rat(0) }).collect())
        .collect()
}

/// Random invertible integer matrix `P` (retries until invertible).
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix<Rational> {
    loop {
        let data = (0..n * n).map(|_| rat(rng.gen_range(-2..=2))).collect();
        let p = Matrix::from_vec(n, n, data).unwrap();
        if rank(p.row_vecs()) == n {
            return p;
        }
    }
}

/// `P · diag(d) · P⁻¹`.
pub fn conjugated_diagonal(p: &Matrix<Rational>, d: &[Rational]) -> Matrix<Rational> {
    let inv = p.inverse().unwrap();
    &(p * &Matrix::diagonal(d)) * &inv
}

/// Number of standard Young tableaux of shape `lambda` (hook length formula).
pub fn standard_tableaux(lambda: &[usize]) -> u64 {
    let n: usize = lambda.iter().sum();
    let mut hooks: u64 = 1;
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&r| r > j).count();
            hooks *= (arm + leg + 1) as u64;
        }
    }
    (1..=n as u64).product::<u64>() / hooks
}

/// Partitions of `n` with at most `rows` parts.
pub fn partitions(n: usize, rows: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, rows: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        if rows == 0 {
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, rows - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, rows, &mut Vec::new(), &mut out);
    out
}

/// `Σ (f^λ)²` over partitions of `k` with at most `n` rows: the dimension
/// of the image of the symmetric group algebra in `End(V^⊗k)`, `dim V = n`.
pub fn schur_weyl_dim(n: usize, k: usize) -> u64 {
    partitions(k, n).iter().map(|l| standard_tableaux(l).pow(2)).sum()
}
