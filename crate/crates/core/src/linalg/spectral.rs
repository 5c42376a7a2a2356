use super::{image, kernel, LinalgError, Matrix, Subspace};
use crate::field::Field;
use crate::scalars::Poly;

/// Monic polynomial of least degree with `p(m) = 0`.
///
/// For each standard basis vector the Krylov sequence `v, mv, m²v, …` is run
/// until the first linear dependency, which gives the local annihilator of
/// `v`; the minimal polynomial is the lcm of those. Vectors already killed by
/// the running lcm are skipped.
pub fn minimal_polynomial<F: Field>(m: &Matrix<F>) -> Result<Poly<F>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut acc = Poly::one();
    for j in 0..n {
        let mut e = vec![F::zero(); n];
        e[j] = F::one();
        if acc.degree().unwrap_or(0) > 0 && apply_poly(m, &acc, &e).iter().all(F::is_zero) {
            continue;
        }
        let local = local_annihilator(m, e);
        acc = acc.lcm(&local);
        if acc.degree() == Some(n) {
            break;
        }
    }
    Ok(acc)
}

fn apply_poly<F: Field>(m: &Matrix<F>, p: &Poly<F>, v: &[F]) -> Vec<F> {
    let mut acc = vec![F::zero(); v.len()];
    for c in p.coeffs().iter().rev() {
        acc = m.apply(&acc);
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() && !c.is_zero() {
                *a = a.plus(&c.times(x));
            }
        }
    }
    acc
}

/// Monic generator of `{p : p(m)v = 0}`.
fn local_annihilator<F: Field>(m: &Matrix<F>, v: Vec<F>) -> Poly<F> {
    // Each entry: pivot column, reduced vector (pivot entry 1), and the
    // polynomial `c` with reduced vector = c(m)·v.
    let mut echelon: Vec<(usize, Vec<F>, Poly<F>)> = Vec::new();
    let mut power = v;
    let mut degree = 0;
    loop {
        let mut w = power.clone();
        let mut poly = Poly::monomial(F::one(), degree);
        for (p, row, c) in &echelon {
            if w[*p].is_zero() {
                continue;
            }
            let factor = w[*p].clone();
            for (wi, ri) in w.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *wi = wi.minus(&factor.times(ri));
                }
            }
            poly = &poly - &c.scale(&factor);
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => return poly,
            Some(p) => {
                let inv = w[p].inverse().unwrap();
                let row = w.iter().map(|x| x.times(&inv)).collect();
                echelon.push((p, row, poly.scale(&inv)));
            }
        }
        power = m.apply(&power);
        degree += 1;
    }
}

/// `L = Σ Im(B_i − λ_i)` and `K = ∩ Ker(B_i − λ_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LkDecomposition<F> {
    pub l: Subspace<F>,
    pub k: Subspace<F>,
    pub is_direct: bool,
}

pub fn lk_decomposition<F: Field>(ops: &[Matrix<F>], lambdas: &[F]) -> Result<LkDecomposition<F>, LinalgError> {
    if ops.len() != lambdas.len() {
        return Err(LinalgError::Shape { expected: ops.len(), found: lambdas.len() });
    }
    let Some(first) = ops.first() else {
        return Err(LinalgError::Shape { expected: 1, found: 0 });
    };
    let n = first.rows();
    if let Some(bad) = ops.iter().find(|b| !b.is_square() || b.rows() != n) {
        return Err(LinalgError::NotSquare { rows: bad.rows(), cols: bad.cols() });
    }
    let mut l = Subspace::zero(n);
    let mut k = Subspace::full(n);
    for (b, lambda) in ops.iter().zip(lambdas) {
        let shifted = b.shift(lambda);
        l = l.sum(&image(&shifted))?;
        k = k.intersect(&kernel(&shifted))?;
    }
    let is_direct = l.dim() + k.dim() == n && l.intersect(&k)?.is_zero();
    Ok(LkDecomposition { l, k, is_direct })
}
