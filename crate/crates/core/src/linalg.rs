//! Exact elimination: RREF, rank, inverse, full-rank factorization and the
//! Euclidean Moore-Penrose inverse.
//!
//! Pivoting picks the top-most nonzero entry in the left-most unfinished
//! column; in exact arithmetic no magnitude pivoting is needed and the output
//! is deterministic.

use crate::error::{Error, Result};
use crate::matrix::{hstack, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form with pivot columns and rank.
pub fn rref(a: &Matrix) -> Rref {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.at(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let one = crate::scalar::GaussianRational::one();
        if m.at(r, c) != &one {
            let inv = m.at(r, c).recip().expect("pivot is nonzero");
            for j in c..cols {
                let v = m.at(r, j) * &inv;
                *m.at_mut(r, j) = v;
            }
        }
        for i in 0..rows {
            if i == r || m.at(i, c).is_zero() {
                continue;
            }
            let factor = m.at(i, c).clone();
            if factor == one {
                for j in c..cols {
                    let v = m.at(i, j) - m.at(r, j);
                    *m.at_mut(i, j) = v;
                }
            } else {
                for j in c..cols {
                    let v = m.at(i, j) - &(&factor * m.at(r, j));
                    *m.at_mut(i, j) = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        reduced: m,
        pivots,
        rank: r,
    }
}

pub fn rank(a: &Matrix) -> usize {
    rref(a).rank
}

/// Exact inverse of a square matrix.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::Dimension("inverse requires a square matrix".into()));
    }
    let n = a.rows();
    let aug = hstack(a, &Matrix::identity(n))?;
    let red = rref(&aug);
    if red.rank < n || red.pivots.iter().take(n).copied().ne(0..n) {
        return Err(Error::Singular);
    }
    let mut out = Matrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            *out.at_mut(i, j) = red.reduced.at(i, j + n).clone();
        }
    }
    Ok(out)
}

/// `A = F * G` with `F` of full column rank and `G` of full row rank, both of
/// rank `rank(A)`. `None` for the zero matrix (rank 0), which callers treat
/// as a special case.
pub fn full_rank_factorization(a: &Matrix) -> Option<(Matrix, Matrix)> {
    let red = rref(a);
    if red.rank == 0 {
        return None;
    }
    let r = red.rank;
    let mut f = Matrix::zero(a.rows(), r);
    for (k, &c) in red.pivots.iter().enumerate() {
        for i in 0..a.rows() {
            *f.at_mut(i, k) = a.at(i, c).clone();
        }
    }
    let mut g = Matrix::zero(r, a.cols());
    for i in 0..r {
        for j in 0..a.cols() {
            *g.at_mut(i, j) = red.reduced.at(i, j).clone();
        }
    }
    Some((f, g))
}

/// Euclidean Moore-Penrose inverse, exact over Q(i):
/// `A+ = G* (G G*)^-1 (F* F)^-1 F*` from the full-rank factorization.
pub fn euclidean_pinv(a: &Matrix) -> Matrix {
    let Some((f, g)) = full_rank_factorization(a) else {
        return Matrix::zero(a.cols(), a.rows());
    };
    let fs = f.conj_transpose();
    let gs = g.conj_transpose();
    let ggs_inv = inverse(&g.mul(&gs).expect("shape")).expect("G G* has full rank");
    let fsf_inv = inverse(&fs.mul(&f).expect("shape")).expect("F* F has full rank");
    gs.mul(&ggs_inv)
        .and_then(|x| x.mul(&fsf_inv))
        .and_then(|x| x.mul(&fs))
        .expect("shape")
}

/// `true` iff `R(x) ⊆ R(y)`, decided by `rank([y x]) == rank(y)`.
pub fn range_contains(y: &Matrix, x: &Matrix) -> Result<bool> {
    if y.rows() != x.rows() {
        return Err(Error::Dimension(format!(
            "range_contains: {} vs {} rows",
            y.rows(),
            x.rows()
        )));
    }
    Ok(rank(&hstack(y, x)?) == rank(y))
}

/// Index of a square matrix: least `p >= 1` with `rank(A^p) == rank(A^{p+1})`.
pub fn index(a: &Matrix) -> Result<u32> {
    if !a.is_square() {
        return Err(Error::Dimension("index requires a square matrix".into()));
    }
    let mut p = 1;
    let mut cur = a.clone();
    loop {
        let next = cur.mul(a)?;
        if rank(&cur) == rank(&next) {
            return Ok(p);
        }
        cur = next;
        p += 1;
    }
}

/// All four Euclidean Penrose equations, exactly.
pub fn is_euclidean_pinv_of(a: &Matrix, x: &Matrix) -> bool {
    let Ok(ax) = a.mul(x) else { return false };
    let Ok(xa) = x.mul(a) else { return false };
    a.mul(&xa).map(|m| m == *a).unwrap_or(false)
        && x.mul(&ax).map(|m| m == *x).unwrap_or(false)
        && ax.conj_transpose() == ax
        && xa.conj_transpose() == xa
}
