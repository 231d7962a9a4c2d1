//! The MN-adjoint and the Moore-Penrose inverse between indefinite inner
//! product spaces.
//!
//! For `A: C^n -> C^m` with weights `M` (codomain) and `N` (domain), the
//! adjoint is `A^[*] = N^-1 A* M`. The Moore-Penrose inverse `A^[dag]`, when
//! it exists, is the unique `X` with
//!
//!   (1) AXA = A   (2) XAX = X   (3) (AX)^[*] = AX   (4) (XA)^[*] = XA
//!
//! and it exists iff `rank(A) = rank(A A^[*]) = rank(A^[*] A)`. The inverse
//! is computed through the full-rank factorization `A = FG`:
//! `X = G^[*] (F^[*] A G^[*])^-1 F^[*]`, where the middle factor is
//! invertible exactly when the rank criterion holds. Every returned inverse
//! is re-verified against the four equations before it leaves this module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{full_rank_factorization, inverse, range_contains, rank};
use crate::matrix::Matrix;
use crate::weight::Weight;

/// `A^[*] = N^-1 A* M`.
pub fn adjoint(a: &Matrix, m: &Weight, n: &Weight) -> Result<Matrix> {
    if a.rows() != m.order() || a.cols() != n.order() {
        return Err(Error::Dimension(format!(
            "adjoint: {}x{} matrix with weights of orders {} and {}",
            a.rows(),
            a.cols(),
            m.order(),
            n.order()
        )));
    }
    n.h_inverse().mul(&a.conj_transpose())?.mul(m.h())
}

/// `A^[*] = A` for square `A` under the single weight `N`.
pub fn is_w_hermitian(a: &Matrix, n: &Weight) -> Result<bool> {
    Ok(adjoint(a, n, n)? == *a)
}

/// `R(A) = R(A^[*])` for square `A` under the single weight `N`.
pub fn is_range_hermitian(a: &Matrix, n: &Weight) -> Result<bool> {
    let adj = adjoint(a, n, n)?;
    Ok(range_contains(a, &adj)? && range_contains(&adj, a)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpResult {
    pub exists: bool,
    pub inverse: Option<Matrix>,
    pub rank_a: usize,
    pub rank_aastar: usize,
    pub rank_astara: usize,
}

fn existence_ranks(a: &Matrix, m: &Weight, n: &Weight) -> Result<(usize, usize, usize)> {
    let adj = adjoint(a, m, n)?;
    let aas = a.mul(&adj)?;
    let asa = adj.mul(a)?;
    Ok((rank(a), rank(&aas), rank(&asa)))
}

/// Existence test only: `A^[dag]` exists iff the three ranks agree.
pub fn mp_exists(a: &Matrix, m: &Weight, n: &Weight) -> Result<MpResult> {
    let (ra, raas, rasa) = existence_ranks(a, m, n)?;
    Ok(MpResult {
        exists: ra == raas && ra == rasa,
        inverse: None,
        rank_a: ra,
        rank_aastar: raas,
        rank_astara: rasa,
    })
}

/// Full computation. `exists == false` leaves `inverse` empty; the ranks are
/// always reported.
pub fn mp_inverse(a: &Matrix, m: &Weight, n: &Weight) -> Result<MpResult> {
    let mut res = mp_exists(a, m, n)?;
    if !res.exists {
        return Ok(res);
    }
    if res.rank_a == 0 {
        res.inverse = Some(Matrix::zero(a.cols(), a.rows()));
        return Ok(res);
    }
    let (f, g) = full_rank_factorization(a).expect("rank > 0");
    // F: m x r under (M, I_r); G: r x n under (I_r, N)
    let f_adj = f.conj_transpose().mul(m.h())?;
    let g_adj = n.h_inverse().mul(&g.conj_transpose())?;
    let middle = f_adj.mul(a)?.mul(&g_adj)?;
    let middle_inv = inverse(&middle).map_err(|_| {
        Error::InternalInconsistency(
            "rank criterion holds but middle factor is singular".into(),
        )
    })?;
    let x = g_adj.mul(&middle_inv)?.mul(&f_adj)?;
    let residuals = penrose_residuals(a, &x, m, n)?;
    if residuals != [true; 4] {
        return Err(Error::InternalInconsistency(format!(
            "computed inverse fails Penrose equations: {residuals:?}"
        )));
    }
    res.inverse = Some(x);
    Ok(res)
}

/// Convenience: the inverse matrix itself, or `NotExists`.
pub fn mp_inverse_matrix(a: &Matrix, m: &Weight, n: &Weight) -> Result<Matrix> {
    let res = mp_inverse(a, m, n)?;
    res.inverse.ok_or_else(|| {
        Error::NotExists(format!(
            "ranks {} / {} / {}",
            res.rank_a, res.rank_aastar, res.rank_astara
        ))
    })
}

/// Exact residual flags for the four Penrose equations of the pair `(A, X)`.
pub fn penrose_residuals(a: &Matrix, x: &Matrix, m: &Weight, n: &Weight) -> Result<[bool; 4]> {
    if x.rows() != a.cols() || x.cols() != a.rows() {
        return Err(Error::Dimension(format!(
            "penrose_residuals: A is {}x{} but X is {}x{}",
            a.rows(),
            a.cols(),
            x.rows(),
            x.cols()
        )));
    }
    let ax = a.mul(x)?;
    let xa = x.mul(a)?;
    Ok([
        a.mul(&xa)? == *a,
        x.mul(&ax)? == *x,
        adjoint(&ax, m, m)? == ax,
        adjoint(&xa, n, n)? == xa,
    ])
}

/// The six standing properties of an existing Moore-Penrose inverse:
///
/// (i)   `A^[*] = A^[*] A A^[dag] = A^[dag] A A^[*]`
/// (ii)  `(A^[*])^[dag] = (A^[dag])^[*]`
/// (iii) `(A A^[*])^[dag]` and `(A^[*] A)^[dag]` exist and factor through
///       `A^[dag]` and `(A^[*])^[dag]`
/// (iv)  `A^[dag] = A^[*] (A A^[*])^[dag] = (A^[*] A)^[dag] A^[*]`
/// (v)   `(A A^[*])^[dag] (A A^[*]) A = A = (A A^[*]) (A A^[*])^[dag] A`
/// (vi)  `(A A^[*])^[dag]` commutes with `A A^[*]`
pub fn mp_property_report(a: &Matrix, m: &Weight, n: &Weight) -> Result<[bool; 6]> {
    let ad = mp_inverse(a, m, n)?
        .inverse
        .ok_or_else(|| Error::NotExists("mp_property_report requires A^[dag]".into()))?;
    let adj = adjoint(a, m, n)?;
    let aas = a.mul(&adj)?;
    let asa = adj.mul(a)?;

    let p1 = adj == adj.mul(a)?.mul(&ad)? && adj == ad.mul(a)?.mul(&adj)?;

    // A^[*] maps C^m -> C^n, so its weights are (N, M).
    let adj_dag = mp_inverse(&adj, n, m)?;
    let ad_adj = adjoint(&ad, n, m)?;
    let p2 = adj_dag.inverse.as_ref() == Some(&ad_adj);

    let aas_dag = mp_inverse(&aas, m, m)?;
    let asa_dag = mp_inverse(&asa, n, n)?;
    let p3 = match (&aas_dag.inverse, &asa_dag.inverse, &adj_dag.inverse) {
        (Some(aasd), Some(asad), Some(adjd)) => {
            *aasd == adjd.mul(&ad)? && *asad == ad.mul(adjd)?
        }
        _ => false,
    };

    let (p4, p5, p6) = match (&aas_dag.inverse, &asa_dag.inverse) {
        (Some(aasd), Some(asad)) => {
            let p4 = ad == adj.mul(aasd)? && ad == asad.mul(&adj)?;
            let p5 =
                aasd.mul(&aas)?.mul(a)? == *a && aas.mul(aasd)?.mul(a)? == *a;
            let p6 = aasd.mul(&aas)? == aas.mul(aasd)?;
            (p4, p5, p6)
        }
        _ => (false, false, false),
    };

    Ok([p1, p2, p3, p4, p5, p6])
}
