//! Reverse-order-law analysis for a pair `A: C^n -> C^m`, `B: C^l -> C^n`
//! under weights `(M, N, L)`: the four Greville-type conditions, the block
//! rank criterion, the full classification report, and the block-diagonal
//! Moore-Penrose construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{range_contains, rank};
use crate::matrix::{block_assemble, hstack, Matrix};
use crate::mp::{adjoint, is_range_hermitian, mp_inverse, mp_inverse_matrix};
use crate::weight::{Weight, WeightTriple};

fn check_pair_dims(a: &Matrix, b: &Matrix, w: &WeightTriple) -> Result<()> {
    if a.rows() != w.m.order() || a.cols() != w.n.order() {
        return Err(Error::Dimension(format!(
            "A is {}x{} but (M, N) have orders {} and {}",
            a.rows(),
            a.cols(),
            w.m.order(),
            w.n.order()
        )));
    }
    if b.rows() != w.n.order() || b.cols() != w.l.order() {
        return Err(Error::Dimension(format!(
            "B is {}x{} but (N, L) have orders {} and {}",
            b.rows(),
            b.cols(),
            w.n.order(),
            w.l.order()
        )));
    }
    Ok(())
}

struct PairContext {
    a_adj: Matrix,   // A^[*], n x m
    b_adj: Matrix,   // B^[*], l x n
    a_dag: Matrix,   // A^[dag], n x m
    b_dag: Matrix,   // B^[dag], l x n
    asa: Matrix,     // A^[*] A, n x n
    bbs: Matrix,     // B B^[*], n x n
}

fn pair_context(a: &Matrix, b: &Matrix, w: &WeightTriple) -> Result<PairContext> {
    check_pair_dims(a, b, w)?;
    let a_dag = mp_inverse_matrix(a, &w.m, &w.n)
        .map_err(|_| Error::NotExists("A^[dag] does not exist".into()))?;
    let b_dag = mp_inverse_matrix(b, &w.n, &w.l)
        .map_err(|_| Error::NotExists("B^[dag] does not exist".into()))?;
    let a_adj = adjoint(a, &w.m, &w.n)?;
    let b_adj = adjoint(b, &w.n, &w.l)?;
    let asa = a_adj.mul(a)?;
    let bbs = b.mul(&b_adj)?;
    Ok(PairContext {
        a_adj,
        b_adj,
        a_dag,
        b_dag,
        asa,
        bbs,
    })
}

/// The four equivalent Greville-type conditions. Requires both `A^[dag]` and
/// `B^[dag]` to exist.
///
/// (i)   `A^[*] A B B^[*]` is N-range Hermitian
/// (ii)  `R(A^[*] A B) ⊆ R(B)` and `R(B B^[*] A^[*]) ⊆ R(A^[*])`
/// (iii) `B B^[dag] A^[*] A` and `A^[dag] A B B^[*]` are N-range Hermitian
/// (iv)  `B B^[dag] A^[*] A B = A^[*] A B` and
///       `A^[dag] A B B^[*] A^[*] = B B^[*] A^[*]`
pub fn greville_conditions(a: &Matrix, b: &Matrix, w: &WeightTriple) -> Result<[bool; 4]> {
    let ctx = pair_context(a, b, w)?;
    let asab = ctx.asa.mul(b)?; // A^[*] A B, n x l
    let bbsas = ctx.bbs.mul(&ctx.a_adj)?; // B B^[*] A^[*], n x m

    let c1 = is_range_hermitian(&ctx.asa.mul(&ctx.bbs)?, &w.n)?;

    let c2 = range_contains(b, &asab)? && range_contains(&ctx.a_adj, &bbsas)?;

    let bbdag = b.mul(&ctx.b_dag)?;
    let adaga = ctx.a_dag.mul(a)?;
    let c3 = is_range_hermitian(&bbdag.mul(&ctx.asa)?, &w.n)?
        && is_range_hermitian(&adaga.mul(&ctx.bbs)?, &w.n)?;

    let c4 = bbdag.mul(&asab)? == asab && adaga.mul(&bbsas)? == bbsas;

    Ok([c1, c2, c3, c4])
}

/// Block rank criterion: with `D = AB`,
/// `rank [[D, A A^[*] D], [D B^[*] B, D D^[*] D]] == rank(D)` decides the
/// reverse order law.
pub fn rol_rank_criterion(a: &Matrix, b: &Matrix, w: &WeightTriple) -> Result<bool> {
    let ctx = pair_context(a, b, w)?;
    let d = a.mul(b)?;
    let d_adj = adjoint(&d, &w.m, &w.l)?;
    let aas = a.mul(&ctx.a_adj)?;
    let bsb = ctx.b_adj.mul(b)?;
    let block = block_assemble(&[
        vec![d.clone(), aas.mul(&d)?],
        vec![d.mul(&bsb)?, d.mul(&d_adj)?.mul(&d)?],
    ])?;
    Ok(rank(&block) == rank(&d))
}

/// Premise of the closing conditional theorem:
/// `rank [[B^[*] A^[*], B^[*] B], [A A^[*], AB]] == rank [A^[*]  B]`.
pub fn rank_hypothesis(a: &Matrix, b: &Matrix, w: &WeightTriple) -> Result<bool> {
    check_pair_dims(a, b, w)?;
    let a_adj = adjoint(a, &w.m, &w.n)?;
    let b_adj = adjoint(b, &w.n, &w.l)?;
    let block = block_assemble(&[
        vec![b_adj.mul(&a_adj)?, b_adj.mul(b)?],
        vec![a.mul(&a_adj)?, a.mul(b)?],
    ])?;
    Ok(rank(&block) == rank(&hstack(&a_adj, b)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RolStatus {
    /// `(AB)^[dag]` does not exist.
    AbDagMissing,
    /// `(AB)^[dag] = B^[dag] A^[dag]`.
    HoldsEqual,
    /// `(AB)^[dag]` exists but differs from `B^[dag] A^[dag]`.
    ExistsButUnequal,
}

/// Full classification of a pair `(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RolReport {
    pub a_exists: bool,
    pub b_exists: bool,
    pub ab_exists: bool,
    /// The four Greville flags; `None` when either factor inverse is missing.
    pub greville: Option<[bool; 4]>,
    /// Block rank criterion; `None` when either factor inverse is missing.
    pub rank_criterion: Option<bool>,
    pub rank_hypothesis: bool,
    pub status: RolStatus,
    pub ab_dag: Option<Matrix>,
    pub bdag_adag: Option<Matrix>,
}

/// Classify a pair. Missing inverses are recorded in flags, never errors.
pub fn rol_classify(a: &Matrix, b: &Matrix, w: &WeightTriple) -> Result<RolReport> {
    check_pair_dims(a, b, w)?;
    let a_res = mp_inverse(a, &w.m, &w.n)?;
    let b_res = mp_inverse(b, &w.n, &w.l)?;
    let ab = a.mul(b)?;
    let ab_res = mp_inverse(&ab, &w.m, &w.l)?;

    let bdag_adag = match (&a_res.inverse, &b_res.inverse) {
        (Some(ad), Some(bd)) => Some(bd.mul(ad)?),
        _ => None,
    };
    let both = a_res.exists && b_res.exists;
    let greville = if both {
        Some(greville_conditions(a, b, w)?)
    } else {
        None
    };
    let rank_criterion = if both {
        Some(rol_rank_criterion(a, b, w)?)
    } else {
        None
    };
    let status = match (&ab_res.inverse, &bdag_adag) {
        (None, _) => RolStatus::AbDagMissing,
        (Some(abd), Some(rev)) if abd == rev => RolStatus::HoldsEqual,
        _ => RolStatus::ExistsButUnequal,
    };
    Ok(RolReport {
        a_exists: a_res.exists,
        b_exists: b_res.exists,
        ab_exists: ab_res.exists,
        greville,
        rank_criterion,
        rank_hypothesis: rank_hypothesis(a, b, w)?,
        status,
        ab_dag: ab_res.inverse,
        bdag_adag,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockLayout {
    Diag,
    Antidiag,
}

/// Moore-Penrose inverse of a 2x2 block matrix built from `A` (weights
/// `(wa_m, wa_n)`) and `B` (weights `(wb_m, wb_n)`), under the corresponding
/// block-diagonal weights. The result is asserted against the entrywise
/// block of the individual inverses:
///
///   diag:     [[A, 0], [0, B]]^[dag] = [[A^[dag], 0], [0, B^[dag]]]
///   antidiag: [[0, A], [B, 0]]^[dag] = [[0, B^[dag]], [A^[dag], 0]]
pub fn block_mp(
    a: &Matrix,
    b: &Matrix,
    wa: (&Weight, &Weight),
    wb: (&Weight, &Weight),
    layout: BlockLayout,
) -> Result<Matrix> {
    let a_dag = mp_inverse_matrix(a, wa.0, wa.1)
        .map_err(|_| Error::NotExists("A^[dag] does not exist".into()))?;
    let b_dag = mp_inverse_matrix(b, wb.0, wb.1)
        .map_err(|_| Error::NotExists("B^[dag] does not exist".into()))?;
    let zero = |r: usize, c: usize| Matrix::zero(r, c);
    let (t, codomain, domain, expected) = match layout {
        BlockLayout::Diag => (
            block_assemble(&[
                vec![a.clone(), zero(a.rows(), b.cols())],
                vec![zero(b.rows(), a.cols()), b.clone()],
            ])?,
            block_weight(wa.0, wb.0)?,
            block_weight(wa.1, wb.1)?,
            block_assemble(&[
                vec![a_dag.clone(), zero(a.cols(), b.rows())],
                vec![zero(b.cols(), a.rows()), b_dag.clone()],
            ])?,
        ),
        BlockLayout::Antidiag => (
            block_assemble(&[
                vec![zero(a.rows(), b.cols()), a.clone()],
                vec![b.clone(), zero(b.rows(), a.cols())],
            ])?,
            block_weight(wa.0, wb.0)?,
            block_weight(wb.1, wa.1)?,
            block_assemble(&[
                vec![zero(b.cols(), a.rows()), b_dag.clone()],
                vec![a_dag.clone(), zero(a.cols(), b.rows())],
            ])?,
        ),
    };
    let t_dag = mp_inverse_matrix(&t, &codomain, &domain).map_err(|_| {
        Error::InternalInconsistency("block MP inverse must exist when parts do".into())
    })?;
    if t_dag != expected {
        return Err(Error::InternalInconsistency(
            "block MP inverse differs from blockwise inverses".into(),
        ));
    }
    Ok(t_dag)
}

/// `diag(W1, W2)` as a weight.
pub fn block_weight(w1: &Weight, w2: &Weight) -> Result<Weight> {
    let h = block_assemble(&[
        vec![w1.h().clone(), Matrix::zero(w1.order(), w2.order())],
        vec![Matrix::zero(w2.order(), w1.order()), w2.h().clone()],
    ])?;
    Weight::validate(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    fn sig_triple() -> WeightTriple {
        let w = Weight::signature(&[1, -1]).unwrap();
        WeightTriple::new(w.clone(), w.clone(), w)
    }

    fn example2() -> (Matrix, Matrix) {
        (
            Matrix::ints(&[&[1, 2], &[0, 0]]),
            Matrix::ints(&[&[2, 1], &[0, 0]]),
        )
    }

    #[test]
    fn greville_example2_all_false() {
        let (a, b) = example2();
        let flags = greville_conditions(&a, &b, &sig_triple()).unwrap();
        assert_eq!(flags, [false; 4]);
    }

    #[test]
    fn greville_identity_all_true() {
        let w = WeightTriple::identity(2, 2, 2);
        let flags =
            greville_conditions(&Matrix::identity(2), &Matrix::identity(2), &w).unwrap();
        assert_eq!(flags, [true; 4]);
    }

    #[test]
    fn greville_projector_case_all_true() {
        // B = A^[dag]: AB is the projector A A^[dag]
        let w = sig_triple();
        let a = Matrix::ints(&[&[1, 2], &[0, 0]]);
        let b = mp_inverse_matrix(&a, &w.m, &w.n).unwrap();
        let flags = greville_conditions(&a, &b, &w).unwrap();
        assert_eq!(flags, [true; 4]);
    }

    #[test]
    fn greville_requires_existence() {
        let w = sig_triple();
        let a = Matrix::ints(&[&[1, 1], &[1, 0]]);
        let ab = a.mul(&Matrix::ints(&[&[0, 1], &[0, 0]])).unwrap();
        // AB has no MP inverse; using it as the A argument must error
        assert!(matches!(
            greville_conditions(&ab, &Matrix::identity(2), &w),
            Err(Error::NotExists(_))
        ));
    }

    #[test]
    fn rank_criterion_fixtures() {
        let w = sig_triple();
        let (a, b) = example2();
        assert!(!rol_rank_criterion(&a, &b, &w).unwrap());
        let wi = WeightTriple::identity(2, 2, 2);
        assert!(rol_rank_criterion(&Matrix::identity(2), &Matrix::identity(2), &wi).unwrap());
    }

    #[test]
    fn classify_example1() {
        let w = sig_triple();
        let a = Matrix::ints(&[&[1, 1], &[1, 0]]);
        let b = Matrix::ints(&[&[0, 1], &[0, 0]]);
        let rep = rol_classify(&a, &b, &w).unwrap();
        assert!(rep.a_exists && rep.b_exists && !rep.ab_exists);
        assert_eq!(rep.status, RolStatus::AbDagMissing);
        assert!(rep.ab_dag.is_none());
    }

    #[test]
    fn classify_example2() {
        let w = sig_triple();
        let (a, b) = example2();
        let rep = rol_classify(&a, &b, &w).unwrap();
        assert!(rep.ab_exists);
        assert_eq!(rep.status, RolStatus::ExistsButUnequal);
        assert_eq!(
            rep.ab_dag.unwrap(),
            Matrix::ints(&[&[2, 0], &[-1, 0]]).scale(&G::ratio(1, 3))
        );
        assert_eq!(
            rep.bdag_adag.unwrap(),
            Matrix::ints(&[&[2, 0], &[-1, 0]]).scale(&G::ratio(-1, 9))
        );
        // criterion false matches the failed law
        assert_eq!(rep.rank_criterion, Some(false));
    }

    #[test]
    fn classify_identity_holds() {
        let w = WeightTriple::identity(2, 2, 2);
        let rep = rol_classify(&Matrix::identity(2), &Matrix::identity(2), &w).unwrap();
        assert_eq!(rep.status, RolStatus::HoldsEqual);
        assert_eq!(rep.rank_criterion, Some(true));
        assert!(rep.rank_hypothesis);
    }

    #[test]
    fn classify_zero_product() {
        // D = AB = 0: HoldsEqual iff B^[dag] A^[dag] = 0
        let w = WeightTriple::identity(2, 2, 2);
        let a = Matrix::ints(&[&[1, 0], &[0, 0]]);
        let b = Matrix::ints(&[&[0, 0], &[0, 1]]);
        assert!(a.mul(&b).unwrap().is_zero());
        let rep = rol_classify(&a, &b, &w).unwrap();
        assert_eq!(rep.status, RolStatus::HoldsEqual);
    }

    #[test]
    fn block_mp_diag_example2() {
        let w = Weight::signature(&[1, -1]).unwrap();
        let (a, b) = example2();
        let got = block_mp(&a, &b, (&w, &w), (&w, &w), BlockLayout::Diag).unwrap();
        let ad = mp_inverse_matrix(&a, &w, &w).unwrap();
        let bd = mp_inverse_matrix(&b, &w, &w).unwrap();
        let expect = block_assemble(&[
            vec![ad, Matrix::zero(2, 2)],
            vec![Matrix::zero(2, 2), bd],
        ])
        .unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn block_mp_antidiag_identity() {
        let w = Weight::identity(2);
        let got = block_mp(
            &Matrix::identity(2),
            &Matrix::identity(2),
            (&w, &w),
            (&w, &w),
            BlockLayout::Antidiag,
        )
        .unwrap();
        let z = Matrix::zero(2, 2);
        let expect = block_assemble(&[
            vec![z.clone(), Matrix::identity(2)],
            vec![Matrix::identity(2), z],
        ])
        .unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn block_adjoint_is_adjoint_of_blocks() {
        // part (i) of the block lemma: computed through two routes
        let wm = Weight::signature(&[1, -1]).unwrap();
        let wn = Weight::identity(2);
        let a = Matrix::gauss(&[&[(1, 1), (0, 2)], &[(3, 0), (0, 0)]]);
        let b = Matrix::ints(&[&[2, 1], &[0, 1]]);
        let k = block_weight(&wm, &wn).unwrap();
        let l = block_weight(&wn, &wm).unwrap();
        let t = block_assemble(&[
            vec![a.clone(), Matrix::zero(2, 2)],
            vec![Matrix::zero(2, 2), b.clone()],
        ])
        .unwrap();
        let lhs = adjoint(&t, &k, &l).unwrap();
        let rhs = block_assemble(&[
            vec![adjoint(&a, &wm, &wn).unwrap(), Matrix::zero(2, 2)],
            vec![Matrix::zero(2, 2), adjoint(&b, &wn, &wm).unwrap()],
        ])
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn block_mp_missing_factor_errors() {
        let w = Weight::signature(&[1, -1]).unwrap();
        let a = Matrix::ints(&[&[1, 1], &[1, 0]]);
        let ab = a.mul(&Matrix::ints(&[&[0, 1], &[0, 0]])).unwrap();
        assert!(matches!(
            block_mp(&ab, &a, (&w, &w), (&w, &w), BlockLayout::Diag),
            Err(Error::NotExists(_))
        ));
    }
}
