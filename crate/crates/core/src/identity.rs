//! Machine-checked catalog of rank identities.
//!
//! Each identity computes its left and right side through independent code
//! paths (block assembly + elimination vs formula arithmetic) so that a
//! shared bug cannot mask a violation. Preconditions are checked, never
//! assumed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{euclidean_pinv, index, range_contains, rank};
use crate::matrix::{block_assemble, hstack, vstack, Matrix};
use crate::mp::{adjoint, is_w_hermitian, mp_inverse_matrix};
use crate::weight::WeightTriple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankIdentity {
    /// `rank [[A, AB], [CA, D]] = rank(A) + rank(D - CAB)`
    SchurGeneric,
    /// `rank [[A*AA*, A*B], [CA*, D]] = rank(A) + rank(D - C A+ B)` with the
    /// Euclidean pseudoinverse
    SchurEuclideanMP,
    /// Weighted version: `rank [[A^[*]AA^[*], A^[*]B], [CA^[*], D]]`, both
    /// block orientations, `= rank(A) + rank(D - C A^[dag] B)`
    SchurWeightedMP,
    /// If `rank [[A, B], [C, D]] = rank(A) = rank(B) = rank(C)` then
    /// `rank(A) = rank(D)`
    BlockRankabcd,
    /// With `ind(A) = 1` and `R(AB) ⊆ R(B)`:
    /// `rank(AB) = rank(A) + rank(B) - rank [A B]`
    RangeIntersection,
    /// Idempotent `P`, `Q`: commutator rank via stacked and side-by-side ranks
    IdempotentCommutator,
    /// N-Hermitian idempotent `P`, `Q`:
    /// `rank(PQ-QP) = 2 rank [P Q] + 2 rank(PQ) - 2 rank(P) - 2 rank(Q)`
    HermitianIdempotentCommutator,
    /// `rank [A B] = rank [A^[*]; B^[*]]`
    AdjointSwap,
    /// `rank(D - C P^[dag] A Q^[dag] B)` via a 3x3 block matrix
    TripleProduct,
    /// `rank(AB - A B B^[dag] A^[dag] A B)` via a 2x2 block matrix
    GapCor13,
    /// `rank(B B^[dag] A^[dag] A - A^[dag] A B B^[dag])
    ///  = 2 rank [A^[*] B] + 2 rank(AB) - 2 rank(A) - 2 rank(B)`
    CommutatorThm15,
    /// `rank [[A, B], [C, D]] = rank(A)` iff `D = C A+ B`, `N(A) ⊆ N(C)` and
    /// `N(A*) ⊆ N(B*)`; both directions evaluated as 0/1
    CarlsonBlock,
}

pub const ALL_IDENTITIES: [RankIdentity; 12] = [
    RankIdentity::SchurGeneric,
    RankIdentity::SchurEuclideanMP,
    RankIdentity::SchurWeightedMP,
    RankIdentity::BlockRankabcd,
    RankIdentity::RangeIntersection,
    RankIdentity::IdempotentCommutator,
    RankIdentity::HermitianIdempotentCommutator,
    RankIdentity::AdjointSwap,
    RankIdentity::TripleProduct,
    RankIdentity::GapCor13,
    RankIdentity::CommutatorThm15,
    RankIdentity::CarlsonBlock,
];

impl RankIdentity {
    pub fn required_operands(self) -> &'static [&'static str] {
        use RankIdentity::*;
        match self {
            SchurGeneric | SchurEuclideanMP | SchurWeightedMP | BlockRankabcd
            | CarlsonBlock => &["A", "B", "C", "D"],
            RangeIntersection | AdjointSwap | GapCor13 | CommutatorThm15 => &["A", "B"],
            IdempotentCommutator | HermitianIdempotentCommutator => &["P", "Q"],
            TripleProduct => &["P", "Q", "A", "B", "C", "D"],
        }
    }

    pub fn needs_weights(self) -> bool {
        use RankIdentity::*;
        matches!(
            self,
            SchurWeightedMP
                | HermitianIdempotentCommutator
                | AdjointSwap
                | TripleProduct
                | GapCor13
                | CommutatorThm15
        )
    }
}

impl fmt::Display for RankIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for RankIdentity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_IDENTITIES
            .iter()
            .find(|id| format!("{id:?}") == s)
            .copied()
            .ok_or_else(|| Error::Config(format!("unknown identity {s:?}")))
    }
}

pub type Operands = BTreeMap<String, Matrix>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityInstance {
    pub identity_id: RankIdentity,
    pub operands: Operands,
    pub weights: Option<WeightTriple>,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

fn get<'a>(ops: &'a Operands, name: &str) -> Result<&'a Matrix> {
    ops.get(name)
        .ok_or_else(|| Error::Config(format!("missing operand {name}")))
}

fn need_weights(w: Option<&WeightTriple>) -> Result<&WeightTriple> {
    w.ok_or_else(|| Error::Config("this identity requires weights".into()))
}

/// Evaluate one identity instance exactly. `lhs` and `rhs` are the two sides
/// of the rank equation (for `CarlsonBlock`, 0/1 truth values of the two
/// directions of the iff).
pub fn evaluate_rank_identity(
    id: RankIdentity,
    operands: &Operands,
    weights: Option<&WeightTriple>,
) -> Result<IdentityInstance> {
    let (lhs, rhs, extra_ok) = match id {
        RankIdentity::SchurGeneric => {
            let (a, b, c, d) = (
                get(operands, "A")?,
                get(operands, "B")?,
                get(operands, "C")?,
                get(operands, "D")?,
            );
            let block = block_assemble(&[
                vec![a.clone(), a.mul(b)?],
                vec![c.mul(a)?, d.clone()],
            ])?;
            let rhs = rank(a) + rank(&d.sub(&c.mul(a)?.mul(b)?)?);
            (rank(&block) as i64, rhs as i64, true)
        }
        RankIdentity::SchurEuclideanMP => {
            let (a, b, c, d) = (
                get(operands, "A")?,
                get(operands, "B")?,
                get(operands, "C")?,
                get(operands, "D")?,
            );
            let astar = a.conj_transpose();
            let block = block_assemble(&[
                vec![astar.mul(a)?.mul(&astar)?, astar.mul(b)?],
                vec![c.mul(&astar)?, d.clone()],
            ])?;
            let pinv = euclidean_pinv(a);
            let rhs = rank(a) + rank(&d.sub(&c.mul(&pinv)?.mul(b)?)?);
            (rank(&block) as i64, rhs as i64, true)
        }
        RankIdentity::SchurWeightedMP => {
            let w = need_weights(weights)?;
            let (a, b, c, d) = (
                get(operands, "A")?,
                get(operands, "B")?,
                get(operands, "C")?,
                get(operands, "D")?,
            );
            let a_dag = mp_inverse_matrix(a, &w.m, &w.n).map_err(|e| {
                Error::PreconditionUnmet(format!("A^[dag] must exist: {e}"))
            })?;
            let a_adj = adjoint(a, &w.m, &w.n)?;
            let asaas = a_adj.mul(a)?.mul(&a_adj)?;
            let block1 = block_assemble(&[
                vec![asaas.clone(), a_adj.mul(b)?],
                vec![c.mul(&a_adj)?, d.clone()],
            ])?;
            let block2 = block_assemble(&[
                vec![d.clone(), c.mul(&a_adj)?],
                vec![a_adj.mul(b)?, asaas],
            ])?;
            let rhs = (rank(a) + rank(&d.sub(&c.mul(&a_dag)?.mul(b)?)?)) as i64;
            (rank(&block1) as i64, rhs, rank(&block2) as i64 == rhs)
        }
        RankIdentity::BlockRankabcd => {
            let (a, b, c, d) = (
                get(operands, "A")?,
                get(operands, "B")?,
                get(operands, "C")?,
                get(operands, "D")?,
            );
            let block = block_assemble(&[
                vec![a.clone(), b.clone()],
                vec![c.clone(), d.clone()],
            ])?;
            let ra = rank(a);
            if rank(&block) != ra || rank(b) != ra || rank(c) != ra {
                return Err(Error::PreconditionUnmet(
                    "requires rank [[A,B],[C,D]] = rank A = rank B = rank C".into(),
                ));
            }
            (ra as i64, rank(d) as i64, true)
        }
        RankIdentity::RangeIntersection => {
            let (a, b) = (get(operands, "A")?, get(operands, "B")?);
            if !a.is_square() {
                return Err(Error::PreconditionUnmet("A must be square".into()));
            }
            let ab = a.mul(b)?;
            if index(a)? != 1 {
                return Err(Error::PreconditionUnmet("requires ind(A) = 1".into()));
            }
            if !range_contains(b, &ab)? {
                return Err(Error::PreconditionUnmet("requires R(AB) ⊆ R(B)".into()));
            }
            let rhs = rank(a) as i64 + rank(b) as i64 - rank(&hstack(a, b)?) as i64;
            (rank(&ab) as i64, rhs, true)
        }
        RankIdentity::IdempotentCommutator => {
            let (p, q) = (get(operands, "P")?, get(operands, "Q")?);
            if p.mul(p)? != *p || q.mul(q)? != *q {
                return Err(Error::PreconditionUnmet(
                    "P and Q must be idempotent".into(),
                ));
            }
            let pq = p.mul(q)?;
            let qp = q.mul(p)?;
            let lhs = rank(&pq.sub(&qp)?) as i64;
            let rhs = rank(&vstack(p, q)?) as i64
                + rank(&hstack(p, q)?) as i64
                + rank(&pq) as i64
                + rank(&qp) as i64
                - 2 * rank(p) as i64
                - 2 * rank(q) as i64;
            (lhs, rhs, true)
        }
        RankIdentity::HermitianIdempotentCommutator => {
            let w = need_weights(weights)?;
            let (p, q) = (get(operands, "P")?, get(operands, "Q")?);
            if p.mul(p)? != *p || q.mul(q)? != *q {
                return Err(Error::PreconditionUnmet(
                    "P and Q must be idempotent".into(),
                ));
            }
            if !is_w_hermitian(p, &w.n)? || !is_w_hermitian(q, &w.n)? {
                return Err(Error::PreconditionUnmet(
                    "P and Q must be N-Hermitian".into(),
                ));
            }
            let pq = p.mul(q)?;
            let lhs = rank(&pq.sub(&q.mul(p)?)?) as i64;
            let rhs = 2 * rank(&hstack(p, q)?) as i64 + 2 * rank(&pq) as i64
                - 2 * rank(p) as i64
                - 2 * rank(q) as i64;
            (lhs, rhs, true)
        }
        RankIdentity::AdjointSwap => {
            let w = need_weights(weights)?;
            let (a, b) = (get(operands, "A")?, get(operands, "B")?);
            // A: C^n -> C^m under (M, N); B: C^l -> C^m under (M, L)
            let a_adj = adjoint(a, &w.m, &w.n)?;
            let b_adj = adjoint(b, &w.m, &w.l)?;
            let lhs = rank(&hstack(a, b)?) as i64;
            let rhs = rank(&vstack(&a_adj, &b_adj)?) as i64;
            (lhs, rhs, true)
        }
        RankIdentity::TripleProduct => {
            let w = need_weights(weights)?;
            let (p, q, a, b, c, d) = (
                get(operands, "P")?,
                get(operands, "Q")?,
                get(operands, "A")?,
                get(operands, "B")?,
                get(operands, "C")?,
                get(operands, "D")?,
            );
            let p_dag = mp_inverse_matrix(p, &w.m, &w.n).map_err(|e| {
                Error::PreconditionUnmet(format!("P^[dag] must exist: {e}"))
            })?;
            let q_dag = mp_inverse_matrix(q, &w.n, &w.l).map_err(|e| {
                Error::PreconditionUnmet(format!("Q^[dag] must exist: {e}"))
            })?;
            let p_adj = adjoint(p, &w.m, &w.n)?;
            let q_adj = adjoint(q, &w.n, &w.l)?;
            let lhs = rank(&d.sub(&c.mul(&p_dag)?.mul(a)?.mul(&q_dag)?.mul(b)?)?) as i64;
            let block = block_assemble(&[
                vec![
                    p_adj.mul(a)?.mul(&q_adj)?,
                    p_adj.mul(p)?.mul(&p_adj)?,
                    Matrix::zero(p.cols(), b.cols()),
                ],
                vec![
                    q_adj.mul(q)?.mul(&q_adj)?,
                    Matrix::zero(q.cols(), p.rows()),
                    q_adj.mul(b)?,
                ],
                vec![
                    Matrix::zero(c.rows(), q.rows()),
                    c.mul(&p_adj)?,
                    d.neg(),
                ],
            ])?;
            let rhs = rank(&block) as i64 - rank(p) as i64 - rank(q) as i64;
            (lhs, rhs, true)
        }
        RankIdentity::GapCor13 => {
            let w = need_weights(weights)?;
            let (a, b) = (get(operands, "A")?, get(operands, "B")?);
            let a_dag = mp_inverse_matrix(a, &w.m, &w.n).map_err(|e| {
                Error::PreconditionUnmet(format!("A^[dag] must exist: {e}"))
            })?;
            let b_dag = mp_inverse_matrix(b, &w.n, &w.l).map_err(|e| {
                Error::PreconditionUnmet(format!("B^[dag] must exist: {e}"))
            })?;
            let ab = a.mul(b)?;
            let lhs =
                rank(&ab.sub(&ab.mul(&b_dag)?.mul(&a_dag)?.mul(&ab)?)?) as i64;
            let a_adj = adjoint(a, &w.m, &w.n)?;
            let b_adj = adjoint(b, &w.n, &w.l)?;
            let block = block_assemble(&[
                vec![b_adj.mul(&a_adj)?, b_adj.mul(b)?],
                vec![a.mul(&a_adj)?, ab.clone()],
            ])?;
            let rhs = rank(&block) as i64 + rank(&ab) as i64
                - rank(a) as i64
                - rank(b) as i64;
            (lhs, rhs, true)
        }
        RankIdentity::CommutatorThm15 => {
            let w = need_weights(weights)?;
            let (a, b) = (get(operands, "A")?, get(operands, "B")?);
            let a_dag = mp_inverse_matrix(a, &w.m, &w.n).map_err(|e| {
                Error::PreconditionUnmet(format!("A^[dag] must exist: {e}"))
            })?;
            let b_dag = mp_inverse_matrix(b, &w.n, &w.l).map_err(|e| {
                Error::PreconditionUnmet(format!("B^[dag] must exist: {e}"))
            })?;
            let bbd = b.mul(&b_dag)?;
            let ada = a_dag.mul(a)?;
            let lhs = rank(&bbd.mul(&ada)?.sub(&ada.mul(&bbd)?)?) as i64;
            let a_adj = adjoint(a, &w.m, &w.n)?;
            let rhs = 2 * rank(&hstack(&a_adj, b)?) as i64
                + 2 * rank(&a.mul(b)?) as i64
                - 2 * rank(a) as i64
                - 2 * rank(b) as i64;
            (lhs, rhs, true)
        }
        RankIdentity::CarlsonBlock => {
            let (a, b, c, d) = (
                get(operands, "A")?,
                get(operands, "B")?,
                get(operands, "C")?,
                get(operands, "D")?,
            );
            let block = block_assemble(&[
                vec![a.clone(), b.clone()],
                vec![c.clone(), d.clone()],
            ])?;
            let lhs = (rank(&block) == rank(a)) as i64;
            let schur_zero = d.sub(&c.mul(&euclidean_pinv(a))?.mul(b)?)?.is_zero();
            // N(A) ⊆ N(C) iff R(C*) ⊆ R(A*); N(A*) ⊆ N(B*) iff R(B) ⊆ R(A)
            let null_c = range_contains(&a.conj_transpose(), &c.conj_transpose())?;
            let null_b = range_contains(a, b)?;
            let rhs = (schur_zero && null_c && null_b) as i64;
            (lhs, rhs, true)
        }
    };
    Ok(IdentityInstance {
        identity_id: id,
        operands: operands.clone(),
        weights: weights.cloned(),
        lhs,
        rhs,
        holds: lhs == rhs && extra_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::Weight;

    fn ops(pairs: &[(&str, Matrix)]) -> Operands {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    fn sig_triple() -> WeightTriple {
        let w = Weight::signature(&[1, -1]).unwrap();
        WeightTriple::new(w.clone(), w.clone(), w)
    }

    #[test]
    fn schur_generic_hand_example() {
        // 1x1 blocks: lhs = rank [[1,2],[2,2]] = 2, rhs = 1 + rank(2-4) = 2
        let one = Matrix::ints(&[&[1]]);
        let two = Matrix::ints(&[&[2]]);
        let inst = evaluate_rank_identity(
            RankIdentity::SchurGeneric,
            &ops(&[
                ("A", one),
                ("B", two.clone()),
                ("C", two.clone()),
                ("D", two),
            ]),
            None,
        )
        .unwrap();
        assert_eq!((inst.lhs, inst.rhs), (2, 2));
        assert!(inst.holds);
    }

    #[test]
    fn commutator_on_example2() {
        let a = Matrix::ints(&[&[1, 2], &[0, 0]]);
        let b = Matrix::ints(&[&[2, 1], &[0, 0]]);
        let inst = evaluate_rank_identity(
            RankIdentity::CommutatorThm15,
            &ops(&[("A", a), ("B", b)]),
            Some(&sig_triple()),
        )
        .unwrap();
        assert!(inst.holds, "lhs {} rhs {}", inst.lhs, inst.rhs);
    }

    #[test]
    fn gap_cor13_on_example2() {
        let a = Matrix::ints(&[&[1, 2], &[0, 0]]);
        let b = Matrix::ints(&[&[2, 1], &[0, 0]]);
        let inst = evaluate_rank_identity(
            RankIdentity::GapCor13,
            &ops(&[("A", a), ("B", b)]),
            Some(&sig_triple()),
        )
        .unwrap();
        assert!(inst.holds, "lhs {} rhs {}", inst.lhs, inst.rhs);
    }

    #[test]
    fn zero_operands_give_zero_ranks() {
        let z = Matrix::zero(2, 2);
        let inst = evaluate_rank_identity(
            RankIdentity::SchurGeneric,
            &ops(&[
                ("A", z.clone()),
                ("B", z.clone()),
                ("C", z.clone()),
                ("D", z),
            ]),
            None,
        )
        .unwrap();
        assert_eq!((inst.lhs, inst.rhs), (0, 0));
        assert!(inst.holds);
    }

    #[test]
    fn range_intersection_precondition_gate() {
        // ind([[0,1],[0,0]]) = 2, so the precondition fails
        let a = Matrix::ints(&[&[0, 1], &[0, 0]]);
        let b = Matrix::identity(2);
        assert!(matches!(
            evaluate_rank_identity(
                RankIdentity::RangeIntersection,
                &ops(&[("A", a), ("B", b)]),
                None
            ),
            Err(Error::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn idempotent_precondition_gate() {
        let p = Matrix::ints(&[&[2, 0], &[0, 0]]);
        assert!(matches!(
            evaluate_rank_identity(
                RankIdentity::IdempotentCommutator,
                &ops(&[("P", p.clone()), ("Q", p)]),
                None
            ),
            Err(Error::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn triple_product_missing_mp_gate() {
        // P = AB of Example 1 has no MP inverse under signature weights
        let a = Matrix::ints(&[&[1, 1], &[1, 0]]);
        let p = a.mul(&Matrix::ints(&[&[0, 1], &[0, 0]])).unwrap();
        let i2 = Matrix::identity(2);
        assert!(matches!(
            evaluate_rank_identity(
                RankIdentity::TripleProduct,
                &ops(&[
                    ("P", p),
                    ("Q", i2.clone()),
                    ("A", i2.clone()),
                    ("B", i2.clone()),
                    ("C", i2.clone()),
                    ("D", i2),
                ]),
                Some(&sig_triple()),
            ),
            Err(Error::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn carlson_block_both_directions() {
        // structured instance where rank(M) = rank(A): B = AY, C = ZA, D = ZAY
        let a = Matrix::ints(&[&[1, 0], &[0, 0]]);
        let y = Matrix::ints(&[&[1, 2], &[3, 4]]);
        let z = Matrix::ints(&[&[1, 1], &[2, 0]]);
        let b = a.mul(&y).unwrap();
        let c = z.mul(&a).unwrap();
        let d = z.mul(&a).unwrap().mul(&y).unwrap();
        let inst = evaluate_rank_identity(
            RankIdentity::CarlsonBlock,
            &ops(&[("A", a.clone()), ("B", b), ("C", c), ("D", d)]),
            None,
        )
        .unwrap();
        assert_eq!((inst.lhs, inst.rhs), (1, 1));
        assert!(inst.holds);

        // and an instance where both sides are false
        let inst = evaluate_rank_identity(
            RankIdentity::CarlsonBlock,
            &ops(&[
                ("A", a.clone()),
                ("B", Matrix::identity(2)),
                ("C", Matrix::identity(2)),
                ("D", Matrix::identity(2)),
            ]),
            None,
        )
        .unwrap();
        assert_eq!((inst.lhs, inst.rhs), (0, 0));
        assert!(inst.holds);
    }

    #[test]
    fn missing_operand_and_weights_errors() {
        assert!(matches!(
            evaluate_rank_identity(RankIdentity::SchurGeneric, &ops(&[]), None),
            Err(Error::Config(_))
        ));
        let a = Matrix::identity(2);
        assert!(matches!(
            evaluate_rank_identity(
                RankIdentity::AdjointSwap,
                &ops(&[("A", a.clone()), ("B", a)]),
                None
            ),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn identity_id_round_trips_from_str() {
        for id in ALL_IDENTITIES {
            assert_eq!(format!("{id}").parse::<RankIdentity>().unwrap(), id);
        }
        assert!("Nonsense".parse::<RankIdentity>().is_err());
    }
}
