//! Exact-arithmetic toolkit for Moore-Penrose inverses between indefinite
//! inner product spaces: Gaussian-rational matrices, the MN-adjoint,
//! existence tests and computation of the weighted Moore-Penrose inverse,
//! reverse-order-law classification, a catalog of machine-checked rank
//! identities, and a deterministic counterexample hunter.

pub mod error;
pub mod hunt;
pub mod identity;
pub mod linalg;
pub mod matrix;
pub mod mp;
pub mod rol;
pub mod scalar;
pub mod weight;

pub use error::{Error, Result};
pub use hunt::{HuntSummary, SearchConfig, SearchMode, TrialRecord, WeightKind};
pub use identity::{evaluate_rank_identity, IdentityInstance, Operands, RankIdentity};
pub use linalg::{euclidean_pinv, full_rank_factorization, index, inverse, range_contains, rank, rref};
pub use matrix::{block_assemble, hstack, vstack, Matrix};
pub use mp::{adjoint, is_range_hermitian, is_w_hermitian, mp_exists, mp_inverse, MpResult};
pub use rol::{greville_conditions, rol_classify, rol_rank_criterion, RolReport, RolStatus};
pub use scalar::GaussianRational;
pub use weight::{Weight, WeightTriple, WeightsFile};
