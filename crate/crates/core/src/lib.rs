//! Exact computations for Hibi rings and toric rings with class group `Z` or
//! `Z²`: divisor class groups, conic and maximal Cohen–Macaulay classes, and
//! certificates that a sum of rank-one modules gives a splitting NCCR.
//!
//! All arithmetic is exact. The linear algebra ([`linalg`]) and the simplex
//! solver ([`lp`]) are generic over the integer type; the rest of the crate
//! works with the concrete aliases below.

pub mod class_group;
pub mod classify;
pub mod divisorial;
pub mod linalg;
pub mod lp;
pub mod mcm;
pub mod nccr;
pub mod poset;
pub mod rank1;
mod scalar;
pub mod semigroup;
mod weight;

pub use scalar::Scalar;
pub use weight::{multiset, Weight};

/// Integer type for weights, characters and matrix entries.
pub type Int = i64;
/// Rational type used by the LP-based tests.
pub type Rational = num_rational::Ratio<i128>;
/// Integer matrix with the crate's integer type.
pub type IntMatrix = linalg::Matrix<Int>;

pub use class_group::{class_group, hibi_class_group, parse_cone, same_class, sigma_matrix, ClassGroupData, SigmaMatrix};
pub use classify::{classify, expected_weight_table, generate, Family, TypeParams};
pub use divisorial::{conic_polytope, enumerate_conic, strongly_critical_conic, ConicPolytope};
pub use mcm::{chamber_decomposition, is_mcm, mcm_region, non_mcm_cone, Chamber, ChamberKind, McmOracle, NonMcmCone};
pub use nccr::{build_l, certify_gldim, end_is_mcm, koszul_terms, separated, verify_nccr, CharacterSet, GldimCertificate};
pub use poset::{Circuit, PosetHat, TreeSelection};
pub use rank1::{base_window, beta_invariant, exchange_graph, mutate_window, Rank1Weights, Window};
pub use semigroup::semigroup_member;

/// Any error the pipeline can raise.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Poset(#[from] poset::PosetError),
    #[error(transparent)]
    ClassGroup(#[from] class_group::ClassGroupError),
    #[error(transparent)]
    Conic(#[from] divisorial::ConicError),
    #[error(transparent)]
    Mcm(#[from] mcm::McmError),
    #[error(transparent)]
    Nccr(#[from] nccr::NccrError),
    #[error(transparent)]
    Rank1(#[from] rank1::Rank1Error),
    #[error(transparent)]
    Params(#[from] classify::ParamError),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
