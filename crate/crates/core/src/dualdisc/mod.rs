//! Dual-discriminator instances: arc consistency, chained permutation
//! constraints and the combined Gröbner basis.

mod ac;
mod cf;
mod combined;
mod cpc;
mod interp;

use thiserror::Error;

pub use ac::{arc_consistency, AcOutcome};
pub use cf::{cf_basis, classify, line_perm, CfOutcome, Family};
pub use combined::{combined_basis, combined_basis_with_stats, pruned_domains, CombinedStats};
pub use cpc::{build_cpcs, cpc_basis, Chains, Cpc, Empty, Perm};
pub use interp::lagrange_interpolate;

use crate::poly::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DualDiscError {
    #[error("interpolation nodes repeat the value {0}")]
    DuplicateNode(Rational),
    #[error("constraint of kind {0} is not a dual-discriminator constraint")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}
