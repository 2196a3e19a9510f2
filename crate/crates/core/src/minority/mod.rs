//! Boolean minority (GF(2)-linear) instances: row reduction, the symbolic
//! lex basis, Boolean-term algebra and conversion to a d-truncated grlex basis.

mod boolean;
mod convert;
mod gf2;
mod lift;

use thiserror::Error;

pub use boolean::{expand_product, BooleanTerm, Expansion, TermCombination};
pub use convert::{convert, convert_with_stats, reduce_monomial, Conversion, ConversionStats};
pub use gf2::{gf2_rref, Gf2Equation, Gf2System, Infeasible, Xor};
pub use lift::{
    build_g1, lift_equation, square_relation, xor_polynomial, SymbolicG1, DEFAULT_EXPAND_THRESHOLD,
};

use crate::buchberger::GroebnerBasis;
use crate::poly::MonomialOrder;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MinorityError {
    #[error("expansion of {size} terms exceeds the threshold of {threshold}")]
    Resource { size: usize, threshold: usize },
    #[error("product of an empty list of Boolean terms")]
    EmptyProduct,
    #[error("truncation degree must be at least 1, got {0}")]
    Degree(u32),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Degree-`d` truncated reduced grlex basis of `{x : every xor holds}`; the
/// unit basis when the system is contradictory.
pub fn truncated_basis(xors: &[Xor], n: usize, d: u32) -> Result<GroebnerBasis, MinorityError> {
    match gf2_rref(xors, n) {
        Ok(sys) => convert(&sys, d),
        Err(Infeasible) if d == 0 => Err(MinorityError::Degree(0)),
        Err(Infeasible) => Ok(GroebnerBasis::unit(n, MonomialOrder::grlex()).with_truncation(Some(d))),
    }
}

/// Reduced lex basis, expanded explicitly; the unit basis when contradictory.
pub fn lex_basis(xors: &[Xor], n: usize, threshold: usize) -> Result<GroebnerBasis, MinorityError> {
    match gf2_rref(xors, n) {
        Ok(sys) => {
            let elems = build_g1(&sys).expand(threshold)?;
            Ok(GroebnerBasis::new(elems, MonomialOrder::lex(), true))
        }
        Err(Infeasible) => Ok(GroebnerBasis::unit(n, MonomialOrder::lex())),
    }
}
