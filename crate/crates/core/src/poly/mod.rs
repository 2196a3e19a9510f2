//! Exact sparse multivariate polynomials over ℚ, monomial orders, division
//! and S-polynomials.

mod division;
mod monomial;
mod order;
mod parse;
mod polynomial;

use thiserror::Error;

pub use division::{divide, s_polynomial, Division};
pub(crate) use division::reduce_with_budget;
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use parse::{parse_polynomial, parse_rational};
pub use polynomial::{rat, ratio, Polynomial};
pub(crate) use polynomial::fmt_rational;

/// Coefficient field. `num-rational` keeps values in lowest terms with a
/// positive denominator and represents zero as `0/1`.
pub type Rational = num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },
    #[error("variable priority is not a permutation")]
    BadPriority,
    #[error("unknown monomial order '{0}' (expected lex or grlex)")]
    UnknownOrder(String),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("operation undefined for the zero polynomial")]
    ZeroInput,
    #[error("reduction step budget of {0} exhausted")]
    StepBudget(u64),
}

#[cfg(test)]
mod tests;
