pub mod buchberger;
pub mod csp;
pub mod dualdisc;
pub mod error;
pub mod imp;
pub mod minority;
pub mod oracle;
pub mod poly;
pub mod random;

pub use error::ParseError;
pub use poly::{Monomial, MonomialOrder, OrderKind, PolyError, Polynomial, Rational};
