use num_traits::{One, Zero};

use super::DualDiscError;
use crate::poly::{Polynomial, Rational};

/// The unique polynomial in `x_var` of degree `< points.len()` passing through
/// every `(x, y)` pair.
pub fn lagrange_interpolate(
    points: &[(Rational, Rational)],
    var: usize,
    nvars: usize,
) -> Result<Polynomial, DualDiscError> {
    for (k, (x, _)) in points.iter().enumerate() {
        if points[..k].iter().any(|(u, _)| u == x) {
            return Err(DualDiscError::DuplicateNode(x.clone()));
        }
    }
    let mut out = Polynomial::zero(nvars);
    for (k, (xk, yk)) in points.iter().enumerate() {
        if yk.is_zero() {
            continue;
        }
        let mut basis = Polynomial::one(nvars);
        let mut denom = Rational::one();
        for (l, (xl, _)) in points.iter().enumerate() {
            if l != k {
                basis = &basis * &Polynomial::linear_factor(nvars, var, xl);
                denom *= xk - xl;
            }
        }
        out = &out + &basis.scale(&(yk / denom));
    }
    Ok(out)
}
