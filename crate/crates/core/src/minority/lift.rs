use num_bigint::BigInt;
use num_traits::One;

use super::{Gf2Equation, Gf2System, MinorityError};
use crate::poly::{Monomial, Polynomial, Rational};

pub const DEFAULT_EXPAND_THRESHOLD: usize = 20;

/// The multilinear polynomial agreeing with `(⊕_{j∈support} x_j) ⊕ parity`
/// on `{0,1}^n`.
pub fn xor_polynomial(
    support: &[usize],
    parity: bool,
    nvars: usize,
    threshold: usize,
) -> Result<Polynomial, MinorityError> {
    if support.len() > threshold {
        return Err(MinorityError::Resource {
            size: support.len(),
            threshold,
        });
    }
    let mut p = Polynomial::zero(nvars);
    let k = support.len();
    for mask in 1u64..(1u64 << k) {
        let vars: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| support[b]).collect();
        let size = vars.len();
        let mag = Rational::from_integer(BigInt::one() << (size - 1));
        let c = if size % 2 == 1 { mag } else { -mag };
        p.add_term(Monomial::from_vars(nvars, &vars), c);
    }
    if parity {
        p = &Polynomial::one(nvars) - &p;
    }
    Ok(p)
}

/// `x_lead − M(f_lead)` for a single GF(2) equation.
pub fn lift_equation(eq: &Gf2Equation, nvars: usize, threshold: usize) -> Result<Polynomial, MinorityError> {
    let m = xor_polynomial(&eq.support, eq.parity, nvars, threshold)?;
    Ok(&Polynomial::var(nvars, eq.lead) - &m)
}

/// The lex basis `G₁` kept symbolic: the row-reduced equations plus the free
/// variables whose square relations `x_k² − x_k` complete it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicG1 {
    pub nvars: usize,
    pub equations: Vec<Gf2Equation>,
    pub squares: Vec<usize>,
}

impl SymbolicG1 {
    /// Explicit polynomials, lifted equations first.
    pub fn expand(&self, threshold: usize) -> Result<Vec<Polynomial>, MinorityError> {
        let mut out = Vec::with_capacity(self.equations.len() + self.squares.len());
        for eq in &self.equations {
            out.push(lift_equation(eq, self.nvars, threshold)?);
        }
        for &k in &self.squares {
            out.push(square_relation(self.nvars, k));
        }
        Ok(out)
    }
}

pub fn square_relation(nvars: usize, k: usize) -> Polynomial {
    let mut p = Polynomial::term(Monomial::from_vars(nvars, &[k, k]), Rational::one());
    p.add_term(Monomial::var(nvars, k), -Rational::one());
    p
}

pub fn build_g1(sys: &Gf2System) -> SymbolicG1 {
    SymbolicG1 {
        nvars: sys.nvars(),
        equations: sys.equations().to_vec(),
        squares: sys.free_vars().to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buchberger::{is_groebner, reduce_basis, GroebnerBasis};
    use crate::minority::{gf2_rref, Xor};
    use crate::poly::{parse_polynomial, rat, MonomialOrder};

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, Some(n)).unwrap()
    }

    #[test]
    fn single_equation_lift() {
        let eq = Gf2Equation::new(0, vec![1, 2], false);
        assert_eq!(lift_equation(&eq, 3, 20).unwrap(), p("x1 - x2 - x3 + 2*x2*x3", 3));
    }

    #[test]
    fn constant_tail() {
        let eq = Gf2Equation::new(2, vec![], true);
        assert_eq!(lift_equation(&eq, 3, 20).unwrap(), p("x3 - 1", 3));
        let eq = Gf2Equation::new(2, vec![], false);
        assert_eq!(lift_equation(&eq, 3, 20).unwrap(), p("x3", 3));
    }

    #[test]
    fn three_term_support_matches_truth_table() {
        let eq = Gf2Equation::new(0, vec![1, 2, 3], false);
        let r = lift_equation(&eq, 4, 20).unwrap();
        assert_eq!(
            r,
            p("x1 - (x2 + x3 + x4) + 2*(x2*x3 + x2*x4 + x3*x4) - 4*x2*x3*x4", 4)
        );
        let m = xor_polynomial(&[1, 2, 3], true, 4, 20).unwrap();
        for mask in 0..8u32 {
            let bits: Vec<bool> = (0..3).map(|k| mask >> k & 1 == 1).collect();
            let want = bits.iter().fold(true, |a, &b| a ^ b);
            let point: Vec<Rational> = std::iter::once(rat(0))
                .chain(bits.iter().map(|&b| rat(b as i64)))
                .collect();
            assert_eq!(m.eval(&point), rat(want as i64));
        }
    }

    #[test]
    fn threshold_is_enforced() {
        let eq = Gf2Equation::new(0, (1..6).collect(), false);
        assert_eq!(
            lift_equation(&eq, 6, 4),
            Err(MinorityError::Resource { size: 5, threshold: 4 })
        );
    }

    #[test]
    fn single_equation_g1() {
        let sys = gf2_rref(&[Xor::new(vec![0, 1, 2], false)], 3).unwrap();
        let g1 = build_g1(&sys);
        assert_eq!(g1.squares, vec![1, 2]);
        let expanded = g1.expand(20).unwrap();
        assert_eq!(
            expanded,
            vec![p("x1 - x2 - x3 + 2*x2*x3", 3), p("x2^2 - x2", 3), p("x3^2 - x3", 3)]
        );
    }

    #[test]
    fn full_rank_has_no_squares() {
        let sys = gf2_rref(&[Xor::new(vec![0], true), Xor::new(vec![0, 1], false)], 2).unwrap();
        let g1 = build_g1(&sys);
        assert!(g1.squares.is_empty());
        assert_eq!(g1.expand(20).unwrap(), vec![p("x1 - 1", 2), p("x2 - 1", 2)]);
    }

    #[test]
    fn parity_g1_is_reduced_lex_basis() {
        let sys = gf2_rref(&[Xor::new(vec![0, 2, 3], false), Xor::new(vec![1, 2, 4], true)], 5).unwrap();
        let g1 = build_g1(&sys);
        assert_eq!(g1.equations.iter().map(|e| e.lead).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(g1.squares, vec![2, 3, 4]);
        let ord = MonomialOrder::lex();
        let elems = g1.expand(20).unwrap();
        assert!(is_groebner(&elems, &ord));
        let gb = GroebnerBasis::new(elems.clone(), ord, false);
        let red = reduce_basis(&gb);
        let mut want = elems;
        want.sort_by_key(|g| g.to_string());
        let mut got = red.into_elements();
        got.sort_by_key(|g| g.to_string());
        assert_eq!(got, want);
    }
}
