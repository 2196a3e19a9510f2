//! Generic Buchberger engine and reduced-basis post-processing.
//!
//! This is the reference route the specialised constructions are checked
//! against, so it stays deliberately plain: FIFO critical pairs, the
//! coprime-leading-monomial shortcut, and deterministic first-divisor division.

use std::collections::VecDeque;
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::poly::{divide, reduce_with_budget, s_polynomial, MonomialOrder, PolyError, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuchbergerError {
    #[error("buchberger step budget of {0} reductions exhausted")]
    Budget(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_steps: 1_000_000 }
    }
}

/// A set of polynomials tagged with the order it is a Gröbner basis for.
///
/// Elements are nonzero, pairwise distinct and sorted ascending by leading
/// monomial. `truncation` is `Some(d)` for a degree-`d` slice of a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
    reduced: bool,
    truncation: Option<u32>,
}

impl GroebnerBasis {
    /// Wraps `elements` without checking the Gröbner property.
    pub fn new(elements: Vec<Polynomial>, order: MonomialOrder, reduced: bool) -> Self {
        let mut elements: Vec<_> = elements.into_iter().filter(|g| !g.is_zero()).collect();
        elements.sort_by(|a, b| {
            order
                .cmp(a.leading_monomial(&order).unwrap(), b.leading_monomial(&order).unwrap())
                .then_with(|| a.to_string().cmp(&b.to_string()))
        });
        elements.dedup();
        GroebnerBasis {
            elements,
            order,
            reduced,
            truncation: None,
        }
    }

    /// The basis `{1}` of the whole ring.
    pub fn unit(nvars: usize, order: MonomialOrder) -> Self {
        GroebnerBasis::new(vec![Polynomial::one(nvars)], order, true)
    }

    pub fn with_truncation(mut self, d: Option<u32>) -> Self {
        self.truncation = d;
        self
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial> {
        self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the basis contains a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(Polynomial::is_unit)
    }

    pub fn max_degree(&self) -> u32 {
        self.elements.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    /// The degree-`d` slice `G ∩ ℚ[X]_d`.
    pub fn truncate(&self, d: u32) -> GroebnerBasis {
        GroebnerBasis {
            elements: self
                .elements
                .iter()
                .filter(|g| g.degree() <= d)
                .cloned()
                .collect(),
            order: self.order.clone(),
            reduced: self.reduced,
            truncation: Some(d),
        }
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.elements {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Buchberger's algorithm with a FIFO pair queue.
///
/// Pairs whose leading monomials are coprime are skipped. A nonzero constant
/// remainder short-circuits to the basis `{1}`.
pub fn buchberger(
    generators: &[Polynomial],
    ord: &MonomialOrder,
    limits: &Limits,
) -> Result<GroebnerBasis, BuchbergerError> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in generators {
        if g.is_zero() {
            continue;
        }
        let g = g.monic(ord);
        if g.is_unit() {
            return Ok(GroebnerBasis::unit(g.nvars(), ord.clone()));
        }
        if !basis.contains(&g) {
            basis.push(g);
        }
    }
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push_back((i, j));
        }
    }
    let mut budget = limits.max_steps;
    while let Some((i, j)) = pairs.pop_front() {
        let li = basis[i].leading_monomial(ord).unwrap();
        let lj = basis[j].leading_monomial(ord).unwrap();
        if li.is_coprime(lj) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], ord)?;
        let r = match reduce_with_budget(&s, &basis, ord, budget) {
            Ok(d) => {
                budget -= d.steps;
                d.remainder
            }
            Err(PolyError::StepBudget(_)) => return Err(BuchbergerError::Budget(limits.max_steps)),
            Err(e) => return Err(e.into()),
        };
        if r.is_zero() {
            continue;
        }
        let r = r.monic(ord);
        if r.is_unit() {
            return Ok(GroebnerBasis::unit(r.nvars(), ord.clone()));
        }
        let k = basis.len();
        basis.push(r);
        for i in 0..k {
            pairs.push_back((i, k));
        }
    }
    Ok(GroebnerBasis::new(basis, ord.clone(), false))
}

/// Turns a Gröbner basis into the reduced one: monic, minimal, and with no
/// monomial divisible by another element's leading monomial.
pub fn reduce_basis(basis: &GroebnerBasis) -> GroebnerBasis {
    let ord = basis.order().clone();
    if basis.is_unit() {
        let n = basis.elements[0].nvars();
        return GroebnerBasis::unit(n, ord).with_truncation(basis.truncation);
    }
    let mut elems: Vec<Polynomial> = basis.elements.iter().map(|g| g.monic(&ord)).collect();
    elems.sort_by(|a, b| ord.cmp(a.leading_monomial(&ord).unwrap(), b.leading_monomial(&ord).unwrap()));

    // Minimal basis: drop anything whose leading monomial is a multiple of an
    // earlier (smaller or equal) leading monomial.
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in elems {
        let lm = g.leading_monomial(&ord).unwrap();
        if minimal
            .iter()
            .any(|h| h.leading_monomial(&ord).unwrap().divides(lm))
        {
            continue;
        }
        minimal.push(g);
    }

    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let g = &minimal[i];
        let (lm, _) = g.leading_term(&ord).unwrap();
        let lead = Polynomial::term(lm.clone(), num_traits::One::one());
        let tail = g - &lead;
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let r = divide(&tail, &others, &ord)
            .expect("nonzero divisors")
            .remainder;
        reduced.push(&lead + &r);
    }
    GroebnerBasis::new(reduced, ord, true).with_truncation(basis.truncation)
}

/// Buchberger's criterion: every S-polynomial reduces to zero modulo the set.
pub fn is_groebner(elements: &[Polynomial], ord: &MonomialOrder) -> bool {
    let elems: Vec<&Polynomial> = elements.iter().filter(|g| !g.is_zero()).collect();
    let owned: Vec<Polynomial> = elems.iter().map(|g| (*g).clone()).collect();
    for j in 0..elems.len() {
        for i in 0..j {
            let li = elems[i].leading_monomial(ord).unwrap();
            let lj = elems[j].leading_monomial(ord).unwrap();
            if li.is_coprime(lj) {
                continue;
            }
            let s = match s_polynomial(elems[i], elems[j], ord) {
                Ok(s) => s,
                Err(_) => return false,
            };
            match divide(&s, &owned, ord) {
                Ok(d) if d.remainder.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

/// True when `f` reduces to zero modulo `basis` (sound for any list, complete
/// for Gröbner bases).
pub fn reduces_to_zero(f: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> bool {
    divide(f, basis, ord)
        .map(|d| d.remainder.is_zero())
        .unwrap_or(false)
}

/// Sanity check used by tests: all leading coefficients equal one.
pub fn is_monic(basis: &GroebnerBasis) -> bool {
    basis
        .elements
        .iter()
        .all(|g| g.leading_coeff(basis.order()).map(One::is_one).unwrap_or(false))
}
