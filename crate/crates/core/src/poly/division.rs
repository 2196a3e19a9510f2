use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Monomial, MonomialOrder, PolyError, Polynomial, Rational};

/// Result of multivariate division `f = Σ quotients[i]·basis[i] + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
    /// Number of reduction steps performed.
    pub steps: u64,
}

struct Divisor<'a> {
    lm: &'a Monomial,
    lc: &'a Rational,
    poly: &'a Polynomial,
}

/// Divides `f` by the ordered list `basis`.
///
/// At each step the first basis element (in list order) whose leading term
/// divides the current leading term is used; if none does, the term moves to
/// the remainder.
pub fn divide(f: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> Result<Division, PolyError> {
    divide_impl(f, basis, ord, true, u64::MAX)
}

/// Remainder only, with a cap on reduction steps.
pub(crate) fn reduce_with_budget(
    f: &Polynomial,
    basis: &[Polynomial],
    ord: &MonomialOrder,
    max_steps: u64,
) -> Result<Division, PolyError> {
    divide_impl(f, basis, ord, false, max_steps)
}

fn divide_impl(
    f: &Polynomial,
    basis: &[Polynomial],
    ord: &MonomialOrder,
    want_quotients: bool,
    max_steps: u64,
) -> Result<Division, PolyError> {
    let n = f.nvars();
    let mut divisors = Vec::with_capacity(basis.len());
    for g in basis {
        if g.nvars() != n {
            return Err(PolyError::VariableCount {
                left: n,
                right: g.nvars(),
            });
        }
        let (lm, lc) = g.leading_term(ord).ok_or(PolyError::ZeroDivisor)?;
        divisors.push(Divisor { lm, lc, poly: g });
    }

    let mut work: BTreeMap<Vec<u32>, Rational> =
        f.terms().map(|(m, c)| (ord.key(m), c.clone())).collect();
    let mut quotients: Vec<BTreeMap<Monomial, Rational>> = if want_quotients {
        vec![BTreeMap::new(); basis.len()]
    } else {
        Vec::new()
    };
    let mut remainder = Polynomial::zero(n);
    let mut steps = 0u64;

    while let Some((key, c)) = work.pop_last() {
        let lead = ord.monomial_from_key(&key);
        let hit = divisors
            .iter()
            .enumerate()
            .find_map(|(i, d)| d.lm.quotient_of(&lead).map(|t| (i, t)));
        match hit {
            Some((i, shift)) => {
                steps += 1;
                if steps > max_steps {
                    return Err(PolyError::StepBudget(max_steps));
                }
                let d = &divisors[i];
                let factor = &c / d.lc;
                for (m, gc) in d.poly.terms() {
                    if m == d.lm {
                        continue;
                    }
                    let k = ord.key(&m.mul(&shift));
                    let delta = &factor * gc;
                    match work.entry(k) {
                        Entry::Vacant(v) => {
                            v.insert(-delta);
                        }
                        Entry::Occupied(mut o) => {
                            *o.get_mut() -= delta;
                            if o.get().is_zero() {
                                o.remove();
                            }
                        }
                    }
                }
                if want_quotients {
                    let q = quotients[i].entry(shift).or_insert_with(Rational::zero);
                    *q += factor;
                }
            }
            None => remainder.add_term(lead, c),
        }
    }

    let quotients = quotients
        .into_iter()
        .map(|t| Polynomial::from_terms(n, t.into_iter().filter(|(_, c)| !c.is_zero())))
        .collect();
    Ok(Division {
        quotients,
        remainder,
        steps,
    })
}

/// `S(f, g) = (x^γ / LT(f))·f − (x^γ / LT(g))·g` with `x^γ = lcm(LM(f), LM(g))`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial, PolyError> {
    if f.nvars() != g.nvars() {
        return Err(PolyError::VariableCount {
            left: f.nvars(),
            right: g.nvars(),
        });
    }
    let (mf, cf) = f.leading_term(ord).ok_or(PolyError::ZeroInput)?;
    let (mg, cg) = g.leading_term(ord).ok_or(PolyError::ZeroInput)?;
    let lcm = mf.lcm(mg);
    let sf = mf.quotient_of(&lcm).expect("lcm is a multiple");
    let sg = mg.quotient_of(&lcm).expect("lcm is a multiple");
    let left = f.mul_term(&sf, &cf.recip());
    let right = g.mul_term(&sg, &cg.recip());
    Ok(&left - &right)
}
