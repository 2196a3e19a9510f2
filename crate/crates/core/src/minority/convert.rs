use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::boolean::{expand_product, BooleanTerm, Expansion};
use super::{Gf2System, MinorityError};
use crate::buchberger::GroebnerBasis;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational};

/// Counters used to check that conversion cost grows polynomially.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConversionStats {
    /// Monomials taken from the queue (after the divisibility filter).
    pub monomials: u64,
    /// Boolean-term and registry-entry manipulations.
    pub term_ops: u64,
}

#[derive(Clone, Debug)]
pub struct Conversion {
    pub basis: GroebnerBasis,
    /// Standard monomials `B(G₂)` of degree ≤ d, in discovery order; `1` first.
    pub standard: Vec<Monomial>,
    pub stats: ConversionStats,
}

/// `f_v`: the tail of `v`'s equation when `v` is a lead, else `x_v` itself.
fn factor_term(v: usize, sys: &Gf2System) -> BooleanTerm {
    match sys.equation_for(v) {
        Some(eq) => BooleanTerm::new(eq.support.clone(), eq.parity),
        None => BooleanTerm::var(v),
    }
}

/// `q|_{G₁}` as a combination of Boolean terms, with its longest term.
pub fn reduce_monomial(q: &Monomial, sys: &Gf2System) -> Result<Expansion, MinorityError> {
    if q.is_one() {
        let mut combination = super::TermCombination::zero();
        combination.add_term(&BooleanTerm::constant(true), &Rational::one());
        return Ok(Expansion {
            combination,
            longest: BooleanTerm::constant(true),
        });
    }
    let factors: Vec<BooleanTerm> = q.factors().into_iter().map(|v| factor_term(v, sys)).collect();
    expand_product(&factors)
}

/// All monomials of total degree `k` in `n` variables, ascending under `ord`.
fn monomials_of_degree(n: usize, k: u32, ord: &MonomialOrder) -> Vec<Monomial> {
    fn rec(n: usize, start: usize, left: u32, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_vars(n, cur));
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, v, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, k, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| ord.cmp(a, b));
    out
}

type Combo = BTreeMap<usize, Rational>;

fn add_scaled(acc: &mut Combo, other: &Combo, c: &Rational, ops: &mut u64) {
    for (j, v) in other {
        *ops += 1;
        let slot = acc.entry(*j).or_insert_with(Rational::zero);
        *slot += v * c;
        if slot.is_zero() {
            acc.remove(j);
        }
    }
}

pub fn convert(sys: &Gf2System, d: u32) -> Result<GroebnerBasis, MinorityError> {
    convert_with_stats(sys, d).map(|c| c.basis)
}

/// The d-truncated reduced grlex basis of the ideal of a feasible system.
///
/// Monomials are visited in increasing grlex order, degree one first. The
/// registry maps the (parity-free) support of every longest Boolean term seen
/// so far to its expression in the standard monomials found so far; index 0
/// stands for the monomial `1`.
pub fn convert_with_stats(sys: &Gf2System, d: u32) -> Result<Conversion, MinorityError> {
    if d == 0 {
        return Err(MinorityError::Degree(0));
    }
    let n = sys.nvars();
    let ord = MonomialOrder::grlex();
    let mut standard = vec![Monomial::one(n)];
    let mut registry: HashMap<Vec<usize>, Combo> = HashMap::new();
    let mut leading: Vec<Monomial> = Vec::new();
    let mut emitted: Vec<Polynomial> = Vec::new();
    let mut stats = ConversionStats::default();

    let constant_combo = |c: &Rational| -> Combo {
        let mut m = Combo::new();
        if !c.is_zero() {
            m.insert(0, c.clone());
        }
        m
    };

    for k in 1..=d {
        for q in monomials_of_degree(n, k, &ord) {
            if leading.iter().any(|lm| lm.divides(&q)) {
                continue;
            }
            stats.monomials += 1;
            let exp = reduce_monomial(&q, sys)?;
            let longest = exp.longest.support();
            let novel = !longest.is_empty() && !registry.contains_key(longest);

            let mut combo = constant_combo(exp.combination.constant_part());
            let mut lead_coeff = Rational::zero();
            for (s, c) in exp.combination.terms() {
                stats.term_ops += 1;
                if novel && s == longest {
                    lead_coeff = c.clone();
                    continue;
                }
                let Some(known) = registry.get(s) else {
                    return Err(MinorityError::Internal(format!(
                        "Boolean term of {q} outside the registry"
                    )));
                };
                add_scaled(&mut combo, known, c, &mut stats.term_ops);
            }

            if novel {
                if lead_coeff.is_zero() {
                    return Err(MinorityError::Internal(format!("longest term of {q} cancelled")));
                }
                // χ_L = (b_new − rest) / c_L
                let inv = lead_coeff.recip();
                let mut entry = Combo::new();
                entry.insert(standard.len(), inv.clone());
                add_scaled(&mut entry, &combo, &-inv, &mut stats.term_ops);
                registry.insert(longest.to_vec(), entry);
                standard.push(q);
            } else {
                let mut g = Polynomial::term(q.clone(), Rational::one());
                for (j, c) in &combo {
                    g.add_term(standard[*j].clone(), -c.clone());
                }
                leading.push(q);
                emitted.push(g);
            }
        }
    }

    let basis = GroebnerBasis::new(emitted, ord, true).with_truncation(Some(d));
    Ok(Conversion {
        basis,
        standard,
        stats,
    })
}
