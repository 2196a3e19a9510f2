use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;

use super::cpc::{Chains, Perm};
use super::DualDiscError;
use crate::buchberger::{reduce_basis, GroebnerBasis};
use crate::poly::{divide, s_polynomial, Monomial, MonomialOrder, Polynomial, Rational};

/// Shape of an element of a complete/two-fan basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `Π_{a∈A}(x_i − a)` with `A ⊆ D`; `|A| = 1` is a fixed value.
    Domain { var: usize, values: BTreeSet<Rational> },
    /// `(x_i − a)(x_j − b)` with `i < j`.
    Fan { i: usize, a: Rational, j: usize, b: Rational },
    /// `x_i + s·x_j + t` with `i < j`, `s ≠ 0`.
    Line { i: usize, j: usize, s: Rational, t: Rational },
    Unit,
}

/// Recognises the shape of a monic polynomial; `None` if it has none of the
/// expected shapes.
pub fn classify(f: &Polynomial, domain: &[Rational]) -> Option<Family> {
    let n = f.nvars();
    let vars = f.variables();
    match vars.as_slice() {
        [] => (!f.is_zero()).then_some(Family::Unit),
        [v] => {
            let roots: BTreeSet<Rational> = domain
                .iter()
                .filter(|a| f.eval(&point(n, &[(*v, (*a).clone())])).is_zero())
                .cloned()
                .collect();
            let g = Polynomial::vanishing_on(n, *v, roots.iter());
            (g == f.monic(&MonomialOrder::grlex())).then_some(Family::Domain { var: *v, values: roots })
        }
        [i, j] => {
            let (i, j) = (*i, *j);
            if f.degree() == 1 {
                let s = f.coeff(&Monomial::var(n, j));
                let ci = f.coeff(&Monomial::var(n, i));
                if ci.is_zero() || s.is_zero() {
                    return None;
                }
                return Some(Family::Line {
                    i,
                    j,
                    s: s / &ci,
                    t: f.constant_term() / &ci,
                });
            }
            let lead = f.coeff(&Monomial::from_vars(n, &[i, j]));
            if lead.is_zero() || f.len() > 4 {
                return None;
            }
            let b = -f.coeff(&Monomial::var(n, i)) / &lead;
            let a = -f.coeff(&Monomial::var(n, j)) / &lead;
            let g = &Polynomial::linear_factor(n, i, &a) * &Polynomial::linear_factor(n, j, &b);
            (g.scale(&lead) == *f && domain.contains(&a) && domain.contains(&b))
                .then_some(Family::Fan { i, a, j, b })
        }
        _ => None,
    }
}

fn point(n: usize, vals: &[(usize, Rational)]) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); n];
    for (v, a) in vals {
        p[*v] = a.clone();
    }
    p
}

/// The values `x_i` takes on the line `x_i + s·x_j + t = 0` for each `x_j`.
pub fn line_perm(i: usize, j: usize, s: &Rational, t: &Rational, dom_i: &BTreeSet<Rational>, dom_j: &BTreeSet<Rational>) -> Perm {
    let pairs = dom_j
        .iter()
        .filter_map(|b| {
            let a = -(s * b) - t;
            dom_i.contains(&a).then(|| (a, b.clone()))
        })
        .collect();
    Perm { i, j, pairs }
}

/// Result of completing a complete/two-fan pool.
#[derive(Clone, Debug)]
pub struct CfOutcome {
    pub basis: GroebnerBasis,
    /// Permutation constraints implied by the basis that are not yet inside
    /// one chain.
    pub pending: Vec<Perm>,
}

/// Extra elements implied by a pair, per its shapes. Returns the new
/// polynomials and any permutation constraint the pair implies.
fn case_rules(f: &Family, g: &Family, n: usize) -> (Vec<Polynomial>, Option<Perm>) {
    let lin = |v: usize, a: &Rational| Polynomial::linear_factor(n, v, a);
    match (f, g) {
        (Family::Domain { var, values }, Family::Fan { i, a, j, b })
        | (Family::Fan { i, a, j, b }, Family::Domain { var, values }) => {
            if var == i && !values.contains(a) {
                (vec![lin(*j, b)], None)
            } else if var == j && !values.contains(b) {
                (vec![lin(*i, a)], None)
            } else {
                (Vec::new(), None)
            }
        }
        (Family::Fan { i, a, j, b }, Family::Fan { i: k, a: c, j: l, b: d }) if i == k && j == l => {
            match (a == c, b == d) {
                (true, true) => (Vec::new(), None),
                (true, false) => (vec![lin(*i, a)], None),
                (false, true) => (vec![lin(*j, b)], None),
                (false, false) => {
                    // solutions on (x_i, x_j) are exactly (a, d) and (c, b)
                    let slope = (c - a) / (b - d);
                    let h = &lin(*i, a) - &lin(*j, d).scale(&slope);
                    let perm = Perm {
                        i: *i,
                        j: *j,
                        pairs: vec![(a.clone(), d.clone()), (c.clone(), b.clone())],
                    };
                    (vec![h], Some(perm))
                }
            }
        }
        (Family::Fan { i, a, j, b }, Family::Fan { i: k, a: c, j: l, b: d }) => {
            // shared variable with distinct centres forces the other two
            let shared = [(i, a, j, b), (j, b, i, a)]
                .into_iter()
                .flat_map(|f| [(f, (k, c, l, d)), (f, (l, d, k, c))])
                .find(|((u, _, _, _), (w, _, _, _))| u == w);
            match shared {
                Some(((_, a, p, b), (_, c, q, d))) if a != c && p != q => {
                    (vec![&lin(*p, b) * &lin(*q, d)], None)
                }
                _ => (Vec::new(), None),
            }
        }
        _ => (Vec::new(), None),
    }
}

/// Completes a pool of complete/two-fan generators (plus any elements added
/// by the combined loop) to its reduced grlex basis.
///
/// Pairs whose shapes are covered by a case rule get the rule's elements
/// first; every pair is then also checked by ordinary S-polynomial reduction,
/// so the result is a Gröbner basis whatever the rules missed. Elements of the
/// final basis must have one of the shapes in [`Family`]. `domains` bounds the
/// value sets used to turn lines into permutation constraints.
pub fn cf_basis(
    pool: &[Polynomial],
    chains: &Chains,
    domains: &[BTreeSet<Rational>],
    domain: &[Rational],
) -> Result<CfOutcome, DualDiscError> {
    let ord = MonomialOrder::grlex();
    let n = domains.len();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut shapes: Vec<Option<Family>> = Vec::new();
    let mut pending = Vec::new();
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();

    let push = |f: Polynomial, basis: &mut Vec<Polynomial>, shapes: &mut Vec<Option<Family>>, pairs: &mut VecDeque<(usize, usize)>| -> Result<bool, DualDiscError> {
        let r = divide(&f, basis, &ord).map_err(|e| DualDiscError::Internal(e.to_string()))?.remainder;
        if r.is_zero() {
            return Ok(false);
        }
        // keep the nicer shape when the element itself is new
        let g = if classify(&f.monic(&ord), domain).is_some() { f } else { r };
        let g = g.monic(&ord);
        let unit = g.is_unit();
        shapes.push(classify(&g, domain));
        basis.push(g);
        let k = basis.len() - 1;
        pairs.extend((0..k).map(|i| (i, k)));
        Ok(unit)
    };

    for f in pool {
        if push(f.clone(), &mut basis, &mut shapes, &mut pairs)? {
            return Ok(unit_outcome(n));
        }
    }
    while let Some((i, j)) = pairs.pop_front() {
        let (li, lj) = (basis[i].leading_monomial(&ord).unwrap(), basis[j].leading_monomial(&ord).unwrap());
        if li.is_coprime(lj) {
            continue;
        }
        if let (Some(fi), Some(fj)) = (&shapes[i], &shapes[j]) {
            let (extra, perm) = case_rules(fi, fj, n);
            pending.extend(perm);
            for h in extra {
                if push(h, &mut basis, &mut shapes, &mut pairs)? {
                    return Ok(unit_outcome(n));
                }
            }
        }
        let s = s_polynomial(&basis[i], &basis[j], &ord).map_err(|e| DualDiscError::Internal(e.to_string()))?;
        if push(s, &mut basis, &mut shapes, &mut pairs)? {
            return Ok(unit_outcome(n));
        }
    }

    let reduced = reduce_basis(&GroebnerBasis::new(basis, ord, false));
    for g in reduced.elements() {
        match classify(g, domain) {
            Some(Family::Line { i, j, s, t }) => {
                let same = matches!((chains.chain_of(i), chains.chain_of(j)), (Some(a), Some(b)) if a == b);
                if !same {
                    pending.push(line_perm(i, j, &s, &t, &domains[i], &domains[j]));
                }
            }
            Some(Family::Unit) => return Ok(unit_outcome(n)),
            Some(_) => {}
            None => {
                return Err(DualDiscError::Internal(format!("basis element {g} has no recognised shape")));
            }
        }
    }
    Ok(CfOutcome { basis: reduced, pending })
}

fn unit_outcome(n: usize) -> CfOutcome {
    CfOutcome {
        basis: GroebnerBasis::unit(n, MonomialOrder::grlex()),
        pending: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buchberger::is_groebner;
    use crate::poly::{parse_polynomial, rat};

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, Some(n)).unwrap()
    }

    fn d3() -> Vec<Rational> {
        vec![rat(0), rat(1), rat(2)]
    }

    fn full(n: usize) -> Vec<BTreeSet<Rational>> {
        vec![d3().into_iter().collect(); n]
    }

    #[test]
    fn shapes_are_recognised() {
        let d = d3();
        assert_eq!(
            classify(&p("(x1 - 1)*(x2 - 2)", 2), &d),
            Some(Family::Fan { i: 0, a: rat(1), j: 1, b: rat(2) })
        );
        assert_eq!(
            classify(&p("x2^2 - 3*x2 + 2", 2), &d),
            Some(Family::Domain { var: 1, values: [rat(1), rat(2)].into_iter().collect() })
        );
        assert!(matches!(classify(&p("x1 + x2 - 2", 2), &d), Some(Family::Line { i: 0, j: 1, .. })));
        assert_eq!(classify(&p("x1^2 - 5", 2), &d), None);
        assert_eq!(classify(&p("(x1 - 7)*(x2 - 2)", 2), &d), None);
    }

    #[test]
    fn two_fans_on_one_pair_give_a_line_and_a_perm() {
        let pool = [p("(x1 - 1)*(x2 - 2)", 2), p("x1*(x2 - 1)", 2), p("x1*(x1-1)*(x1-2)", 2), p("x2*(x2-1)*(x2-2)", 2)];
        let out = cf_basis(&pool, &Chains::default(), &full(2), &d3()).unwrap();
        assert!(out.basis.elements().contains(&p("x1 + x2 - 2", 2)));
        assert!(is_groebner(out.basis.elements(), out.basis.order()));
        let perm = out.pending.iter().find(|q| q.pairs.len() == 2).unwrap().oriented();
        assert_eq!(perm.pairs, vec![(rat(0), rat(2)), (rat(1), rat(1))]);
    }

    #[test]
    fn centre_outside_domain_fixes_the_other_variable() {
        let pool = [p("x1*(x1 - 1)", 2), p("(x1 - 2)*(x2 - 1)", 2), p("x2*(x2-1)*(x2-2)", 2)];
        let out = cf_basis(&pool, &Chains::default(), &full(2), &d3()).unwrap();
        assert_eq!(out.basis.elements(), &[p("x2 - 1", 2), p("x1^2 - x1", 2)]);
    }

    #[test]
    fn equal_centres_fix_the_shared_variable() {
        let pool = [p("(x1 - 1)*(x2 - 2)", 2), p("(x1 - 1)*x2", 2), p("x2*(x2-1)*(x2-2)", 2)];
        let out = cf_basis(&pool, &Chains::default(), &full(2), &d3()).unwrap();
        assert!(out.basis.elements().contains(&p("x1 - 1", 2)));
    }

    #[test]
    fn shared_variable_fans_imply_a_third() {
        let pool = [p("(x1 - 1)*(x2 - 2)", 3), p("x1*(x3 - 1)", 3)];
        let out = cf_basis(&pool, &Chains::default(), &full(3), &d3()).unwrap();
        assert!(is_groebner(out.basis.elements(), out.basis.order()));
        assert!(out.basis.elements().contains(&p("(x2 - 2)*(x3 - 1)", 3)));
    }

    #[test]
    fn contradiction_gives_unit() {
        let pool = [p("x1 - 1", 1), p("x1 - 2", 1)];
        let out = cf_basis(&pool, &Chains::default(), &full(1), &d3()).unwrap();
        assert!(out.basis.is_unit());
    }
}
