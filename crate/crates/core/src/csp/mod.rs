//! CSP instances, their ideal generators, and brute-force solution
//! enumeration used as the membership oracle.

mod format;

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

pub use format::parse_instance;

use crate::dualdisc::lagrange_interpolate;
use crate::error::ParseError;
use crate::minority::{lift_equation, Gf2Equation, Xor, DEFAULT_EXPAND_THRESHOLD};
use crate::poly::{Polynomial, Rational};

pub const DEFAULT_SOLUTION_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CspError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("solution set was truncated; it cannot serve as a membership oracle")]
    Truncated,
}

/// The kind of a constraint, used for pipeline selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Xor,
    Perm,
    Complete,
    TwoFan,
    Relation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    Gf2Linear(Xor),
    /// Bijection `x_i = a ↦ x_j = b`, pairs sorted by `a`.
    Permutation {
        i: usize,
        j: usize,
        pairs: Vec<(Rational, Rational)>,
    },
    /// `D_i × D_j`.
    Complete {
        i: usize,
        di: BTreeSet<Rational>,
        j: usize,
        dj: BTreeSet<Rational>,
    },
    /// `({a} × D_j) ∪ (D_i × {b})`.
    TwoFan {
        i: usize,
        a: Rational,
        di: BTreeSet<Rational>,
        j: usize,
        b: Rational,
        dj: BTreeSet<Rational>,
    },
    /// Explicit tuple set, sorted and deduplicated.
    Relation {
        scope: Vec<usize>,
        tuples: Vec<Vec<Rational>>,
    },
}

fn is_bit(v: &Rational) -> Option<bool> {
    if v.is_zero() {
        Some(false)
    } else if v.is_integer() && v.to_integer() == 1.into() {
        Some(true)
    } else {
        None
    }
}

impl Constraint {
    pub fn tag(&self) -> Tag {
        match self {
            Constraint::Gf2Linear(_) => Tag::Xor,
            Constraint::Permutation { .. } => Tag::Perm,
            Constraint::Complete { .. } => Tag::Complete,
            Constraint::TwoFan { .. } => Tag::TwoFan,
            Constraint::Relation { .. } => Tag::Relation,
        }
    }

    /// Variables the constraint mentions, in its own order (may repeat for
    /// xor constraints).
    pub fn scope(&self) -> Vec<usize> {
        match self {
            Constraint::Gf2Linear(x) => x.vars.clone(),
            Constraint::Permutation { i, j, .. }
            | Constraint::Complete { i, j, .. }
            | Constraint::TwoFan { i, j, .. } => vec![*i, *j],
            Constraint::Relation { scope, .. } => scope.clone(),
        }
    }

    /// Whether a full assignment satisfies the constraint.
    pub fn holds(&self, value: &dyn Fn(usize) -> Rational) -> bool {
        match self {
            Constraint::Gf2Linear(x) => {
                let mut acc = false;
                for &v in &x.vars {
                    match is_bit(&value(v)) {
                        Some(b) => acc ^= b,
                        None => return false,
                    }
                }
                acc == x.parity
            }
            Constraint::Permutation { i, j, pairs } => {
                let (vi, vj) = (value(*i), value(*j));
                pairs.iter().any(|(a, b)| *a == vi && *b == vj)
            }
            Constraint::Complete { i, di, j, dj } => di.contains(&value(*i)) && dj.contains(&value(*j)),
            Constraint::TwoFan { i, a, di, j, b, dj } => {
                let (vi, vj) = (value(*i), value(*j));
                (vi == *a && dj.contains(&vj)) || (vj == *b && di.contains(&vi))
            }
            Constraint::Relation { scope, tuples } => {
                let t: Vec<Rational> = scope.iter().map(|&v| value(v)).collect();
                tuples.binary_search(&t).is_ok()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    nvars: usize,
    domain: Vec<Rational>,
    constraints: Vec<Constraint>,
}

fn check_values<'a>(
    domain: &[Rational],
    vals: impl IntoIterator<Item = &'a Rational>,
) -> Result<(), CspError> {
    for v in vals {
        if domain.binary_search(v).is_err() {
            return Err(CspError::Invalid(format!("value {v} is not in the domain")));
        }
    }
    Ok(())
}

impl CspInstance {
    /// Builds an instance, sorting the domain and checking every constraint
    /// against the variable count and domain.
    pub fn new(nvars: usize, mut domain: Vec<Rational>, constraints: Vec<Constraint>) -> Result<Self, CspError> {
        domain.sort();
        if domain.is_empty() {
            return Err(CspError::Invalid("empty domain".into()));
        }
        if domain.windows(2).any(|w| w[0] == w[1]) {
            return Err(CspError::Invalid("repeated domain value".into()));
        }
        let mut inst = CspInstance {
            nvars,
            domain,
            constraints: Vec::with_capacity(constraints.len()),
        };
        for c in constraints {
            inst.push(c)?;
        }
        Ok(inst)
    }

    /// Validates and appends one constraint, canonicalising its value lists.
    pub fn push(&mut self, c: Constraint) -> Result<(), CspError> {
        let c = self.validate(c)?;
        self.constraints.push(c);
        Ok(())
    }

    fn validate(&self, c: Constraint) -> Result<Constraint, CspError> {
        let d = &self.domain;
        if let Some(&v) = c.scope().iter().find(|&&v| v >= self.nvars) {
            return Err(CspError::Invalid(format!(
                "variable x{} exceeds the {} declared variables",
                v + 1,
                self.nvars
            )));
        }
        let distinct = |i: usize, j: usize| {
            if i == j {
                Err(CspError::Invalid(format!("binary constraint on x{} twice", i + 1)))
            } else {
                Ok(())
            }
        };
        Ok(match c {
            Constraint::Gf2Linear(_) if !self.is_boolean() => {
                return Err(CspError::Invalid("xor constraints need the domain {0,1}".into()));
            }
            Constraint::Gf2Linear(_) => c,
            Constraint::Permutation { i, j, mut pairs } => {
                distinct(i, j)?;
                check_values(d, pairs.iter().flat_map(|(a, b)| [a, b]))?;
                pairs.sort();
                let firsts: BTreeSet<_> = pairs.iter().map(|p| &p.0).collect();
                let seconds: BTreeSet<_> = pairs.iter().map(|p| &p.1).collect();
                if firsts.len() != pairs.len() || seconds.len() != pairs.len() {
                    return Err(CspError::Invalid("permutation pairs are not a bijection".into()));
                }
                Constraint::Permutation { i, j, pairs }
            }
            Constraint::Complete { i, di, j, dj } => {
                distinct(i, j)?;
                check_values(d, di.iter().chain(&dj))?;
                Constraint::Complete { i, di, j, dj }
            }
            Constraint::TwoFan { i, a, di, j, b, dj } => {
                distinct(i, j)?;
                check_values(d, di.iter().chain(&dj))?;
                if !di.contains(&a) || !dj.contains(&b) {
                    return Err(CspError::Invalid("two-fan centre outside its value set".into()));
                }
                Constraint::TwoFan { i, a, di, j, b, dj }
            }
            Constraint::Relation { scope, mut tuples } => {
                let uniq: BTreeSet<_> = scope.iter().collect();
                if uniq.len() != scope.len() {
                    return Err(CspError::Invalid("relation scope repeats a variable".into()));
                }
                if tuples.iter().any(|t| t.len() != scope.len()) {
                    return Err(CspError::Invalid("relation tuple arity differs from its scope".into()));
                }
                check_values(d, tuples.iter().flatten())?;
                tuples.sort();
                tuples.dedup();
                Constraint::Relation { scope, tuples }
            }
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn domain(&self) -> &[Rational] {
        &self.domain
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn tags(&self) -> BTreeSet<Tag> {
        self.constraints.iter().map(Constraint::tag).collect()
    }

    pub fn is_boolean(&self) -> bool {
        self.domain.len() == 2 && is_bit(&self.domain[0]) == Some(false) && is_bit(&self.domain[1]) == Some(true)
    }

    /// The xor constraints, or `None` if any constraint has another kind.
    pub fn xors(&self) -> Option<Vec<Xor>> {
        self.constraints
            .iter()
            .map(|c| match c {
                Constraint::Gf2Linear(x) => Some(x.clone()),
                _ => None,
            })
            .collect()
    }
}

/// Solutions as domain indices, plus a flag when the enumeration cap was hit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    domain: Vec<Rational>,
    nvars: usize,
    assignments: Vec<Vec<u32>>,
    ints: Option<Vec<i64>>,
    pub truncated: bool,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn tuple(&self, k: usize) -> Vec<Rational> {
        self.assignments[k]
            .iter()
            .map(|&i| self.domain[i as usize].clone())
            .collect()
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<Rational>> + '_ {
        (0..self.len()).map(|k| self.tuple(k))
    }

    pub fn contains(&self, t: &[Rational]) -> bool {
        self.tuples().any(|s| s == t)
    }
}

/// Depth-first enumeration in variable-index order; each constraint is
/// checked as soon as its last variable is assigned.
pub fn enumerate_solutions(inst: &CspInstance, cap: usize) -> SolutionSet {
    let n = inst.nvars;
    let mut due: Vec<Vec<&Constraint>> = vec![Vec::new(); n.max(1)];
    let mut always_false = false;
    for c in &inst.constraints {
        match c.scope().into_iter().max() {
            Some(v) => due[v].push(c),
            None => always_false |= !c.holds(&|_| Rational::zero()),
        }
    }
    let ints = inst
        .domain
        .iter()
        .map(|v| if v.is_integer() { v.to_integer().to_i64() } else { None })
        .collect::<Option<Vec<i64>>>();
    let mut out = SolutionSet {
        domain: inst.domain.clone(),
        nvars: n,
        assignments: Vec::new(),
        ints,
        truncated: false,
    };
    if always_false {
        return out;
    }
    let mut cur = vec![0u32; n];
    let domain = &inst.domain;
    fn rec(
        k: usize,
        cur: &mut Vec<u32>,
        domain: &[Rational],
        due: &[Vec<&Constraint>],
        cap: usize,
        out: &mut SolutionSet,
    ) -> bool {
        if k == cur.len() {
            if out.assignments.len() >= cap {
                out.truncated = true;
                return false;
            }
            out.assignments.push(cur.clone());
            return true;
        }
        for v in 0..domain.len() as u32 {
            cur[k] = v;
            let ok = {
                let snapshot = &*cur;
                let value = |x: usize| domain[snapshot[x] as usize].clone();
                due[k].iter().all(|c| c.holds(&value))
            };
            if ok && !rec(k + 1, cur, domain, due, cap, out) {
                return false;
            }
        }
        true
    }
    rec(0, &mut cur, domain, &due, cap, &mut out);
    out
}

/// `f` vanishes on every enumerated solution.
pub fn vanishing_member(f: &Polynomial, sols: &SolutionSet) -> Result<bool, CspError> {
    if sols.truncated {
        return Err(CspError::Truncated);
    }
    let fast = match (&sols.ints, f.integer_image()) {
        (Some(ints), Some(image)) => Some((ints, image)),
        _ => None,
    };
    for (k, a) in sols.assignments.iter().enumerate() {
        let exact = match &fast {
            Some((ints, image)) => match eval_i128(image, a, ints) {
                Some(v) => {
                    if v != 0 {
                        return Ok(false);
                    }
                    continue;
                }
                None => true,
            },
            None => true,
        };
        if exact && !f.eval(&sols.tuple(k)).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn eval_i128(image: &[(Vec<(usize, u32)>, i64)], a: &[u32], ints: &[i64]) -> Option<i128> {
    let mut acc: i128 = 0;
    for (powers, c) in image {
        let mut t = *c as i128;
        for &(v, e) in powers {
            let x = ints[a[v] as usize] as i128;
            for _ in 0..e {
                t = t.checked_mul(x)?;
            }
        }
        acc = acc.checked_add(t)?;
    }
    Some(acc)
}

/// Generators of `I_C`: a domain polynomial per variable plus an
/// interpolating set per constraint.
pub fn ideal_generators(inst: &CspInstance) -> Vec<Polynomial> {
    let n = inst.nvars;
    let mut out: Vec<Polynomial> = (0..n)
        .map(|k| Polynomial::vanishing_on(n, k, &inst.domain))
        .collect();
    for c in &inst.constraints {
        match c {
            Constraint::Gf2Linear(x) => {
                let vars = x.effective_vars();
                match vars.split_first() {
                    None if x.parity => out.push(Polynomial::one(n)),
                    None => {}
                    Some((&lead, rest)) => {
                        let eq = Gf2Equation::new(lead, rest.to_vec(), x.parity);
                        let threshold = DEFAULT_EXPAND_THRESHOLD.max(rest.len());
                        out.push(lift_equation(&eq, n, threshold).expect("threshold covers support"));
                    }
                }
            }
            Constraint::Permutation { i, j, pairs } => {
                out.push(Polynomial::vanishing_on(n, *i, pairs.iter().map(|p| &p.0)));
                out.push(Polynomial::vanishing_on(n, *j, pairs.iter().map(|p| &p.1)));
                if !pairs.is_empty() {
                    let f = lagrange_interpolate(pairs, *i, n).expect("bijection has distinct nodes");
                    out.push(&Polynomial::var(n, *j) - &f);
                }
            }
            Constraint::Complete { i, di, j, dj } => {
                out.push(Polynomial::vanishing_on(n, *i, di));
                out.push(Polynomial::vanishing_on(n, *j, dj));
            }
            Constraint::TwoFan { i, a, di, j, b, dj } => {
                out.push(&Polynomial::linear_factor(n, *i, a) * &Polynomial::linear_factor(n, *j, b));
                out.push(Polynomial::vanishing_on(n, *i, di));
                out.push(Polynomial::vanishing_on(n, *j, dj));
            }
            Constraint::Relation { scope, tuples } => {
                // One indicator per excluded tuple: it is nonzero on that
                // tuple only, among points of D^k.
                let k = scope.len();
                let d = &inst.domain;
                let mut idx = vec![0usize; k];
                loop {
                    let t: Vec<Rational> = idx.iter().map(|&i| d[i].clone()).collect();
                    if tuples.binary_search(&t).is_err() {
                        let mut g = Polynomial::one(n);
                        for (pos, &v) in scope.iter().enumerate() {
                            let others = d.iter().filter(|c| **c != t[pos]);
                            g = &g * &Polynomial::vanishing_on(n, v, others);
                        }
                        out.push(g);
                    }
                    let mut p = 0;
                    while p < k {
                        idx[p] += 1;
                        if idx[p] < d.len() {
                            break;
                        }
                        idx[p] = 0;
                        p += 1;
                    }
                    if p == k {
                        break;
                    }
                }
            }
        }
    }
    out
}
