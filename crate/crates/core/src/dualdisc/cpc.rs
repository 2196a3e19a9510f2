use std::collections::{BTreeMap, BTreeSet};

use super::{lagrange_interpolate, DualDiscError};
use crate::buchberger::{buchberger, reduce_basis, GroebnerBasis, Limits};
use crate::poly::{MonomialOrder, Polynomial, Rational};

/// A partial bijection between the values of `x_i` and `x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perm {
    pub i: usize,
    pub j: usize,
    pub pairs: Vec<(Rational, Rational)>,
}

impl Perm {
    /// Same relation with `i < j`, pairs sorted.
    pub fn oriented(&self) -> Perm {
        let mut p = if self.i <= self.j {
            self.clone()
        } else {
            Perm {
                i: self.j,
                j: self.i,
                pairs: self.pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            }
        };
        p.pairs.sort();
        p.pairs.dedup();
        p
    }

    fn allows(&self, a: &Rational, b: &Rational) -> bool {
        self.pairs.iter().any(|(u, v)| u == a && v == b)
    }
}

/// A chained permutation constraint: variables linked by bijections, kept as
/// the set of value tuples they can jointly take. Each row is a tuple over
/// `vars`; since every pair of columns is a bijection there are at most `|D|`
/// rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cpc {
    vars: Vec<usize>,
    rows: Vec<Vec<Rational>>,
}

impl Cpc {
    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vars.contains(&v)
    }

    fn pos(&self, v: usize) -> usize {
        self.vars.iter().position(|&u| u == v).expect("variable in chain")
    }

    /// `S_v`: the values `x_v` can take.
    pub fn allowed(&self, v: usize) -> BTreeSet<Rational> {
        let k = self.pos(v);
        self.rows.iter().map(|r| r[k].clone()).collect()
    }

    /// `σ_{vw}(a)`.
    pub fn sigma(&self, v: usize, w: usize, a: &Rational) -> Option<Rational> {
        let (kv, kw) = (self.pos(v), self.pos(w));
        self.rows.iter().find(|r| &r[kv] == a).map(|r| r[kw].clone())
    }

    /// Keeps the rows satisfying `keep`; returns whether anything was removed.
    pub fn retain(&mut self, keep: impl Fn(&dyn Fn(usize) -> Rational) -> bool) -> bool {
        let before = self.rows.len();
        let vars = self.vars.clone();
        self.rows.retain(|r| {
            let at = |v: usize| r[vars.iter().position(|&u| u == v).expect("variable in chain")].clone();
            keep(&at)
        });
        self.rows.len() != before
    }
}

/// Chain state: the chains plus the variable-to-chain index.
#[derive(Clone, Debug, Default)]
pub struct Chains {
    cpcs: Vec<Cpc>,
}

/// Raised when a chain loses all its rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Empty;

impl Chains {
    pub fn cpcs(&self) -> &[Cpc] {
        &self.cpcs
    }

    pub fn cpcs_mut(&mut self) -> &mut [Cpc] {
        &mut self.cpcs
    }

    pub fn chain_of(&self, v: usize) -> Option<usize> {
        self.cpcs.iter().position(|c| c.contains(v))
    }

    /// Merges one permutation constraint: create, expand, combine or update.
    /// Returns whether the chains changed.
    pub fn add(&mut self, perm: &Perm) -> Result<bool, Empty> {
        let p = perm.oriented();
        debug_assert_ne!(p.i, p.j);
        let changed = match (self.chain_of(p.i), self.chain_of(p.j)) {
            (None, None) => {
                self.cpcs.push(Cpc {
                    vars: vec![p.i, p.j],
                    rows: p.pairs.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect(),
                });
                true
            }
            (Some(c), None) | (None, Some(c)) => {
                let (inside, outside, forward) = if self.cpcs[c].contains(p.i) {
                    (p.i, p.j, true)
                } else {
                    (p.j, p.i, false)
                };
                let cpc = &mut self.cpcs[c];
                let k = cpc.pos(inside);
                let rows = std::mem::take(&mut cpc.rows);
                cpc.rows = rows
                    .into_iter()
                    .filter_map(|mut r| {
                        let image = p.pairs.iter().find_map(|(a, b)| {
                            if forward && a == &r[k] {
                                Some(b.clone())
                            } else if !forward && b == &r[k] {
                                Some(a.clone())
                            } else {
                                None
                            }
                        })?;
                        r.push(image);
                        Some(r)
                    })
                    .collect();
                cpc.vars.push(outside);
                cpc.normalise();
                true
            }
            (Some(a), Some(b)) if a == b => {
                let cpc = &mut self.cpcs[a];
                let (ki, kj) = (cpc.pos(p.i), cpc.pos(p.j));
                let before = cpc.rows.len();
                cpc.rows.retain(|r| p.allows(&r[ki], &r[kj]));
                cpc.rows.len() != before
            }
            (Some(a), Some(b)) => {
                let (lo, hi) = (a.min(b), a.max(b));
                let second = self.cpcs.remove(hi);
                let first = &mut self.cpcs[lo];
                let (ci, cj) = if first.contains(p.i) {
                    (first.pos(p.i), second.pos(p.j))
                } else {
                    (second.pos(p.i), first.pos(p.j))
                };
                let i_in_first = first.contains(p.i);
                let mut rows = Vec::new();
                for r in &first.rows {
                    for s in &second.rows {
                        let ok = if i_in_first {
                            p.allows(&r[ci], &s[cj])
                        } else {
                            p.allows(&s[ci], &r[cj])
                        };
                        if ok {
                            rows.push(r.iter().chain(s.iter()).cloned().collect());
                        }
                    }
                }
                first.vars.extend(second.vars);
                first.rows = rows;
                first.normalise();
                true
            }
        };
        if self.cpcs.iter().any(|c| c.rows.is_empty()) {
            return Err(Empty);
        }
        Ok(changed)
    }

}

impl Cpc {
    /// Sorts columns by variable index and rows lexicographically.
    fn normalise(&mut self) {
        let mut idx: Vec<usize> = (0..self.vars.len()).collect();
        idx.sort_by_key(|&k| self.vars[k]);
        self.vars = idx.iter().map(|&k| self.vars[k]).collect();
        for r in &mut self.rows {
            *r = idx.iter().map(|&k| r[k].clone()).collect();
        }
        self.rows.sort();
        self.rows.dedup();
    }
}

/// Builds the chains from a list of permutation constraints. Constraints on
/// the same pair are intersected first.
pub fn build_cpcs(perms: &[Perm]) -> Result<Chains, Empty> {
    let mut merged: BTreeMap<(usize, usize), Perm> = BTreeMap::new();
    for p in perms.iter().map(Perm::oriented) {
        merged
            .entry((p.i, p.j))
            .and_modify(|q| q.pairs.retain(|(a, b)| p.allows(a, b)))
            .or_insert(p);
    }
    let mut chains = Chains::default();
    for p in merged.values() {
        chains.add(p)?;
    }
    Ok(chains)
}

/// Reduced grlex basis of the ideal of one chain.
///
/// Variables with identical columns are tied by `x_j − x_k` (the smaller
/// index leads). The remaining representatives get pairwise interpolants and
/// their partial domain polynomials, completed locally.
pub fn cpc_basis(cpc: &Cpc, nvars: usize) -> Result<GroebnerBasis, DualDiscError> {
    let ord = MonomialOrder::grlex();
    let column = |k: usize| -> Vec<Rational> { cpc.rows.iter().map(|r| r[k].clone()).collect() };
    // group by column; the representative is the last (smallest) variable
    let mut groups: BTreeMap<Vec<Rational>, Vec<usize>> = BTreeMap::new();
    for (k, &v) in cpc.vars.iter().enumerate() {
        groups.entry(column(k)).or_default().push(v);
    }
    let mut out = Vec::new();
    let mut reps: Vec<(usize, Vec<Rational>)> = Vec::new();
    for (col, vars) in &groups {
        let rep = *vars.iter().max().expect("nonempty group");
        for &v in vars {
            if v != rep {
                out.push(&Polynomial::var(nvars, v) - &Polynomial::var(nvars, rep));
            }
        }
        reps.push((rep, col.clone()));
    }
    let mut local = Vec::new();
    for (v, col) in &reps {
        let values: BTreeSet<&Rational> = col.iter().collect();
        local.push(Polynomial::vanishing_on(nvars, *v, values));
        for (w, other) in &reps {
            if w == v {
                continue;
            }
            let points: Vec<(Rational, Rational)> =
                other.iter().cloned().zip(col.iter().cloned()).collect();
            let f = lagrange_interpolate(&points, *w, nvars)?;
            local.push(&Polynomial::var(nvars, *v) - &f);
        }
    }
    let gb = buchberger(&local, &ord, &Limits::default())
        .map_err(|e| DualDiscError::Internal(e.to_string()))?;
    out.extend(reduce_basis(&gb).into_elements());
    Ok(reduce_basis(&GroebnerBasis::new(out, ord, false)))
}
