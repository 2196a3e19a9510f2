use bitvec::prelude::*;

/// A raw mod-2 linear constraint `⊕_{v ∈ vars} x_v = parity`.
///
/// Repeated variables cancel in pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Xor {
    pub vars: Vec<usize>,
    pub parity: bool,
}

impl Xor {
    pub fn new(vars: Vec<usize>, parity: bool) -> Self {
        Xor { vars, parity }
    }

    /// Variables that occur an odd number of times, ascending.
    pub fn effective_vars(&self) -> Vec<usize> {
        let mut v = self.vars.clone();
        v.sort_unstable();
        let mut out: Vec<usize> = Vec::with_capacity(v.len());
        for x in v {
            if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        out
    }

    pub fn holds(&self, bits: &[bool]) -> bool {
        self.vars.iter().fold(false, |acc, &v| acc ^ bits[v]) == self.parity
    }
}

/// `x_lead ⊕ (⊕_{j ∈ support} x_j) ⊕ parity = 0`, i.e. `x_lead = f_lead`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Equation {
    pub lead: usize,
    /// Ascending, never contains `lead`.
    pub support: Vec<usize>,
    pub parity: bool,
}

impl Gf2Equation {
    pub fn new(lead: usize, mut support: Vec<usize>, parity: bool) -> Self {
        support.sort_unstable();
        support.dedup();
        assert!(!support.contains(&lead), "lead variable inside its own support");
        Gf2Equation { lead, support, parity }
    }
}

/// A feasible system in reduced row echelon form.
///
/// Equations are stored with the caller's variable indices, sorted by lead.
/// Every lead is the smallest-index variable of its row and occurs in no other
/// row. `var_order` lists pivots first and then the free variables, both
/// ascending; it is the internal renaming `internal ↦ external`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2System {
    n: usize,
    equations: Vec<Gf2Equation>,
    var_order: Vec<usize>,
    lead_of: Vec<Option<usize>>,
}

impl Gf2System {
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn equations(&self) -> &[Gf2Equation] {
        &self.equations
    }

    pub fn rank(&self) -> usize {
        self.equations.len()
    }

    pub fn var_order(&self) -> &[usize] {
        &self.var_order
    }

    /// Non-pivot variables, ascending.
    pub fn free_vars(&self) -> &[usize] {
        &self.var_order[self.equations.len()..]
    }

    /// The equation whose lead is `v`, if `v` is a pivot.
    pub fn equation_for(&self, v: usize) -> Option<&Gf2Equation> {
        self.lead_of[v].map(|k| &self.equations[k])
    }

    /// All assignments in `{0,1}^n`, free variables enumerated as a binary
    /// counter. Only sensible for small `n − r`.
    pub fn solutions(&self) -> Vec<Vec<bool>> {
        let free = self.free_vars();
        let count = 1usize << free.len();
        let mut out = Vec::with_capacity(count);
        for mask in 0..count {
            let mut bits = vec![false; self.n];
            for (k, &v) in free.iter().enumerate() {
                bits[v] = mask >> k & 1 == 1;
            }
            for eq in &self.equations {
                bits[eq.lead] = eq.support.iter().fold(eq.parity, |acc, &j| acc ^ bits[j]);
            }
            out.push(bits);
        }
        out
    }
}

/// The system has no 0/1 solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Infeasible;

/// Gauss–Jordan elimination over GF(2), pivoting on the leftmost column.
pub fn gf2_rref(constraints: &[Xor], n: usize) -> Result<Gf2System, Infeasible> {
    let mut rows: Vec<BitVec> = constraints
        .iter()
        .map(|c| {
            let mut row = bitvec![0; n + 1];
            for &v in &c.vars {
                assert!(v < n, "xor variable out of range");
                let bit = !row[v];
                row.set(v, bit);
            }
            row.set(n, c.parity);
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..n {
        let Some(k) = (top..rows.len()).find(|&k| rows[k][col]) else {
            continue;
        };
        rows.swap(top, k);
        let pivot = rows[top].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != top && row[col] {
                *row ^= &pivot;
            }
        }
        pivots.push(col);
        top += 1;
    }
    if rows[top..].iter().any(|r| r[n]) {
        return Err(Infeasible);
    }

    let mut lead_of = vec![None; n];
    let mut equations = Vec::with_capacity(pivots.len());
    for (k, &p) in pivots.iter().enumerate() {
        let row = &rows[k];
        let support = row[..n].iter_ones().filter(|&j| j != p).collect();
        lead_of[p] = Some(k);
        equations.push(Gf2Equation::new(p, support, row[n]));
    }
    let mut var_order = pivots.clone();
    var_order.extend((0..n).filter(|v| lead_of[*v].is_none()));
    Ok(Gf2System {
        n,
        equations,
        var_order,
        lead_of,
    })
}
