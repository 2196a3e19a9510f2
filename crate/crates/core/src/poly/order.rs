use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Monomial, PolyError};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Grlex,
}

/// A monomial order: lex or grlex over a variable priority.
///
/// The priority lists variable indices from most to least significant. `None`
/// means the natural order `x1 > x2 > ... > xn`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            priority: None,
        }
    }

    pub fn grlex() -> Self {
        MonomialOrder {
            kind: OrderKind::Grlex,
            priority: None,
        }
    }

    pub fn new(kind: OrderKind) -> Self {
        MonomialOrder {
            kind,
            priority: None,
        }
    }

    /// Order with an explicit variable priority; `priority` must be a permutation.
    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self, PolyError> {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            if p >= priority.len() || seen[p] {
                return Err(PolyError::BadPriority);
            }
            seen[p] = true;
        }
        let identity = priority.iter().enumerate().all(|(i, &p)| i == p);
        Ok(MonomialOrder {
            kind,
            priority: if identity { None } else { Some(priority) },
        })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// Explicit variable priority, `None` for `x1 > x2 > ...`.
    pub fn priority(&self) -> Option<&[usize]> {
        self.priority.as_deref()
    }

    pub fn is_graded(&self) -> bool {
        self.kind == OrderKind::Grlex
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        if a.nvars() != b.nvars() {
            return Err(PolyError::VariableCount {
                left: a.nvars(),
                right: b.nvars(),
            });
        }
        if let Some(p) = &self.priority {
            if p.len() != a.nvars() {
                return Err(PolyError::VariableCount {
                    left: p.len(),
                    right: a.nvars(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    /// Comparison without the variable-count check.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.kind == OrderKind::Grlex {
            match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        match &self.priority {
            None => a.exponents().cmp(b.exponents()),
            Some(p) => {
                let (ea, eb) = (a.exponents(), b.exponents());
                for &i in p {
                    match ea[i].cmp(&eb[i]) {
                        Ordering::Equal => {}
                        other => return other,
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Sort key whose natural (lexicographic `Vec`) order agrees with this order.
    pub(crate) fn key(&self, m: &Monomial) -> Vec<u32> {
        let e = m.exponents();
        let mut key = Vec::with_capacity(e.len() + 1);
        if self.kind == OrderKind::Grlex {
            key.push(m.degree());
        }
        match &self.priority {
            None => key.extend_from_slice(e),
            Some(p) => key.extend(p.iter().map(|&i| e[i])),
        }
        key
    }

    pub(crate) fn monomial_from_key(&self, key: &[u32]) -> Monomial {
        let body = if self.kind == OrderKind::Grlex {
            &key[1..]
        } else {
            key
        };
        match &self.priority {
            None => Monomial::from_exponents(body.to_vec()),
            Some(p) => {
                let mut exps = vec![0; body.len()];
                for (slot, &i) in p.iter().enumerate() {
                    exps[i] = body[slot];
                }
                Monomial::from_exponents(exps)
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            OrderKind::Lex => "lex",
            OrderKind::Grlex => "grlex",
        };
        match &self.priority {
            None => write!(f, "{name}"),
            Some(p) => {
                write!(f, "{name}(")?;
                for (k, i) in p.iter().enumerate() {
                    if k > 0 {
                        write!(f, ">")?;
                    }
                    write!(f, "x{}", i + 1)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for OrderKind {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lex" => Ok(OrderKind::Lex),
            "grlex" => Ok(OrderKind::Grlex),
            other => Err(PolyError::UnknownOrder(other.to_string())),
        }
    }
}
