use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::MinorityError;
use crate::poly::{fmt_rational, Rational};

/// `(⊕_{j ∈ support} x_j) ⊕ parity`, as a 0/1-valued function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanTerm {
    support: Vec<usize>,
    parity: bool,
}

impl BooleanTerm {
    pub fn new(mut support: Vec<usize>, parity: bool) -> Self {
        support.sort_unstable();
        let mut canon: Vec<usize> = Vec::with_capacity(support.len());
        for v in support {
            if canon.last() == Some(&v) {
                canon.pop();
            } else {
                canon.push(v);
            }
        }
        BooleanTerm { support: canon, parity }
    }

    pub fn var(v: usize) -> Self {
        BooleanTerm {
            support: vec![v],
            parity: false,
        }
    }

    pub fn constant(bit: bool) -> Self {
        BooleanTerm {
            support: Vec::new(),
            parity: bit,
        }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn parity(&self) -> bool {
        self.parity
    }

    pub fn is_constant(&self) -> bool {
        self.support.is_empty()
    }

    /// `self ⊕ other`: symmetric difference of supports, XOR of parities.
    pub fn xor(&self, other: &BooleanTerm) -> BooleanTerm {
        let (a, b) = (&self.support, &other.support);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        BooleanTerm {
            support: out,
            parity: self.parity ^ other.parity,
        }
    }

    pub fn eval(&self, bits: &[bool]) -> bool {
        self.support.iter().fold(self.parity, |acc, &v| acc ^ bits[v])
    }
}

impl fmt::Display for BooleanTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "{}", u8::from(self.parity));
        }
        let names: Vec<String> = self.support.iter().map(|v| format!("x{}", v + 1)).collect();
        write!(f, "({}", names.join("⊕"))?;
        if self.parity {
            write!(f, "⊕1")?;
        }
        write!(f, ")")
    }
}

/// `constant + Σ c_S·(⊕_{j∈S} x_j)` over nonempty supports `S`.
///
/// Terms with parity 1 are rewritten through `f ⊕ 1 = 1 − f`, so each
/// support appears once and the representation is canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermCombination {
    terms: BTreeMap<Vec<usize>, Rational>,
    constant: Rational,
}

impl TermCombination {
    pub fn zero() -> Self {
        TermCombination::default()
    }

    pub fn constant(c: Rational) -> Self {
        TermCombination {
            terms: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    /// Nonempty supports with their coefficients, in ascending support order.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.terms.iter().map(|(s, c)| (s.as_slice(), c))
    }

    pub fn coeff(&self, support: &[usize]) -> Rational {
        self.terms.get(support).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    pub fn add_term(&mut self, t: &BooleanTerm, c: &Rational) {
        if c.is_zero() {
            return;
        }
        if t.parity {
            self.constant += c;
        }
        if t.support.is_empty() {
            return;
        }
        let signed = if t.parity { -c.clone() } else { c.clone() };
        let slot = self
            .terms
            .entry(t.support.clone())
            .or_insert_with(Rational::zero);
        *slot += signed;
        if slot.is_zero() {
            self.terms.remove(&t.support);
        }
    }

    pub fn add_scaled(&mut self, other: &TermCombination, c: &Rational) {
        self.constant += &other.constant * c;
        for (s, v) in &other.terms {
            let slot = self.terms.entry(s.clone()).or_insert_with(Rational::zero);
            *slot += v * c;
            if slot.is_zero() {
                self.terms.remove(s);
            }
        }
    }

    pub fn eval(&self, bits: &[bool]) -> Rational {
        let mut acc = self.constant.clone();
        for (s, c) in &self.terms {
            if s.iter().fold(false, |a, &v| a ^ bits[v]) {
                acc += c;
            }
        }
        acc
    }
}

impl fmt::Display for TermCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sign = |f: &mut fmt::Formatter<'_>, negative: bool| -> fmt::Result {
            let s = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            write!(f, "{s}")
        };
        for (s, c) in &self.terms {
            let t = BooleanTerm {
                support: s.clone(),
                parity: false,
            };
            sign(f, c.is_negative())?;
            let abs = c.abs();
            if abs.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "{}·{t}", fmt_rational(&abs))?;
            }
        }
        if self.terms.is_empty() || !self.constant.is_zero() {
            sign(f, self.constant.is_negative())?;
            write!(f, "{}", fmt_rational(&self.constant.abs()))?;
        }
        Ok(())
    }
}

/// The expansion of a product of Boolean terms together with its longest term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub combination: TermCombination,
    pub longest: BooleanTerm,
}

/// `f₁⋯f_m = 2^{1−m} Σ_{∅≠T⊆[m]} (−1)^{|T|−1} ⊕_{t∈T} f_t`.
pub fn expand_product(factors: &[BooleanTerm]) -> Result<Expansion, MinorityError> {
    let m = factors.len();
    if m == 0 {
        return Err(MinorityError::EmptyProduct);
    }
    if m > 24 {
        return Err(MinorityError::Resource { size: m, threshold: 24 });
    }
    let scale = Rational::new(1.into(), num_bigint::BigInt::one() << (m - 1));
    let mut combination = TermCombination::zero();
    // Gray-code walk so each subset XOR costs one term XOR.
    let mut current = BooleanTerm::constant(false);
    let mut size = 0usize;
    for k in 1u64..(1u64 << m) {
        let flip = k.trailing_zeros() as usize;
        current = current.xor(&factors[flip]);
        let gray = k ^ (k >> 1);
        if gray >> flip & 1 == 1 {
            size += 1;
        } else {
            size -= 1;
        }
        let c = if size % 2 == 1 { scale.clone() } else { -scale.clone() };
        combination.add_term(&current, &c);
    }
    let longest = factors
        .iter()
        .fold(BooleanTerm::constant(false), |acc, f| acc.xor(f));
    Ok(Expansion {
        combination,
        longest,
    })
}
