//! Line-oriented instance syntax.
//!
//! ```text
//! vars 5
//! domain 0,1
//! xor x1 ^ x3 ^ x4 = 0
//! perm x1 x2 : 0->1, 1->0
//! complete x1 {0,1} x3 {1}
//! twofan x1 1 {0,1} x2 0 {0,1}
//! rel (x1,x2) : (0,1),(1,0)
//! ```
//!
//! `vars` must come first and `domain` (default `0,1`) before any
//! constraint. `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use super::{Constraint, CspError, CspInstance};
use crate::error::ParseError;
use crate::minority::Xor;
use crate::poly::{fmt_rational, rat, Rational};

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.line, self.col(), msg))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let want: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&want) {
            self.pos += want.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn count(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let at = self.pos;
        match self.digits().and_then(|s| s.parse().ok()) {
            Some(n) => Ok(n),
            None => {
                self.pos = at;
                self.err("expected a non-negative integer")
            }
        }
    }

    fn var(&mut self, nvars: usize) -> Result<usize, ParseError> {
        self.skip_ws();
        let at = self.pos;
        if !matches!(self.chars.get(self.pos), Some('x') | Some('X')) {
            return self.err("expected a variable such as x1");
        }
        self.pos += 1;
        let k: usize = match self.digits().and_then(|s| s.parse().ok()) {
            Some(k) if k >= 1 => k,
            _ => {
                self.pos = at;
                return self.err("variables are written x1, x2, ...");
            }
        };
        if k > nvars {
            self.pos = at;
            return self.err(format!("variable x{k} exceeds the {nvars} declared variables"));
        }
        Ok(k - 1)
    }

    fn value(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let neg = self.chars.get(self.pos) == Some(&'-');
        if neg {
            self.pos += 1;
        }
        let Some(num) = self.digits() else {
            self.pos = at;
            return self.err("expected a value");
        };
        let mut v = Rational::from_integer(num.parse::<BigInt>().expect("digits"));
        if self.chars.get(self.pos) == Some(&'/') {
            self.pos += 1;
            let den: BigInt = match self.digits() {
                Some(d) => d.parse().expect("digits"),
                None => return self.err("expected a denominator"),
            };
            if den == BigInt::from(0) {
                self.pos = at;
                return self.err("zero denominator");
            }
            v /= Rational::from_integer(den);
        }
        Ok(if neg { -v } else { v })
    }

    fn in_domain(&mut self, domain: &[Rational]) -> Result<Rational, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let v = self.value()?;
        if domain.binary_search(&v).is_err() {
            self.pos = at;
            return self.err(format!("value {} is not in the domain", fmt_rational(&v)));
        }
        Ok(v)
    }

    fn set(&mut self, domain: &[Rational]) -> Result<BTreeSet<Rational>, ParseError> {
        self.expect('{')?;
        let mut out = BTreeSet::new();
        if self.eat('}') {
            return Ok(out);
        }
        loop {
            out.insert(self.in_domain(domain)?);
            if self.eat('}') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

pub fn parse_instance(src: &str) -> Result<CspInstance, CspError> {
    let mut nvars: Option<usize> = None;
    let mut domain: Option<Vec<Rational>> = None;
    let mut inst: Option<CspInstance> = None;

    for (k, raw) in src.lines().enumerate() {
        let line_no = k + 1;
        let body = strip_comment(raw);
        let mut cur = Cursor::new(body, line_no);
        if cur.at_end() {
            continue;
        }
        let kw_at = cur.col();
        let kw = cur.word();
        let bad = |col: usize, msg: String| CspError::Parse(ParseError::new(line_no, col, msg));

        match kw.as_str() {
            "vars" => {
                if nvars.is_some() {
                    return Err(bad(kw_at, "duplicate 'vars' declaration".into()));
                }
                nvars = Some(cur.count()?);
                cur.finish()?;
                continue;
            }
            "domain" => {
                if nvars.is_none() {
                    return Err(bad(kw_at, "'vars' must come first".into()));
                }
                if domain.is_some() || inst.is_some() {
                    return Err(bad(kw_at, "'domain' must appear once, before any constraint".into()));
                }
                let mut vals = Vec::new();
                loop {
                    cur.skip_ws();
                    let at = cur.col();
                    let v = cur.value()?;
                    if vals.contains(&v) {
                        return Err(bad(at, format!("repeated domain value {}", fmt_rational(&v))));
                    }
                    vals.push(v);
                    if !cur.eat(',') {
                        break;
                    }
                }
                cur.finish()?;
                vals.sort();
                domain = Some(vals);
                continue;
            }
            _ => {}
        }

        let Some(n) = nvars else {
            return Err(bad(kw_at, "'vars' must come first".into()));
        };
        if inst.is_none() {
            let d = domain.clone().unwrap_or_else(|| vec![rat(0), rat(1)]);
            inst = Some(CspInstance::new(n, d, Vec::new())?);
        }
        let target = inst.as_mut().expect("initialised above");
        let d = target.domain().to_vec();
        let c = match kw.as_str() {
            "xor" => {
                let mut vars = Vec::new();
                if !cur.eat('=') {
                    loop {
                        vars.push(cur.var(n)?);
                        if cur.eat('=') {
                            break;
                        }
                        if !cur.eat('^') {
                            return cur.err("expected '^' or '='").map_err(Into::into);
                        }
                    }
                }
                cur.skip_ws();
                let at = cur.col();
                let v = cur.value()?;
                let parity = if v == rat(0) {
                    false
                } else if v == rat(1) {
                    true
                } else {
                    return Err(bad(at, "xor right-hand side must be 0 or 1".into()));
                };
                Constraint::Gf2Linear(Xor::new(vars, parity))
            }
            "perm" => {
                let i = cur.var(n)?;
                let j = cur.var(n)?;
                cur.expect(':')?;
                let mut pairs = Vec::new();
                if !cur.at_end() {
                    loop {
                        let a = cur.in_domain(&d)?;
                        if !cur.eat_str("->") {
                            return cur.err("expected '->'").map_err(Into::into);
                        }
                        let b = cur.in_domain(&d)?;
                        pairs.push((a, b));
                        if !cur.eat(',') {
                            break;
                        }
                    }
                }
                Constraint::Permutation { i, j, pairs }
            }
            "complete" => {
                let i = cur.var(n)?;
                let di = cur.set(&d)?;
                let j = cur.var(n)?;
                let dj = cur.set(&d)?;
                Constraint::Complete { i, di, j, dj }
            }
            "twofan" => {
                let i = cur.var(n)?;
                let a = cur.in_domain(&d)?;
                let di = cur.set(&d)?;
                let j = cur.var(n)?;
                let b = cur.in_domain(&d)?;
                let dj = cur.set(&d)?;
                Constraint::TwoFan { i, a, di, j, b, dj }
            }
            "rel" => {
                cur.expect('(')?;
                let mut scope = Vec::new();
                if !cur.eat(')') {
                    loop {
                        scope.push(cur.var(n)?);
                        if cur.eat(')') {
                            break;
                        }
                        cur.expect(',')?;
                    }
                }
                cur.expect(':')?;
                let mut tuples = Vec::new();
                while cur.eat('(') {
                    let mut t = Vec::new();
                    if !cur.eat(')') {
                        loop {
                            t.push(cur.in_domain(&d)?);
                            if cur.eat(')') {
                                break;
                            }
                            cur.expect(',')?;
                        }
                    }
                    tuples.push(t);
                    if !cur.eat(',') {
                        break;
                    }
                }
                Constraint::Relation { scope, tuples }
            }
            "" => return Err(bad(kw_at, "expected a declaration keyword".into())),
            other => return Err(bad(kw_at, format!("unknown declaration '{other}'"))),
        };
        cur.finish()?;
        target.push(c).map_err(|e| match e {
            CspError::Invalid(msg) => bad(kw_at, msg),
            other => other,
        })?;
    }

    match (inst, nvars) {
        (Some(i), _) => Ok(i),
        (None, Some(n)) => Ok(CspInstance::new(
            n,
            domain.unwrap_or_else(|| vec![rat(0), rat(1)]),
            Vec::new(),
        )?),
        (None, None) => Err(CspError::Parse(ParseError::new(1, 1, "empty instance: missing 'vars'"))),
    }
}

fn fmt_set(s: &BTreeSet<Rational>) -> String {
    let v: Vec<String> = s.iter().map(fmt_rational).collect();
    format!("{{{}}}", v.join(","))
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = |v: &usize| format!("x{}", v + 1);
        match self {
            Constraint::Gf2Linear(c) => {
                let vars: Vec<String> = c.vars.iter().map(x).collect();
                if vars.is_empty() {
                    write!(f, "xor = {}", u8::from(c.parity))
                } else {
                    write!(f, "xor {} = {}", vars.join(" ^ "), u8::from(c.parity))
                }
            }
            Constraint::Permutation { i, j, pairs } => {
                let ps: Vec<String> = pairs
                    .iter()
                    .map(|(a, b)| format!("{}->{}", fmt_rational(a), fmt_rational(b)))
                    .collect();
                write!(f, "perm {} {} : {}", x(i), x(j), ps.join(", "))
            }
            Constraint::Complete { i, di, j, dj } => {
                write!(f, "complete {} {} {} {}", x(i), fmt_set(di), x(j), fmt_set(dj))
            }
            Constraint::TwoFan { i, a, di, j, b, dj } => write!(
                f,
                "twofan {} {} {} {} {} {}",
                x(i),
                fmt_rational(a),
                fmt_set(di),
                x(j),
                fmt_rational(b),
                fmt_set(dj)
            ),
            Constraint::Relation { scope, tuples } => {
                let s: Vec<String> = scope.iter().map(x).collect();
                let ts: Vec<String> = tuples
                    .iter()
                    .map(|t| {
                        let v: Vec<String> = t.iter().map(fmt_rational).collect();
                        format!("({})", v.join(","))
                    })
                    .collect();
                write!(f, "rel ({}) : {}", s.join(","), ts.join(","))
            }
        }
    }
}

impl fmt::Display for CspInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {}", self.nvars)?;
        let d: Vec<String> = self.domain.iter().map(fmt_rational).collect();
        writeln!(f, "domain {}", d.join(","))?;
        for c in &self.constraints {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
