//! Recursive-descent parser for the polynomial text syntax.
//!
//! Accepts sums of products such as `3/2*x1^2*x3 - x2 + 1`. The `*` between
//! factors is optional, parentheses nest, and `/` is allowed only by a nonzero
//! constant. Variables are `x<k>` with `k >= 1`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational};
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Spanned { tok, line: tl, column: tc });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            let n: BigInt = text.parse().expect("digits parse as integer");
            out.push(Spanned { tok: Tok::Num(n), line: tl, column: tc });
            continue;
        }
        if c == 'x' || c == 'X' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j == start {
                return Err(ParseError::new(tl, tc, "expected variable index after 'x'"));
            }
            let text: String = chars[start..j].iter().collect();
            let k: usize = text
                .parse()
                .map_err(|_| ParseError::new(tl, tc, "variable index out of range"))?;
            if k == 0 {
                return Err(ParseError::new(tl, tc, "variables are numbered from x1"));
            }
            col += j - i;
            i = j;
            out.push(Spanned { tok: Tok::Var(k - 1), line: tl, column: tc });
            continue;
        }
        return Err(ParseError::new(tl, tc, format!("unexpected character '{c}'")));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    nvars: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (l, c) = self.here();
        Err(ParseError::new(l, c, msg))
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(ParseError::new(at.0, at.1, "division only by a nonzero constant"));
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                _ if self.starts_factor() => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let exp = match self.peek() {
                Some(Tok::Num(n)) => n.clone(),
                _ => return self.err("expected a non-negative integer exponent"),
            };
            let e: u32 = match u32::try_from(&exp) {
                Ok(e) if e <= 4096 => e,
                _ => return self.err("exponent too large"),
            };
            self.pos += 1;
            let mut acc = Polynomial::one(self.nvars);
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.nvars, Rational::from_integer(n)))
            }
            Tok::Var(k) => {
                if k >= self.nvars {
                    return self.err(format!(
                        "variable x{} exceeds the {} declared variables",
                        k + 1,
                        self.nvars
                    ));
                }
                self.pos += 1;
                Ok(Polynomial::var(self.nvars, k))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            other => self.err(format!("unexpected token {other:?}")),
        }
    }
}

fn end_position(src: &str) -> (usize, usize) {
    let line = src.matches('\n').count() + 1;
    let col = src.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, col)
}

/// Parses `src` as a polynomial in `nvars` variables, or in as many variables
/// as the highest index used when `nvars` is `None`.
pub fn parse_polynomial(src: &str, nvars: Option<usize>) -> Result<Polynomial, ParseError> {
    let toks = lex(src)?;
    let used = toks
        .iter()
        .filter_map(|t| match t.tok {
            Tok::Var(k) => Some(k + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let nvars = nvars.unwrap_or(used);
    let mut p = Parser {
        toks,
        pos: 0,
        nvars,
        end: end_position(src),
    };
    if p.toks.is_empty() {
        return p.err("empty polynomial");
    }
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(poly)
}

/// Parses a rational literal such as `-3/2` or `4`.
pub fn parse_rational(src: &str) -> Option<Rational> {
    let s = src.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}
