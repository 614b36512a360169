//! A small language for identities between products of F and L terms.
//!
//! ```text
//! identity := side '=' side
//! side     := sum ['/' coeff]
//! sum      := '(' sum ')' | term (('+' | '-') term)*
//! term     := ['-'] factor ('*' factor)*
//! factor   := int | 'j' ['^' int] | '(' jpoly ')' | '(-1)^[' index ']'
//!           | ('F' | 'L') '[' index ']' ['^' int]
//!           | 'sum(k=1..' index ',' term ')'
//! index    := ['-'] atom (('+' | '-') atom)*
//! atom     := int [var] | var | '|' index '|'
//! var      := 'n' | 'm' | 'r' | 'a' | 'b' | 'c' | 'd' | 'k'
//! ```
//!
//! `2n` means 2·n. Everything evaluates exactly over the integers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::jfl::JFLPair;
use crate::error::{Error, Result};

pub const VARS: [char; 8] = ['n', 'm', 'r', 'a', 'b', 'c', 'd', 'k'];
const SUM_VAR: usize = 7;

fn var_slot(c: char) -> Option<usize> {
    VARS.iter().position(|&v| v == c)
}

/// Integer assignment to the index variables.
pub type Bindings = BTreeMap<char, i64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IndexAtom {
    One,
    Var(usize),
    Abs(Box<Index>),
}

/// Signed sum of index atoms, kept in written order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Index {
    pub parts: Vec<(i64, IndexAtom)>,
}

impl Index {
    pub fn eval(&self, vals: &[i64; 8]) -> i64 {
        self.parts
            .iter()
            .map(|(c, atom)| {
                c * match atom {
                    IndexAtom::One => 1,
                    IndexAtom::Var(slot) => vals[*slot],
                    IndexAtom::Abs(sub) => sub.eval(vals).abs(),
                }
            })
            .sum()
    }

    /// `self + delta`, merged into the constant part.
    pub fn shifted(&self, delta: i64) -> Self {
        let mut out = self.clone();
        match out.parts.iter().position(|(_, a)| *a == IndexAtom::One) {
            Some(i) => {
                out.parts[i].0 += delta;
                if out.parts[i].0 == 0 {
                    out.parts.remove(i);
                }
            }
            None => out.parts.push((delta, IndexAtom::One)),
        }
        out
    }

    fn collect_vars(&self, used: &mut [bool; 8]) {
        for (_, atom) in &self.parts {
            match atom {
                IndexAtom::Var(s) => used[*s] = true,
                IndexAtom::Abs(sub) => sub.collect_vars(used),
                IndexAtom::One => {}
            }
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, atom)) in self.parts.iter().enumerate() {
            let mag = c.unsigned_abs();
            if *c < 0 {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            match atom {
                IndexAtom::One => write!(f, "{mag}")?,
                IndexAtom::Var(s) if mag == 1 => write!(f, "{}", VARS[*s])?,
                IndexAtom::Var(s) => write!(f, "{mag}{}", VARS[*s])?,
                IndexAtom::Abs(sub) if mag == 1 => write!(f, "|{sub}|")?,
                IndexAtom::Abs(sub) => write!(f, "{mag}|{sub}|")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Seq {
    F,
    L,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Factor {
    Int(i64),
    /// Polynomial in j, constant first.
    JPoly(Vec<i64>),
    /// (−1)^index
    SignPow(Index),
    Term { seq: Seq, index: Index, power: u32 },
    /// Σ_{k=1}^{upper} of a product.
    Sum { upper: Index, body: Box<Term> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub negative: bool,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Side {
    pub terms: Vec<Term>,
    pub divisor: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdentityExpr {
    pub lhs: Side,
    pub rhs: Side,
}

fn eval_jpoly(p: &[i64], j: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, &c| acc * j + c)
}

fn sign_pow(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

impl Term {
    fn eval(&self, seqs: &JFLPair, vals: &mut [i64; 8]) -> BigInt {
        let j = BigInt::from(seqs.j());
        let mut acc = BigInt::one();
        for f in &self.factors {
            let v = match f {
                Factor::Int(c) => BigInt::from(*c),
                Factor::JPoly(p) => eval_jpoly(p, &j),
                Factor::SignPow(e) => sign_pow(e.eval(vals)),
                Factor::Term { seq, index, power } => {
                    let i = index.eval(vals);
                    let base = match seq {
                        Seq::F => seqs.fib(i),
                        Seq::L => seqs.lucas(i),
                    };
                    num_traits::pow(base, *power as usize)
                }
                Factor::Sum { upper, body } => {
                    let top = upper.eval(vals);
                    let saved = vals[SUM_VAR];
                    let mut s = BigInt::zero();
                    for k in 1..=top {
                        vals[SUM_VAR] = k;
                        s += body.eval(seqs, vals);
                    }
                    vals[SUM_VAR] = saved;
                    s
                }
            };
            acc *= v;
        }
        if self.negative {
            -acc
        } else {
            acc
        }
    }
}

/// Value of one side: the exact integer, or the numerator/divisor pair
/// when the division is not exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SideValue {
    Exact(BigInt),
    Inexact { numerator: BigInt, divisor: BigInt },
}

impl fmt::Display for SideValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideValue::Exact(v) => write!(f, "{v}"),
            SideValue::Inexact { numerator, divisor } => write!(f, "{numerator}/{divisor}"),
        }
    }
}

impl Side {
    pub fn eval(&self, seqs: &JFLPair, vals: &mut [i64; 8]) -> SideValue {
        let sum: BigInt = self.terms.iter().map(|t| t.eval(seqs, vals)).sum();
        match &self.divisor {
            None => SideValue::Exact(sum),
            Some(p) => {
                let d = eval_jpoly(p, &BigInt::from(seqs.j()));
                if !d.is_zero() && (&sum % &d).is_zero() {
                    SideValue::Exact(sum / d)
                } else {
                    SideValue::Inexact { numerator: sum, divisor: d }
                }
            }
        }
    }
}

pub fn bindings_to_slots(b: &Bindings) -> [i64; 8] {
    let mut vals = [0i64; 8];
    for (&c, &v) in b {
        if let Some(slot) = var_slot(c) {
            vals[slot] = v;
        }
    }
    vals
}

impl IdentityExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let lhs = p.side()?;
        p.expect(b'=')?;
        let rhs = p.side()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(Self { lhs, rhs })
    }

    pub fn eval(&self, seqs: &JFLPair, bindings: &Bindings) -> (SideValue, SideValue) {
        let mut vals = bindings_to_slots(bindings);
        (self.lhs.eval(seqs, &mut vals), self.rhs.eval(seqs, &mut vals))
    }

    /// Free variables, in [`VARS`] order (the summation variable excluded).
    pub fn variables(&self) -> Vec<char> {
        let mut used = [false; 8];
        fn walk_term(t: &Term, used: &mut [bool; 8]) {
            for f in &t.factors {
                match f {
                    Factor::SignPow(i) | Factor::Term { index: i, .. } => i.collect_vars(used),
                    Factor::Sum { upper, body } => {
                        upper.collect_vars(used);
                        walk_term(body, used);
                    }
                    _ => {}
                }
            }
        }
        for t in self.lhs.terms.iter().chain(&self.rhs.terms) {
            walk_term(t, &mut used);
        }
        (0..SUM_VAR).filter(|&s| used[s]).map(|s| VARS[s]).collect()
    }
}

// ---------------------------------------------------------------- rendering

fn render_jpoly(p: &[i64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        let body = match i {
            0 => format!("{mag}"),
            1 if mag == 1 => "j".to_string(),
            1 => format!("{mag}j"),
            _ if mag == 1 => format!("j^{i}"),
            _ => format!("{mag}j^{i}"),
        };
        let sign = if c < 0 { "-" } else { "+" };
        if parts.is_empty() {
            parts.push(if c < 0 { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{sign}{body}"));
        }
    }
    if parts.is_empty() {
        return "0".into();
    }
    let s = parts.concat();
    let single_monomial = p.iter().filter(|c| **c != 0).count() == 1;
    if single_monomial && !s.starts_with('-') {
        s
    } else {
        format!("({s})")
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Int(c) => write!(f, "{c}"),
            Factor::JPoly(p) => f.write_str(&render_jpoly(p)),
            Factor::SignPow(e) => write!(f, "(-1)^[{e}]"),
            Factor::Term { seq, index, power } => {
                let name = match seq {
                    Seq::F => "F",
                    Seq::L => "L",
                };
                write!(f, "{name}[{index}]")?;
                if *power != 1 {
                    write!(f, "^{power}")?;
                }
                Ok(())
            }
            Factor::Sum { upper, body } => write!(f, "sum(k=1..{upper}, {body})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        if self.negative {
            f.write_str("-")?;
        }
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut body = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let s = t.to_string();
            if i == 0 {
                body.push_str(&s);
            } else if let Some(rest) = s.strip_prefix('-') {
                body.push_str(" - ");
                body.push_str(rest);
            } else {
                body.push_str(" + ");
                body.push_str(&s);
            }
        }
        match &self.divisor {
            None => f.write_str(&body),
            Some(d) if self.terms.len() > 1 => write!(f, "({body}) / {}", render_jpoly(d)),
            Some(d) => write!(f, "{body} / {}", render_jpoly(d)),
        }
    }
}

impl fmt::Display for IdentityExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

// ------------------------------------------------------------------ parsing

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax { pos: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn lit(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected an integer"))
    }

    /// Does the parenthesized group at the cursor contain F, L or sum?
    fn group_has_terms(&self) -> bool {
        let mut depth = 0i32;
        for &c in &self.src[self.pos..] {
            match c {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        return false;
                    }
                }
                b'F' | b'L' | b's' => return true,
                _ => {}
            }
        }
        false
    }

    fn side(&mut self) -> Result<Side> {
        let grouped = self.peek() == Some(b'(') && {
            let save = self.pos;
            self.skip_ws();
            let has = self.group_has_terms();
            self.pos = save;
            has
        };
        let terms = if grouped {
            self.expect(b'(')?;
            let t = self.sum()?;
            self.expect(b')')?;
            t
        } else {
            self.sum()?
        };
        let divisor = if self.eat(b'/') { Some(self.jpoly_factor()?) } else { None };
        Ok(Side { terms, divisor })
    }

    fn sum(&mut self) -> Result<Vec<Term>> {
        let mut terms = vec![self.term(false)?];
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term(false)?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push(self.term(true)?);
                }
                _ => return Ok(terms),
            }
        }
    }

    fn term(&mut self, mut negative: bool) -> Result<Term> {
        if self.eat(b'-') {
            negative = !negative;
        }
        let mut factors = vec![self.factor()?];
        while self.eat(b'*') {
            factors.push(self.factor()?);
        }
        Ok(Term { negative, factors })
    }

    /// `j`, `j^2`, an integer, or a parenthesized polynomial in j.
    fn jpoly_factor(&mut self) -> Result<Vec<i64>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.jpoly()?;
                self.expect(b')')?;
                Ok(p)
            }
            Some(b'j') => self.jmonomial(),
            Some(c) if c.is_ascii_digit() => Ok(vec![self.int()?]),
            _ => Err(self.err("expected a coefficient")),
        }
    }

    fn jmonomial(&mut self) -> Result<Vec<i64>> {
        self.expect(b'j')?;
        let power = if self.eat(b'^') { self.int()? as usize } else { 1 };
        let mut p = vec![0; power + 1];
        p[power] = 1;
        Ok(p)
    }

    fn jpoly(&mut self) -> Result<Vec<i64>> {
        let mut out: Vec<i64> = Vec::new();
        let mut sign = if self.eat(b'-') { -1 } else { 1 };
        loop {
            let mono = match self.peek() {
                Some(b'j') => self.jmonomial()?,
                Some(c) if c.is_ascii_digit() => {
                    let c = self.int()?;
                    if self.peek() == Some(b'j') {
                        self.jmonomial()?.into_iter().map(|x| x * c).collect()
                    } else {
                        vec![c]
                    }
                }
                _ => return Err(self.err("expected a polynomial in j")),
            };
            if out.len() < mono.len() {
                out.resize(mono.len(), 0);
            }
            for (i, c) in mono.into_iter().enumerate() {
                out[i] += sign * c;
            }
            sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => return Ok(out),
            };
            self.pos += 1;
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        if self.lit("(-1)^[") {
            let e = self.index()?;
            self.expect(b']')?;
            return Ok(Factor::SignPow(e));
        }
        if self.lit("sum(k=1..") {
            let upper = self.index()?;
            self.expect(b',')?;
            let body = self.term(false)?;
            self.expect(b')')?;
            return Ok(Factor::Sum { upper, body: Box::new(body) });
        }
        match self.peek() {
            Some(c @ (b'F' | b'L')) => {
                self.pos += 1;
                self.expect(b'[')?;
                let index = self.index()?;
                self.expect(b']')?;
                let power = if self.eat(b'^') { self.int()? as u32 } else { 1 };
                let seq = if c == b'F' { Seq::F } else { Seq::L };
                Ok(Factor::Term { seq, index, power })
            }
            Some(b'j') | Some(b'(') => {
                let p = self.jpoly_factor()?;
                Ok(if p.len() == 1 { Factor::Int(p[0]) } else { Factor::JPoly(p) })
            }
            Some(c) if c.is_ascii_digit() => Ok(Factor::Int(self.int()?)),
            _ => Err(self.err("expected a factor")),
        }
    }

    fn index(&mut self) -> Result<Index> {
        let mut idx = Index::default();
        let mut sign = if self.eat(b'-') { -1 } else { 1 };
        loop {
            match self.peek() {
                Some(b'|') => {
                    self.pos += 1;
                    let sub = self.index()?;
                    self.expect(b'|')?;
                    idx.parts.push((sign, IndexAtom::Abs(Box::new(sub))));
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.int()?;
                    match self.src.get(self.pos).copied().and_then(|c| var_slot(c as char)) {
                        Some(slot) => {
                            self.pos += 1;
                            idx.parts.push((sign * n, IndexAtom::Var(slot)));
                        }
                        None => idx.parts.push((sign * n, IndexAtom::One)),
                    }
                }
                Some(c) => match var_slot(c as char) {
                    Some(slot) => {
                        self.pos += 1;
                        idx.parts.push((sign, IndexAtom::Var(slot)));
                    }
                    None => return Err(self.err("expected an index term")),
                },
                None => return Err(self.err("unexpected end of index")),
            }
            sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => return Ok(idx),
            };
            self.pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(pairs: &[(char, i64)]) -> Bindings {
        pairs.iter().copied().collect()
    }

    #[test]
    fn round_trip_rendering() {
        for text in [
            "F[2n] = L[n]*F[n]",
            "F[m+n] = (F[m]*L[n] + L[m]*F[n]) / 2",
            "L[n]^2 + (j^2+4)*F[n]^2 = 4*(-1)^[n]",
            "F[2n] = (F[n+1]^2 - F[n-1]^2) / j",
            "sum(k=1..n, F[k]^2) = F[n]*F[n+1] / j",
            "F[a]*F[b] - F[c]*F[d] = (-1)^[|c-b|+|c-a|]*F[|c-b|]*F[|c-a|]",
            "F[n]^4 - F[n+1]*F[n-1]*F[n+2]*F[n-2] = (-1)^[n]*(j^2-1)*F[n]^2 + j^2",
        ] {
            let e = IdentityExpr::parse(text).unwrap();
            assert_eq!(e.to_string(), text);
            assert_eq!(IdentityExpr::parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn evaluates_double_index() {
        let e = IdentityExpr::parse("F[2n] = L[n]*F[n]").unwrap();
        let (l, r) = e.eval(&JFLPair::new(2), &b(&[('n', 3)]));
        assert_eq!(l, SideValue::Exact(70.into()));
        assert_eq!(r, SideValue::Exact(70.into()));
    }

    #[test]
    fn inexact_division_is_kept() {
        let e = IdentityExpr::parse("F[n] = F[n+1] / 2").unwrap();
        let (_, r) = e.eval(&JFLPair::new(1), &b(&[('n', 3)]));
        assert_eq!(r, SideValue::Inexact { numerator: 3.into(), divisor: 2.into() });
    }

    #[test]
    fn sums_and_signs() {
        let e = IdentityExpr::parse("sum(k=1..n, F[k]^2) = F[n]*F[n+1] / j").unwrap();
        let (l, r) = e.eval(&JFLPair::new(2), &b(&[('n', 4)]));
        // 1 + 4 + 25 + 144 = 174 = 12·29/2
        assert_eq!(l, SideValue::Exact(174.into()));
        assert_eq!(r, l);
        assert_eq!(e.variables(), vec!['n']);
    }

    #[test]
    fn gelin_value_at_order_two() {
        let e = IdentityExpr::parse(
            "F[n]^4 - F[n+1]*F[n-1]*F[n+2]*F[n-2] = (-1)^[n]*(j^2-1)*F[n]^2 + j^2",
        )
        .unwrap();
        let (l, r) = e.eval(&JFLPair::new(2), &b(&[('n', 3)]));
        assert_eq!(l, SideValue::Exact((-71).into()));
        assert_eq!(r, l);
    }

    #[test]
    fn syntax_errors() {
        assert!(IdentityExpr::parse("F[n] = ").is_err());
        assert!(IdentityExpr::parse("F[x] = F[n]").is_err());
        assert!(IdentityExpr::parse("F[n] F[n]").is_err());
    }
}
