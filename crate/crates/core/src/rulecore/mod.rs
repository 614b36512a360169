//! Generalized additive recurrences `u_p = Σ q_j · u_{p - i(j)}`.
//!
//! Terms are exact rationals. [`ratio_limit`] is the only floating routine
//! here and works in extended precision.

mod parse;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use parse::parse_rule;

use crate::error::{Error, Result};
use crate::polyalgebra::IntPolynomial;
use crate::real::{self, Real};

/// Lag set with paired non-zero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecurrenceRule {
    lags: Vec<usize>,
    coeffs: Vec<BigRational>,
}

impl RecurrenceRule {
    /// Builds a rule from `(lag, coeff)` pairs in any order.
    ///
    /// Repeated lags are merged by adding coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, BigRational)>) -> Result<Self> {
        let mut merged: std::collections::BTreeMap<usize, BigRational> = Default::default();
        for (lag, q) in terms {
            if lag < 1 {
                return Err(Error::InvalidLag { lag });
            }
            *merged.entry(lag).or_insert_with(BigRational::zero) += q;
        }
        if merged.is_empty() {
            return Err(Error::InvalidArgument("a rule needs at least one term".into()));
        }
        if let Some((&lag, _)) = merged.iter().find(|(_, q)| q.is_zero()) {
            return Err(Error::ZeroCoefficient { lag });
        }
        let (lags, coeffs) = merged.into_iter().unzip();
        Ok(Self { lags, coeffs })
    }

    /// Rule with every coefficient equal to one.
    pub fn unit(lags: &[usize]) -> Result<Self> {
        Self::from_terms(lags.iter().map(|&l| (l, BigRational::one())))
    }

    /// Rule with integer coefficients.
    pub fn with_integer_coeffs(lags: &[usize], coeffs: &[i64]) -> Result<Self> {
        if lags.len() != coeffs.len() {
            return Err(Error::InvalidArgument("lags and coefficients differ in length".into()));
        }
        Self::from_terms(
            lags.iter()
                .zip(coeffs)
                .map(|(&l, &c)| (l, BigRational::from_integer(c.into()))),
        )
    }

    pub fn lags(&self) -> &[usize] {
        &self.lags
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Largest lag.
    pub fn order(&self) -> usize {
        *self.lags.last().expect("non-empty rule")
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|q| q.is_integer())
    }

    pub fn all_coeffs_positive(&self) -> bool {
        self.coeffs.iter().all(|q| q.is_positive())
    }

    /// Applies the rule at position `p` of `terms` (0-based, `p >= order`).
    pub fn apply_at(&self, terms: &[BigRational], p: usize) -> BigRational {
        self.lags
            .iter()
            .zip(&self.coeffs)
            .map(|(&lag, q)| q * &terms[p - lag])
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// Canonical text form accepted by [`parse_rule`].
    pub fn render(&self) -> String {
        self.lags
            .iter()
            .zip(&self.coeffs)
            .map(|(lag, q)| {
                if q.is_one() {
                    format!("u[n-{lag}]")
                } else {
                    format!("{q}*u[n-{lag}]")
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Display for RecurrenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for RecurrenceRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rule(s)
    }
}

impl Serialize for RecurrenceRule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for RecurrenceRule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rule(&text).map_err(serde::de::Error::custom)
    }
}

/// A finite window of a sequence, `terms[0]` sitting at `start_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSequence {
    pub start_index: i64,
    pub terms: Vec<BigRational>,
}

impl IntegerSequence {
    pub fn new(start_index: i64, terms: Vec<BigRational>) -> Self {
        Self { start_index, terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, index: i64) -> Option<&BigRational> {
        let offset = index.checked_sub(self.start_index)?;
        usize::try_from(offset).ok().and_then(|i| self.terms.get(i))
    }

    /// The terms as integers, if every term is integral.
    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.terms
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect()
    }

    /// Decimal strings (`p/q` for non-integers), the JSON wire form.
    pub fn to_strings(&self) -> Vec<String> {
        self.terms.iter().map(|q| q.to_string()).collect()
    }
}

impl Serialize for IntegerSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

pub fn ints(values: &[i64]) -> Vec<BigRational> {
    values.iter().map(|&v| BigRational::from_integer(v.into())).collect()
}

/// `init` followed by generated terms, `count` terms in total.
pub fn generate_terms(
    rule: &RecurrenceRule,
    init: &[BigRational],
    count: usize,
) -> Result<IntegerSequence> {
    if init.len() < rule.order() {
        return Err(Error::InitTooShort { needed: rule.order(), got: init.len() });
    }
    let mut terms: Vec<BigRational> = init.iter().take(count).cloned().collect();
    terms.reserve(count.saturating_sub(terms.len()));
    while terms.len() < count {
        let next = rule.apply_at(&terms, terms.len());
        terms.push(next);
    }
    Ok(IntegerSequence::new(1, terms))
}

/// Prepends `count` terms by solving the rule for its oldest term.
///
/// `init` is taken to start at index 1, so the result starts at `1 - count`.
pub fn backward_extend(
    rule: &RecurrenceRule,
    init: &[BigRational],
    count: usize,
) -> Result<IntegerSequence> {
    let order = rule.order();
    if init.len() < order {
        return Err(Error::InitTooShort { needed: order, got: init.len() });
    }
    let last = rule.coeffs().last().expect("non-empty rule");
    if last.is_zero() {
        return Err(Error::SingularBackSolve);
    }
    // Work on the reversed window so prepending is a push.
    let mut rev: Vec<BigRational> = init.iter().rev().cloned().collect();
    for _ in 0..count {
        // The new oldest term u_s satisfies u_{s+order} = Σ q_j u_{s+order-i(j)}.
        let k = rev.len();
        let newest = &rev[k - order];
        let mut rest = BigRational::zero();
        for (&lag, q) in rule.lags().iter().zip(rule.coeffs()).take(rule.lags().len() - 1) {
            rest += q * &rev[k - order + lag];
        }
        rev.push((newest - rest) / last);
    }
    rev.reverse();
    Ok(IntegerSequence::new(1 - count as i64, rev))
}

/// `x^n - Σ q_j x^{n - i(j)}` for a rule with integer coefficients.
pub fn characteristic_polynomial(rule: &RecurrenceRule) -> Result<IntPolynomial> {
    if !rule.has_integer_coeffs() {
        return Err(Error::NonIntegerCoefficients);
    }
    let n = rule.order();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    for (&lag, q) in rule.lags().iter().zip(rule.coeffs()) {
        coeffs[n - lag] -= q.to_integer();
    }
    Ok(IntPolynomial::new(coeffs))
}

#[derive(Debug, Clone, Copy)]
pub struct RatioOptions {
    pub max_terms: usize,
    /// Consecutive agreeing accelerated estimates required before stopping.
    pub streak: usize,
}

impl Default for RatioOptions {
    fn default() -> Self {
        Self { max_terms: 10_000, streak: 3 }
    }
}

#[derive(Debug, Clone)]
pub struct RatioLimit {
    pub value: Real,
    pub terms_used: usize,
    pub digits: usize,
}

impl RatioLimit {
    pub fn to_f64(&self) -> f64 {
        real::to_f64(&self.value)
    }
}

/// Working digits for a given absolute tolerance.
pub fn digits_for_tol(tol: f64) -> usize {
    let wanted = if tol > 0.0 { (-tol.log10()).ceil() as usize } else { 40 };
    (wanted + 12).max(30)
}

/// Limit of `u_{n+1}/u_n` by successive ratios with Aitken Δ² acceleration.
pub fn ratio_limit(rule: &RecurrenceRule, init: &[BigRational], tol: f64) -> Result<RatioLimit> {
    ratio_limit_with(rule, init, tol, RatioOptions::default())
}

pub fn ratio_limit_with(
    rule: &RecurrenceRule,
    init: &[BigRational],
    tol: f64,
    opts: RatioOptions,
) -> Result<RatioLimit> {
    let order = rule.order();
    if init.len() < order {
        return Err(Error::InitTooShort { needed: order, got: init.len() });
    }
    if init.iter().all(Zero::is_zero) {
        return Err(Error::AllZeroInit);
    }
    let digits = digits_for_tol(tol);
    let tol_real = real::from_f64(tol, digits);
    // Raw ratios must settle too, so acceleration cannot average away an
    // oscillation between two accumulation points.
    let raw_tol = real::from_f64(tol.sqrt(), digits);

    let mut stepper = TermStepper::new(rule, init);
    let mut ratios: Vec<Real> = Vec::with_capacity(3);
    let mut prev_accel: Option<Real> = None;
    let mut agree = 0usize;

    for used in 1..=opts.max_terms {
        let (prev, next) = stepper.advance();
        let Some(r) = ratio_of(&prev, &next, digits) else {
            ratios.clear();
            prev_accel = None;
            agree = 0;
            continue;
        };
        ratios.push(r);
        if ratios.len() > 3 {
            ratios.remove(0);
        }
        if ratios.len() < 3 {
            continue;
        }
        let accel = aitken(&ratios[0], &ratios[1], &ratios[2]);
        let raw_settled = real::abs(&(&ratios[2] - &ratios[1])) < raw_tol;
        if let Some(p) = &prev_accel {
            if raw_settled && real::abs(&(&accel - p)) < tol_real {
                agree += 1;
            } else {
                agree = 0;
            }
        }
        prev_accel = Some(accel.clone());
        if agree >= opts.streak {
            return Ok(RatioLimit { value: accel, terms_used: used + init.len(), digits });
        }
    }
    Err(Error::NonConvergence { iterations: opts.max_terms })
}

/// `r2 - (r2 - r1)^2 / ((r2 - r1) - (r1 - r0))`, or `r2` when the second
/// difference vanishes.
pub(crate) fn aitken(r0: &Real, r1: &Real, r2: &Real) -> Real {
    let d1 = r2 - r1;
    let d0 = r1 - r0;
    let dd = &d1 - &d0;
    if real::is_zero(&dd) {
        return r2.clone();
    }
    r2 - &d1 * &d1 / dd
}

fn ratio_of(prev: &Scalar, next: &Scalar, digits: usize) -> Option<Real> {
    match (prev, next) {
        (Scalar::Int(a), Scalar::Int(b)) => {
            if a.is_zero() {
                None
            } else {
                Some(real::from_bigint(b, digits) / real::from_bigint(a, digits))
            }
        }
        (Scalar::Rat(a), Scalar::Rat(b)) => {
            if a.is_zero() {
                None
            } else {
                Some(real::from_ratio(&(b / a), digits))
            }
        }
        _ => unreachable!("stepper yields one representation"),
    }
}

enum Scalar {
    Int(BigInt),
    Rat(BigRational),
}

/// Exact term generator keeping only a sliding window.
///
/// Integer rules run on a rescaled integer sequence (ratios are scale
/// invariant); anything else runs on rationals.
struct TermStepper<'a> {
    rule: &'a RecurrenceRule,
    int_coeffs: Option<Vec<BigInt>>,
    ints: Vec<BigInt>,
    rats: Vec<BigRational>,
}

impl<'a> TermStepper<'a> {
    fn new(rule: &'a RecurrenceRule, init: &[BigRational]) -> Self {
        if rule.has_integer_coeffs() {
            let lcm = init.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let ints = init.iter().map(|q| (q * &lcm).to_integer()).collect();
            let int_coeffs = Some(rule.coeffs().iter().map(|q| q.to_integer()).collect());
            Self { rule, int_coeffs, ints, rats: Vec::new() }
        } else {
            Self { rule, int_coeffs: None, ints: Vec::new(), rats: init.to_vec() }
        }
    }

    /// Pushes the next term and returns `(last, next)`.
    fn advance(&mut self) -> (Scalar, Scalar) {
        let order = self.rule.order();
        if let Some(cs) = &self.int_coeffs {
            let n = self.ints.len();
            let mut next = BigInt::zero();
            for (&lag, c) in self.rule.lags().iter().zip(cs) {
                next += c * &self.ints[n - lag];
            }
            let prev = self.ints[n - 1].clone();
            self.ints.push(next.clone());
            if self.ints.len() > 2 * order + 2 {
                self.ints.drain(..self.ints.len() - order - 1);
            }
            (Scalar::Int(prev), Scalar::Int(next))
        } else {
            let n = self.rats.len();
            let next = self.rule.apply_at(&self.rats, n);
            let prev = self.rats[n - 1].clone();
            self.rats.push(next.clone());
            if self.rats.len() > 2 * order + 2 {
                self.rats.drain(..self.rats.len() - order - 1);
            }
            (Scalar::Rat(prev), Scalar::Rat(next))
        }
    }
}

/// Ratio of consecutive terms as `f64`, for quick diagnostics.
pub fn last_ratio_f64(seq: &IntegerSequence) -> Option<f64> {
    let n = seq.terms.len();
    if n < 2 || seq.terms[n - 2].is_zero() {
        return None;
    }
    (&seq.terms[n - 1] / &seq.terms[n - 2]).to_f64()
}
