//! Exact Sturm chains and real-root isolation.
//!
//! Chains are built over the rationals and stored as positive integer
//! multiples, so every sign evaluation is exact integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{IntPolynomial, RatPoly};
use crate::error::{Error, Result};
use crate::real::{self, Real};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    PosInf,
    At(BigRational),
}

impl Bound {
    /// Exact binary value of a finite `f64`; infinities map to the ends.
    pub fn from_f64(x: f64) -> Self {
        if x == f64::NEG_INFINITY {
            Bound::NegInf
        } else if x == f64::INFINITY {
            Bound::PosInf
        } else {
            Bound::At(BigRational::from_float(x).expect("finite bound"))
        }
    }
}

/// Rescales by a positive rational to a primitive integer polynomial.
fn positive_multiple(p: &RatPoly) -> IntPolynomial {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = IntPolynomial::new(p.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect());
    let g = ints.content().abs();
    if g.is_zero() {
        return ints;
    }
    IntPolynomial::new(ints.coeffs().iter().map(|c| c / &g).collect())
}

#[derive(Debug, Clone)]
pub struct SturmChain {
    polys: Vec<IntPolynomial>,
}

impl SturmChain {
    /// Chain of the squarefree part of `p`.
    pub fn new(p: &IntPolynomial) -> Self {
        if p.is_zero() {
            return Self { polys: Vec::new() };
        }
        let base = p.squarefree_part();
        let mut polys = vec![base.clone()];
        let mut prev = base.to_rat();
        let mut cur = base.derivative().to_rat();
        while !cur.is_zero() {
            polys.push(positive_multiple(&cur));
            let (_, r) = prev.div_rem(&cur);
            prev = cur;
            cur = r.neg();
        }
        Self { polys }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Squarefree polynomial the chain starts from.
    pub fn base(&self) -> Option<&IntPolynomial> {
        self.polys.first()
    }

    fn sign_at_bound(p: &IntPolynomial, at: &Bound) -> i8 {
        let lead_sign = if p.leading().is_some_and(Signed::is_negative) { -1 } else { 1 };
        let deg = p.degree().unwrap_or(0);
        match at {
            Bound::PosInf => lead_sign,
            Bound::NegInf => {
                if deg % 2 == 0 {
                    lead_sign
                } else {
                    -lead_sign
                }
            }
            Bound::At(x) => p.sign_at(x),
        }
    }

    /// Sign changes along the chain at `at`, zeros skipped.
    pub fn sign_changes(&self, at: &Bound) -> usize {
        let mut changes = 0;
        let mut last = 0i8;
        for p in &self.polys {
            let s = Self::sign_at_bound(p, at);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        if self.polys.is_empty() {
            return 0;
        }
        self.sign_changes(lo).saturating_sub(self.sign_changes(hi))
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
///
/// Multiple roots are counted once. The zero polynomial reports 0.
pub fn sturm_real_root_count(p: &IntPolynomial, lo: &Bound, hi: &Bound) -> usize {
    SturmChain::new(p).count(lo, hi)
}

/// Interval `[lo, hi]` holding exactly one real root; `exact` is set when
/// the root was hit on the nose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEnclosure {
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact: Option<BigRational>,
}

impl RootEnclosure {
    pub fn midpoint(&self) -> BigRational {
        match &self.exact {
            Some(x) => x.clone(),
            None => (&self.lo + &self.hi) / BigRational::from_integer(2.into()),
        }
    }

    pub fn width(&self) -> BigRational {
        if self.exact.is_some() {
            BigRational::zero()
        } else {
            &self.hi - &self.lo
        }
    }

    pub fn to_real(&self, digits: usize) -> Real {
        real::from_ratio(&self.midpoint(), digits)
    }
}

/// A point of `(a, b)` that is not a root of `p`, preferring the midpoint.
fn non_root_split(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let mid = (a + b) / &two;
    if p.sign_at(&mid) != 0 {
        return mid;
    }
    let width = b - a;
    let mut denom = BigRational::from_integer(8.into());
    loop {
        let cand = &mid + &width / &denom;
        if p.sign_at(&cand) != 0 {
            return cand;
        }
        denom = denom * &two;
    }
}

/// Bisects a sign-changing bracket of a squarefree `p` down to `width`.
pub fn refine_bracket(
    p: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
    width: &BigRational,
) -> RootEnclosure {
    let two = BigRational::from_integer(2.into());
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let sa = p.sign_at(&a);
    if sa == 0 {
        return RootEnclosure { lo: a.clone(), hi: a.clone(), exact: Some(a) };
    }
    if p.sign_at(&b) == 0 {
        return RootEnclosure { lo: b.clone(), hi: b.clone(), exact: Some(b) };
    }
    while &b - &a >= *width {
        let mid = (&a + &b) / &two;
        match p.sign_at(&mid) {
            0 => return RootEnclosure { lo: mid.clone(), hi: mid.clone(), exact: Some(mid) },
            s if s == sa => a = mid,
            _ => b = mid,
        }
    }
    RootEnclosure { lo: a, hi: b, exact: None }
}

/// Every real root of `p`, isolated by Sturm counts then refined to `width`.
///
/// Results are sorted ascending; multiple roots appear once.
pub fn isolate_real_roots(p: &IntPolynomial, width: &BigRational) -> Vec<RootEnclosure> {
    let chain = SturmChain::new(p);
    let Some(base) = chain.base().cloned() else {
        return Vec::new();
    };
    if base.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let bound = base.cauchy_bound();
    let mut out = Vec::new();
    // Stack of (a, b] intervals; endpoints are never roots.
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        let n = chain.count(&Bound::At(a.clone()), &Bound::At(b.clone()));
        match n {
            0 => {}
            1 => out.push(refine_bracket(&base, &a, &b, width)),
            _ => {
                let mid = non_root_split(&base, &a, &b);
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    out.sort_by(|x, y| x.midpoint().cmp(&y.midpoint()));
    out
}

/// Real roots of `p` to absolute accuracy `tol`.
pub fn real_roots(p: &IntPolynomial, tol: f64) -> Vec<Real> {
    let digits = crate::rulecore::digits_for_tol(tol);
    let width = BigRational::from_float(tol).expect("finite tol");
    isolate_real_roots(p, &width)
        .iter()
        .map(|e| e.to_real(digits))
        .collect()
}

/// Root of `p` inside `]lo, hi[` by bisection on a sign change.
///
/// The bracket is exact; the returned midpoint is within `tol` of the root.
pub fn dominant_root(p: &IntPolynomial, lo: f64, hi: f64, tol: f64) -> Result<Real> {
    let enc = dominant_root_enclosure(p, lo, hi, tol)?;
    Ok(enc.to_real(crate::rulecore::digits_for_tol(tol)))
}

pub fn dominant_root_enclosure(
    p: &IntPolynomial,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<RootEnclosure> {
    let (a, b) = match (Bound::from_f64(lo), Bound::from_f64(hi)) {
        (Bound::At(a), Bound::At(b)) => (a, b),
        _ => return Err(Error::InvalidArgument("bracket must be finite".into())),
    };
    let (sa, sb) = (p.sign_at(&a), p.sign_at(&b));
    if sa * sb >= 0 {
        return Err(Error::NoSignChange { lo: lo.to_string(), hi: hi.to_string() });
    }
    let width = BigRational::from_float(tol).expect("finite tol");
    Ok(refine_bracket(p, &a, &b, &width))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn all() -> (Bound, Bound) {
        (Bound::NegInf, Bound::PosInf)
    }

    #[test]
    fn golden_quadratic_has_two_roots() {
        let (lo, hi) = all();
        assert_eq!(sturm_real_root_count(&p(&[-1, -1, 1]), &lo, &hi), 2);
    }

    #[test]
    fn multiplicities_are_collapsed() {
        // (x-1)^3 (x+1)
        let a = p(&[-1, 1]);
        let q = &(&(&a * &a) * &a) * &p(&[1, 1]);
        let (lo, hi) = all();
        assert_eq!(sturm_real_root_count(&q, &lo, &hi), 2);
    }

    #[test]
    fn half_open_interval_semantics() {
        // roots 1 and 2
        let q = p(&[2, -3, 1]);
        let at = |x: i64| Bound::At(BigRational::from_integer(x.into()));
        assert_eq!(sturm_real_root_count(&q, &at(1), &at(2)), 1);
        assert_eq!(sturm_real_root_count(&q, &at(0), &at(1)), 1);
        assert_eq!(sturm_real_root_count(&q, &at(0), &at(2)), 2);
        assert_eq!(sturm_real_root_count(&q, &at(2), &at(5)), 0);
    }

    #[test]
    fn constants_and_zero_have_no_roots() {
        let (lo, hi) = all();
        assert_eq!(sturm_real_root_count(&p(&[5]), &lo, &hi), 0);
        assert_eq!(sturm_real_root_count(&IntPolynomial::zero(), &lo, &hi), 0);
    }

    #[test]
    fn plastic_constant_by_bisection() {
        let r = dominant_root(&p(&[-1, -1, 0, 1]), 1.0, 2.0, 1e-20).unwrap();
        assert_eq!(real::format_fixed(&r, 13), "1.3247179572447");
    }

    #[test]
    fn golden_ratio_by_bisection() {
        let r = dominant_root(&p(&[-1, -1, 1]), 1.0, 2.0, 1e-15).unwrap();
        assert_eq!(real::format_fixed(&r, 9), "1.618033988");
    }

    #[test]
    fn phi5_by_bisection() {
        let r = dominant_root(&p(&[-1, 0, 0, 0, 0, -1, 1]), 1.0, 2.0, 1e-15).unwrap();
        assert_eq!(real::format_fixed(&r, 10), "1.2851990332");
    }

    #[test]
    fn bracket_without_sign_change_is_an_error() {
        assert!(matches!(
            dominant_root(&p(&[-1, -1, 1]), 2.0, 3.0, 1e-10),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn enclosure_is_tight_and_brackets() {
        let q = p(&[-1, -1, 0, 1]);
        let enc = dominant_root_enclosure(&q, 1.0, 2.0, 1e-12).unwrap();
        assert!(enc.width() < BigRational::from_float(1e-12).unwrap());
        assert!(q.sign_at(&enc.lo) * q.sign_at(&enc.hi) < 0);
    }

    #[test]
    fn exact_rational_roots_are_detected() {
        // (x + 1)(2x - 1)(x - 3)
        let q = &(&p(&[1, 1]) * &p(&[-1, 2])) * &p(&[-3, 1]);
        let roots = isolate_real_roots(&q, &BigRational::new(1.into(), 1000.into()));
        assert_eq!(roots.len(), 3);
        let mids: Vec<_> = roots.iter().map(|r| r.midpoint()).collect();
        assert!(roots[0].exact.is_some() || roots[0].width() < BigRational::new(1.into(), 1000.into()));
        assert!((&mids[0] + BigRational::one()).abs() < BigRational::new(1.into(), 1000.into()));
        assert!((&mids[2] - BigRational::from_integer(3.into())).abs() < BigRational::new(1.into(), 1000.into()));
    }
}
