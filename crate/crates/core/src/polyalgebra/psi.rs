//! The Ψ_{k,m} equation families, the φ_k constants and silver means.
//!
//! Ψ_{k,0} = x^{k+1} − x^k − 1, and Ψ_{k,m+1} comes from Ψ_{k,m} by
//! replacing its leading term x^{k+m+1} with x^{k+m+2} − x^{m+1}.
//! Unrolled, Ψ_{k,m} = x^{k+m+1} − x^k − (1 + x + … + x^m), which equals
//! Ψ_{k,0}·(1 + x + … + x^m). That factorization drives the root structure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::IntPolynomial;
use super::sturm::{self, Bound, RootEnclosure};
use crate::error::{Error, Result};
use crate::real::{self, Real};

/// Ψ_{k,m} built by `m` literal applications of the leading-term replacement.
pub fn build_psi(k: usize, m: usize) -> IntPolynomial {
    assert!(k >= 1, "k must be positive");
    let mut coeffs = vec![BigInt::zero(); k + m + 2];
    coeffs[k + 1] = BigInt::one();
    coeffs[k] = BigInt::from(-1);
    coeffs[0] = BigInt::from(-1);
    for step in 1..=m {
        let top = k + step;
        // x^{top} -> x^{top+1} - x^{step}; the subtracted power may collide.
        let lead = std::mem::take(&mut coeffs[top]);
        coeffs[top + 1] += &lead;
        coeffs[step] -= lead;
    }
    IntPolynomial::new(coeffs)
}

/// Width `10^-(digits+3)` used when a root has to be good to `digits`.
fn width_for_digits(digits: usize) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits + 3))
}

/// Root of `p` in `]lo, hi[` to `digits` decimal digits.
pub fn root_between(p: &IntPolynomial, lo: i64, hi: i64, digits: usize) -> Result<Real> {
    let (a, b) = (BigRational::from_integer(lo.into()), BigRational::from_integer(hi.into()));
    if p.sign_at(&a) * p.sign_at(&b) >= 0 {
        return Err(Error::NoSignChange { lo: lo.to_string(), hi: hi.to_string() });
    }
    Ok(sturm::refine_bracket(p, &a, &b, &width_for_digits(digits)).to_real(digits + 3))
}

fn cyclotomic_six() -> IntPolynomial {
    IntPolynomial::from_i64(&[1, -1, 1])
}

/// The root in ]1,2[ of x^{k+1} − x^k − 1, with its polynomial data.
#[derive(Debug, Clone, Serialize)]
pub struct PhiConstant {
    pub k: usize,
    #[serde(serialize_with = "crate::report::ser_real")]
    pub value: Real,
    pub minimal_poly: IntPolynomial,
    /// Irreducible factor of `minimal_poly` that vanishes at `value`.
    pub divisor: IntPolynomial,
    pub reducible: bool,
    pub digits: usize,
}

/// φ_k to `digits` digits.
///
/// x^{k+1} − x^k − 1 is irreducible unless k ≡ 4 (mod 6), where x² − x + 1
/// splits off; in that case the cofactor is carried as `divisor`.
pub fn phi(k: usize, digits: usize) -> PhiConstant {
    assert!(k >= 1, "k must be positive");
    let minimal_poly = build_psi(k, 0);
    let (divisor, reducible) = match minimal_poly.exact_div(&cyclotomic_six()) {
        Some(q) => (q, true),
        None => (minimal_poly.clone(), false),
    };
    let value = root_between(&minimal_poly, 1, 2, digits).expect("sign change on ]1,2[");
    PhiConstant { k, value, minimal_poly, divisor, reducible, digits }
}

/// Positive root of x² − kx − 1.
#[derive(Debug, Clone, Serialize)]
pub struct SilverMean {
    pub k: u64,
    #[serde(serialize_with = "crate::report::ser_real")]
    pub value: Real,
}

impl SilverMean {
    pub fn new(k: u64, digits: usize) -> Self {
        assert!(k >= 1, "k must be positive");
        let d = digits + 5;
        let kk = real::from_i64(k as i64, d);
        let disc = real::from_i64((k * k + 4) as i64, d);
        let value = (kk + disc.sqrt()) / real::from_i64(2, d);
        Self { k, value }
    }

    /// value² − k·value − 1.
    pub fn residual(&self) -> Real {
        let d = self.value.precision();
        &self.value * &self.value - real::from_i64(self.k as i64, d) * &self.value - real::from_i64(1, d)
    }

    /// Leading partial quotients of the continued fraction expansion.
    pub fn continued_fraction(&self, terms: usize) -> Vec<BigInt> {
        let mut x = real::to_ratio(&self.value);
        let mut out = Vec::with_capacity(terms);
        for _ in 0..terms {
            let a = x.floor();
            out.push(a.to_integer());
            let frac = &x - a;
            if frac.is_zero() {
                break;
            }
            x = frac.recip();
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivativeGaps {
    pub k: usize,
    /// Ψ'_{k,m}(φ_k) for m = 0..=m_max.
    #[serde(serialize_with = "crate::report::ser_reals")]
    pub values: Vec<Real>,
    /// values[m+1] − values[m].
    #[serde(serialize_with = "crate::report::ser_reals")]
    pub gaps: Vec<Real>,
    /// gaps[m+1] / gaps[m].
    #[serde(serialize_with = "crate::report::ser_reals")]
    pub ratios: Vec<Real>,
    pub strictly_increasing: bool,
    #[serde(serialize_with = "crate::report::ser_real")]
    pub phi: Real,
}

impl DerivativeGaps {
    /// Largest |ratio − φ_k|.
    pub fn max_ratio_error(&self) -> f64 {
        self.ratios
            .iter()
            .map(|r| real::to_f64(&real::abs(&(r - &self.phi))))
            .fold(0.0, f64::max)
    }
}

/// Ψ'_{k,m}(φ_k) for m up to `m_max`, with consecutive gaps and gap ratios.
pub fn psi_derivative_gaps(k: usize, m_max: usize, digits: usize) -> Result<DerivativeGaps> {
    if m_max < 3 {
        return Err(Error::InvalidArgument("m_max must be at least 3".into()));
    }
    let phi = phi(k, digits).value;
    let values: Vec<Real> = (0..=m_max)
        .map(|m| build_psi(k, m).derivative().eval_real(&phi))
        .collect();
    let floor = real::ten_pow_neg(digits.saturating_sub(10), digits);
    let mut gaps = Vec::with_capacity(m_max);
    for w in values.windows(2) {
        let gap = &w[1] - &w[0];
        let scale = real::abs(&w[1]) + real::from_i64(1, digits);
        if real::abs(&gap) < &floor * &scale {
            return Err(Error::InsufficientPrecision { needed: digits + 10, got: digits });
        }
        gaps.push(gap);
    }
    let ratios = gaps.windows(2).map(|g| &g[1] / &g[0]).collect();
    let strictly_increasing = values.windows(2).all(|w| w[1] > w[0]);
    Ok(DerivativeGaps { k, values, gaps, ratios, strictly_increasing, phi })
}

/// Real roots of Ψ_{k,m} compared with the predicted root pattern
/// (k even: {−1, φ_k}; k odd: {−1, φ_k, σ_k} in odd degree, {φ_k, σ_k} in even).
#[derive(Debug, Clone, Serialize)]
pub struct PsiRoots {
    pub k: usize,
    pub m: usize,
    pub degree: usize,
    #[serde(serialize_with = "crate::report::ser_reals")]
    pub roots: Vec<Real>,
    pub has_minus_one: bool,
    #[serde(serialize_with = "crate::report::ser_opt_real")]
    pub sigma: Option<Real>,
    pub predicted_count: usize,
    pub predicted_minus_one: bool,
    pub matches_prediction: bool,
    /// Human-readable description of the mismatch, if any.
    pub finding: Option<String>,
}

pub fn psi_real_roots(k: usize, m: usize, tol: f64) -> PsiRoots {
    let p = build_psi(k, m);
    let degree = k + m + 1;
    let width = BigRational::from_float(tol).expect("finite tol");
    let digits = crate::rulecore::digits_for_tol(tol);
    let encl: Vec<RootEnclosure> = sturm::isolate_real_roots(&p, &width);
    let minus_one = -BigRational::one();
    let has_minus_one = p.sign_at(&minus_one) == 0;
    let sigma_count = sturm::sturm_real_root_count(
        &p,
        &Bound::At(minus_one.clone()),
        &Bound::At(-BigRational::new(1.into(), BigInt::from(10).pow(30))),
    );
    let zero = BigRational::zero();
    let sigma = (sigma_count == 1)
        .then(|| {
            encl.iter()
                .find(|e| e.midpoint() > minus_one && e.midpoint() < zero)
                .map(|e| e.to_real(digits))
        })
        .flatten();
    let roots: Vec<Real> = encl.iter().map(|e| e.to_real(digits)).collect();

    let (predicted_count, predicted_minus_one) = if k % 2 == 0 {
        (2, true)
    } else if degree % 2 == 1 {
        (3, true)
    } else {
        (2, false)
    };
    let phi_present = roots.iter().any(|r| real::is_positive(&(r - real::from_i64(1, digits))));
    let sigma_ok = k % 2 == 0 || sigma.is_some();
    let matches_prediction = roots.len() == predicted_count
        && has_minus_one == predicted_minus_one
        && phi_present
        && sigma_ok;
    let finding = (!matches_prediction).then(|| {
        format!(
            "k={k}, m={m}, degree {degree}: found {} real root(s) [{}], expected {predicted_count}{}",
            roots.len(),
            roots.iter().map(|r| real::format_fixed(r, 8)).collect::<Vec<_>>().join(", "),
            if predicted_minus_one { " including -1" } else { " excluding -1" },
        )
    });
    PsiRoots {
        k,
        m,
        degree,
        roots,
        has_minus_one,
        sigma,
        predicted_count,
        predicted_minus_one,
        matches_prediction,
        finding,
    }
}

/// Gap ratios of Ψ' at σ_k (odd k) under two readings of the index pattern.
///
/// `as_printed` = (D_{2m+4} − D_{2m+2}) / (D_{m+2} − D_{2m});
/// `even_steps` = (D_{2m+4} − D_{2m+2}) / (D_{2m+2} − D_{2m}),
/// with D_j = Ψ'_{k,j}(σ_k). Only the second equals σ_k² in general.
#[derive(Debug, Clone, Serialize)]
pub struct SigmaGapRatios {
    pub k: usize,
    pub m: usize,
    #[serde(serialize_with = "crate::report::ser_real")]
    pub sigma: Real,
    #[serde(serialize_with = "crate::report::ser_real")]
    pub sigma_squared: Real,
    #[serde(serialize_with = "crate::report::ser_opt_real")]
    pub as_printed: Option<Real>,
    #[serde(serialize_with = "crate::report::ser_real")]
    pub even_steps: Real,
}

pub fn sigma_gap_ratios(k: usize, m: usize, digits: usize) -> Result<SigmaGapRatios> {
    if k % 2 == 0 {
        return Err(Error::InvalidArgument("σ_k exists for odd k only".into()));
    }
    if m < 2 {
        return Err(Error::InvalidArgument("m must exceed 1".into()));
    }
    let base = build_psi(k, 0);
    let width = width_for_digits(digits);
    let sigma = sturm::refine_bracket(
        &base,
        &-BigRational::one(),
        &BigRational::zero(),
        &width,
    )
    .to_real(digits + 3);
    let d = |j: usize| build_psi(k, j).derivative().eval_real(&sigma);
    let top = d(2 * m + 4) - d(2 * m + 2);
    let printed_den = d(m + 2) - d(2 * m);
    let as_printed = (!real::is_zero(&printed_den)).then(|| &top / &printed_den);
    let even_steps = &top / &(d(2 * m + 2) - d(2 * m));
    let sigma_squared = &sigma * &sigma;
    Ok(SigmaGapRatios { k, m, sigma, sigma_squared, as_printed, even_steps })
}

/// Outcome of testing whether φ_k is a root of `p` by exact division.
#[derive(Debug, Clone, Serialize)]
pub struct Membership {
    pub member: bool,
    pub divisor: IntPolynomial,
    pub quotient: Option<IntPolynomial>,
    /// |p(φ_k)| at the working precision, as a cross-check.
    pub numeric_residual: f64,
}

/// Decides whether φ_k is a root of `p` by exact division by its irreducible
/// polynomial (x³ − x − 1 when k = 4).
pub fn verify_root_membership(p: &IntPolynomial, k: usize) -> Membership {
    let phi = phi(k, 40);
    let quotient = p.exact_div(&phi.divisor);
    let numeric_residual = real::to_f64(&real::abs(&p.eval_real(&phi.value)));
    Membership { member: quotient.is_some(), divisor: phi.divisor, quotient, numeric_residual }
}
