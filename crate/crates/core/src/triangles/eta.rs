//! η = φ₄², the nearest integers V_n of ηⁿ, the rule-{1,2,4} sequence W and
//! the Perrin numbers P.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyalgebra::{dominant_root_enclosure, IntPolynomial};
use crate::real::{self, Real};
use crate::report::ser_real;

/// Digits kept beyond the integer part of η^count.
const GUARD_DIGITS: usize = 10;

/// Relations between V, W and P, all sequences 1-based except P.
#[derive(Debug, Clone, Serialize)]
pub struct EtaSuite {
    #[serde(serialize_with = "ser_real")]
    pub eta: Real,
    /// V_1, V_2, …
    #[serde(serialize_with = "ser_ints")]
    pub v: Vec<BigInt>,
    /// W_1, W_2, … with W_n = W_{n−1} + W_{n−2} + W_{n−4}
    #[serde(serialize_with = "ser_ints")]
    pub w: Vec<BigInt>,
    /// P(0), P(1), … with P(0)=3, P(1)=0, P(2)=2
    #[serde(serialize_with = "ser_ints")]
    pub perrin: Vec<BigInt>,
    /// n ≥ 5 where V_n ≠ V_{n−1} + V_{n−2} + V_{n−4}.
    pub v_recurrence_breaks: Vec<usize>,
    /// Whether V_n = P(2n+1) for every n > 4 in range.
    pub perrin_as_printed: bool,
    /// Shifts s with V_n = P(2n+s) for every n > 4 in range.
    pub perrin_shifts: Vec<i64>,
    /// n in range where V_n differs from P(2n+s) for the first shift found.
    pub perrin_mismatches: Vec<usize>,
    /// n > 4 where W_{n+3} ≠ V_n + 2W_{n−1}.
    pub w_relation_failures: Vec<usize>,
    /// (n, W_{2n}/(W_n·V_n) − 1) for 5 ≤ n with 2n in range.
    pub doubling_errors: Vec<(usize, f64)>,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn additive(seed: &[i64], lags: &[usize], count: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = seed.iter().map(|&x| BigInt::from(x)).collect();
    while out.len() < count {
        let n = out.len();
        out.push(lags.iter().map(|&l| &out[n - l]).sum());
    }
    out.truncate(count);
    out
}

pub fn eta(digits: usize) -> Result<Real> {
    let p = IntPolynomial::from_i64(&[-1, 0, -1, -1, 1]);
    let width = real::ten_pow_neg(digits + 5, digits + 10);
    let enc = dominant_root_enclosure(&p, 1.0, 2.0, real::to_f64(&width).max(f64::MIN_POSITIVE))?;
    Ok(enc.to_real(digits))
}

/// Builds V_1..=V_count from ηⁿ and checks the V/W/P relations.
pub fn eta_suite(count: usize, digits: usize) -> Result<EtaSuite> {
    if count < 12 {
        return Err(Error::InvalidArgument("count must be at least 12".into()));
    }
    // log10 η < 0.245
    let needed = (count as f64 * 0.245).ceil() as usize + GUARD_DIGITS;
    if digits < needed {
        return Err(Error::InsufficientPrecision { needed, got: digits });
    }
    let eta = eta(digits)?;
    let mut v = Vec::with_capacity(count);
    let mut pow = real::from_i64(1, digits);
    for _ in 0..count {
        pow = &pow * &eta;
        v.push(real::to_ratio(&pow).round().to_integer());
    }
    let w = additive(&[1, 1, 1, 2], &[1, 2, 4], 2 * count + 4);
    let perrin = additive(&[3, 0, 2], &[2, 3], 2 * count + 8);
    let vn = |n: usize| &v[n - 1];
    let wn = |n: usize| &w[n - 1];

    let v_recurrence_breaks =
        (5..=count).filter(|&n| *vn(n) != vn(n - 1) + vn(n - 2) + vn(n - 4)).collect();
    let perrin_at = |n: usize, s: i64| {
        let k = 2 * n as i64 + s;
        (k >= 0).then(|| &perrin[k as usize])
    };
    let shift_holds = |s: i64| (5..=count).all(|n| perrin_at(n, s) == Some(vn(n)));
    let perrin_shifts: Vec<i64> = (-4..=4).filter(|&s| shift_holds(s)).collect();
    let perrin_mismatches = perrin_shifts
        .first()
        .map(|&s| (1..=count).filter(|&n| perrin_at(n, s) != Some(vn(n))).collect())
        .unwrap_or_default();
    let w_relation_failures =
        (5..=count).filter(|&n| *wn(n + 3) != vn(n) + 2 * wn(n - 1)).collect();
    let doubling_errors = (5..=count)
        .map(|n| {
            let q = BigRational::new(wn(2 * n).clone(), wn(n) * vn(n));
            (n, real::to_f64(&real::from_ratio(&q, 30)) - 1.0)
        })
        .collect();
    Ok(EtaSuite {
        eta,
        perrin_as_printed: shift_holds(1),
        perrin_shifts,
        perrin_mismatches,
        v_recurrence_breaks,
        w_relation_failures,
        doubling_errors,
        v,
        w: w[..count + 3].to_vec(),
        perrin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalgebra::phi;

    fn strs(v: &[BigInt]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn v_prefix() {
        let s = eta_suite(12, 40).unwrap();
        assert_eq!(
            strs(&s.v),
            ["2", "3", "5", "9", "17", "29", "51", "90", "158", "277", "486", "853"]
        );
        assert_eq!(strs(&s.w[..8]), ["1", "1", "1", "2", "4", "7", "12", "21"]);
    }

    #[test]
    fn eta_is_phi4_squared() {
        let s = eta_suite(12, 40).unwrap();
        let p4 = phi(4, 40).value;
        let diff = real::to_f64(&(&p4 * &p4 - &s.eta)).abs();
        assert!(diff < 1e-30, "{diff}");
        let e4 = real::to_f64(&(&s.eta * &s.eta * &s.eta * &s.eta));
        assert!((e4 - 9.483_909_2).abs() < 1e-7);
    }

    #[test]
    fn perrin_shift_is_even() {
        let s = eta_suite(40, 40).unwrap();
        assert!(!s.perrin_as_printed);
        assert_eq!(s.perrin_shifts, [0]);
        // V_4 = 9 where P(8) = 10; V_2 = 3 where P(4) = 2
        assert_eq!(s.perrin_mismatches, [2, 4]);
        assert_eq!(s.perrin[8], BigInt::from(10));
    }

    #[test]
    fn w_relation_is_exact() {
        let s = eta_suite(40, 40).unwrap();
        assert!(s.w_relation_failures.is_empty());
        assert_eq!(s.w[7], &s.v[4] + 2 * &s.w[3]);
    }

    #[test]
    fn v_recurrence_breaks_around_the_anomaly() {
        let s = eta_suite(40, 40).unwrap();
        assert_eq!(s.v_recurrence_breaks, [5, 8]);
    }

    #[test]
    fn doubling_ratio_tends_to_one() {
        let s = eta_suite(40, 40).unwrap();
        let errs: Vec<f64> = s.doubling_errors.iter().map(|e| e.1.abs()).collect();
        assert!(errs.iter().all(|e| e.is_finite()));
        assert!(errs[..8].iter().cloned().fold(0.0, f64::max) < 0.05);
        assert!(errs.last().unwrap() < &1e-6);
    }

    #[test]
    fn low_precision_is_refused() {
        assert!(matches!(eta_suite(200, 20), Err(Error::InsufficientPrecision { .. })));
        assert!(eta_suite(5, 40).is_err());
    }
}
