//! Fractional parts of xⁿ: distribution and closeness of two such sequences.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::{self, Real};

/// Guard digits kept beyond those eaten by the integer part of xⁿ.
pub const GUARD_DIGITS: usize = 15;

#[derive(Debug, Clone, Serialize)]
pub struct FracProbe {
    pub n_max: usize,
    pub digits: usize,
    /// frac(xⁿ) for n = 1..=n_max.
    pub fracs_x: Vec<f64>,
    pub fracs_y: Option<Vec<f64>>,
    pub star_discrepancy: f64,
    pub epsilon: f64,
    /// Least n with |frac(xⁿ) − frac(yⁿ)| < ε, if y was given and one exists.
    pub first_close: Option<usize>,
}

/// Digits needed to keep [`GUARD_DIGITS`] correct fractional digits of
/// `max(x, y)^n_max`.
pub fn required_digits(x: f64, y: Option<f64>, n_max: usize) -> usize {
    let base = y.map_or(x, |y| x.max(y));
    (n_max as f64 * base.log10()).ceil().max(0.0) as usize + GUARD_DIGITS
}

/// Star discrepancy D*_N of points in [0, 1).
pub fn star_discrepancy(points: &[f64]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let mut s = points.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| ((i as f64 + 1.0) / n - x).max(x - i as f64 / n))
        .fold(0.0, f64::max)
}

fn fractional_parts(x: &Real, n_max: usize) -> Vec<f64> {
    let mut acc = x.clone();
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            acc = &acc * x;
        }
        out.push(real::to_f64(&acc.fract()));
    }
    out
}

/// Fractional parts of xⁿ (and yⁿ) for n ≤ `n_max`.
///
/// Refuses to run when `digits` cannot hold the integer part of the largest
/// power plus [`GUARD_DIGITS`].
pub fn power_frac_probe(
    x: &Real,
    y: Option<&Real>,
    n_max: usize,
    epsilon: f64,
    digits: usize,
) -> Result<FracProbe> {
    let one = real::from_i64(1, digits);
    if *x <= one || y.is_some_and(|y| *y <= one) {
        return Err(Error::InvalidArgument("bases must exceed 1".into()));
    }
    let needed = required_digits(real::to_f64(x), y.map(real::to_f64), n_max);
    if digits < needed {
        return Err(Error::InsufficientPrecision { needed, got: digits });
    }
    let x = x.clone().with_precision(digits).value();
    let fracs_x = fractional_parts(&x, n_max);
    let fracs_y = y.map(|y| fractional_parts(&y.clone().with_precision(digits).value(), n_max));
    let first_close = fracs_y.as_ref().and_then(|fy| {
        fracs_x
            .iter()
            .zip(fy)
            .position(|(a, b)| (a - b).abs() < epsilon)
            .map(|i| i + 1)
    });
    Ok(FracProbe {
        n_max,
        digits,
        star_discrepancy: star_discrepancy(&fracs_x),
        fracs_x,
        fracs_y,
        epsilon,
        first_close,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalgebra::psi::phi;

    #[test]
    fn golden_powers_approach_integers() {
        let x = phi(1, 60).value;
        let p = power_frac_probe(&x, None, 20, 1e-3, 60).unwrap();
        for (i, f) in p.fracs_x.iter().enumerate().skip(9) {
            let n = i + 1;
            // φⁿ = Lₙ − (−1/φ)ⁿ
            if n % 2 == 0 {
                assert!(*f > 0.99, "n={n}: {f}");
            } else {
                assert!(*f < 0.01, "n={n}: {f}");
            }
        }
        assert!(p.star_discrepancy > 0.3, "{}", p.star_discrepancy);
    }

    #[test]
    fn three_halves_reports_a_discrepancy() {
        let x = real::parse("1.5", 60).unwrap();
        let p = power_frac_probe(&x, None, 50, 1e-3, 60).unwrap();
        assert_eq!(p.fracs_x.len(), 50);
        assert!(p.star_discrepancy > 0.0 && p.star_discrepancy < 1.0);
        assert_eq!(p.fracs_x[1], 0.25);
    }

    #[test]
    fn identical_sequences_meet_at_one() {
        let x = real::parse("1.7", 40).unwrap();
        let p = power_frac_probe(&x, Some(&x), 10, 1e-9, 40).unwrap();
        assert_eq!(p.first_close, Some(1));
    }

    #[test]
    fn refuses_without_enough_digits() {
        let x = real::parse("3", 20).unwrap();
        assert!(matches!(
            power_frac_probe(&x, None, 100, 1e-3, 20),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn discrepancy_of_evenly_spaced_points() {
        let pts: Vec<f64> = (0..10).map(|i| (i as f64 + 0.5) / 10.0).collect();
        assert!((star_discrepancy(&pts) - 0.05).abs() < 1e-12);
    }
}
