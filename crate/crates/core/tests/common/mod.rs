//! Oracles shared by the property suites and the acceptance run.
#![allow(dead_code)]

use num_traits::ToPrimitive;
use rand::Rng;
use recurlab::polyalgebra::IntPolynomial;

/// Real roots counted by sign changes of the square-free part on a fine grid.
pub fn scan_count(p: &IntPolynomial) -> usize {
    let sf = p.squarefree_part();
    let c: Vec<f64> = sf.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
    let lead = c.last().unwrap().abs();
    let bound = 1.0 + c.iter().rev().skip(1).map(|x| x.abs() / lead).fold(0.0, f64::max);
    let eval = |x: f64| c.iter().rev().fold(0.0, |acc, &a| acc * x + a);
    let h = 1e-4;
    let steps = (2.0 * bound / h).ceil() as usize + 2;
    let mut last = 0.0f64;
    let mut changes = 0;
    for i in 0..steps {
        // offset keeps grid points off rational roots
        let v = eval(-bound - 0.5 * h * std::f64::consts::FRAC_1_SQRT_2 + i as f64 * h);
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            changes += 1;
        }
        last = v;
    }
    changes
}

/// Degree 1..=8, coefficients in [-9, 9], non-zero leading coefficient.
pub fn random_polynomial(rng: &mut impl Rng) -> IntPolynomial {
    let deg = rng.gen_range(1..=8);
    let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
    if coeffs[deg] == 0 {
        coeffs[deg] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    IntPolynomial::from_i64(&coeffs)
}

/// Real root of a polynomial (coefficients lowest first) in [lo, hi] by
/// plain f64 bisection.
pub fn bisect_root(coeffs: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, &a| acc * x + a);
    let s_lo = eval(lo) > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (eval(mid) > 0.0) == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
