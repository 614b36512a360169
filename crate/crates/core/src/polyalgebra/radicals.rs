//! Infinite nested power towers and nested square roots.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::{self, Real};

const TOWER_ITERATION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct PowerTower {
    pub k: f64,
    pub alpha: f64,
    /// Fixed point T of t ↦ (k + t)^{α/(α+1)}.
    #[serde(serialize_with = "crate::report::ser_real")]
    pub tower: Real,
    /// r = T^{1/α}, the solution of Log[k/(r − 1)]/Log(r) = α.
    #[serde(serialize_with = "crate::report::ser_real")]
    pub root: Real,
    /// Log[k/(r − 1)]/Log(r), which should reproduce α.
    #[serde(serialize_with = "crate::report::ser_real")]
    pub log_check: Real,
    pub iterations: usize,
}

fn pow_real(base: &Real, exponent: &Real) -> Real {
    (base.ln() * exponent).exp()
}

/// Evaluates `{k + {k + {…}^{α/(α+1)}}^{α/(α+1)}}` from `t = k`.
///
/// The tower value is r^α where r > 1 solves r^α (r − 1) = k; both are
/// returned, `root` being the one that equals φ_n when k = 1, α = n.
pub fn nested_power_tower(k: f64, alpha: f64, tol: f64) -> Result<PowerTower> {
    if !(k > 0.0) || !(alpha >= 1.0) || !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need k > 0, alpha >= 1, tol > 0 (got k={k}, alpha={alpha}, tol={tol})"
        )));
    }
    let digits = crate::rulecore::digits_for_tol(tol);
    let kk = real::from_f64(k, digits);
    let a = real::from_f64(alpha, digits);
    let one = real::from_i64(1, digits);
    let exponent = &a / (&a + &one);
    let eps = real::from_f64(tol, digits) / real::from_i64(10, digits);
    let mut t = kk.clone();
    let mut iterations = 0;
    loop {
        let next = pow_real(&(&kk + &t), &exponent);
        iterations += 1;
        let delta = real::abs(&(&next - &t));
        t = next;
        if delta < eps {
            break;
        }
        if iterations >= TOWER_ITERATION_CAP {
            return Err(Error::NonConvergence { iterations });
        }
    }
    let root = pow_real(&t, &(&one / &a));
    let log_check = (&kk / (&root - &one)).ln() / root.ln();
    Ok(PowerTower { k, alpha, tower: t, root, log_check, iterations })
}

/// `k − 1 + √(k² − k + 1 + √(k² − k + 1 + …))`, the positive root of
/// x² − (2k − 1)x − 1.
pub fn odd_silver_nested_radical(k: u64, tol: f64) -> Result<Real> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let digits = crate::rulecore::digits_for_tol(tol);
    let c = real::from_i64((k * k - k + 1) as i64, digits);
    let eps = real::from_f64(tol, digits) / real::from_i64(10, digits);
    let mut t = c.clone().sqrt();
    for _ in 0..TOWER_ITERATION_CAP {
        let next = (&c + &t).sqrt();
        let delta = real::abs(&(&next - &t));
        t = next;
        if delta < eps {
            return Ok(t + real::from_i64(k as i64 - 1, digits));
        }
    }
    Err(Error::NonConvergence { iterations: TOWER_ITERATION_CAP })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalgebra::poly::IntPolynomial;
    use crate::polyalgebra::sturm::dominant_root;

    fn f(x: &Real) -> f64 {
        real::to_f64(x)
    }

    #[test]
    fn alpha_one_is_the_golden_ratio() {
        let t = nested_power_tower(1.0, 1.0, 1e-14).unwrap();
        assert_eq!(real::format_fixed(&t.root, 9), "1.618033988");
    }

    #[test]
    fn alpha_four_is_the_plastic_constant() {
        let t = nested_power_tower(1.0, 4.0, 1e-14).unwrap();
        assert_eq!(real::format_fixed(&t.root, 5), "1.32471");
        // the tower itself is r^4
        assert!((f(&t.tower) - 1.324717957244746f64.powi(4)).abs() < 1e-12);
    }

    #[test]
    fn alpha_two_matches_bisection() {
        let t = nested_power_tower(1.0, 2.0, 1e-14).unwrap();
        let r = dominant_root(&IntPolynomial::from_i64(&[-1, 0, -1, 1]), 1.0, 2.0, 1e-20).unwrap();
        assert!(f(&real::abs(&(&t.root - &r))) < 1e-13);
    }

    #[test]
    fn log_round_trip() {
        for k in [1.0, 2.0, 3.0] {
            for alpha in [1.0, 1.5, 2.0, 3.0, 4.0] {
                let t = nested_power_tower(k, alpha, 1e-12).unwrap();
                assert!((f(&t.log_check) - alpha).abs() < 1e-11, "k={k} alpha={alpha}");
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(nested_power_tower(0.0, 1.0, 1e-10).is_err());
        assert!(nested_power_tower(1.0, 0.5, 1e-10).is_err());
    }

    #[test]
    fn odd_silver_radicals() {
        let tol = 1e-14;
        let g = odd_silver_nested_radical(1, tol).unwrap();
        assert_eq!(real::format_fixed(&g, 9), "1.618033988");
        for k in 1..=6u64 {
            let v = f(&odd_silver_nested_radical(k, tol).unwrap());
            let b = (2 * k - 1) as f64;
            let exact = (b + (b * b + 4.0).sqrt()) / 2.0;
            assert!((v - exact).abs() < 10.0 * tol, "k={k}");
        }
        assert_eq!(real::format_fixed(&odd_silver_nested_radical(2, tol).unwrap(), 6), "3.302775");
    }
}
