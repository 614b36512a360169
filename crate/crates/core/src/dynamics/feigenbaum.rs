//! Gap ratios of period-doubling parameters, and a classical logistic
//! cascade to check the estimator against.

use crate::error::{Error, Result};

/// δ_m = (a_m − a_{m−1}) / (a_{m+1} − a_m) for every interior m.
pub fn feigenbaum_estimate(points: &[f64]) -> Result<Vec<f64>> {
    if points.len() < 4 {
        return Err(Error::InvalidArgument("need at least 4 points".into()));
    }
    if !points.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument("points must be strictly increasing".into()));
    }
    Ok(points.windows(3).map(|w| (w[1] - w[0]) / (w[2] - w[1])).collect())
}

/// f_r^{2^n}(1/2) − 1/2 and its derivative in r.
fn superstable_residual(r: f64, n: u32) -> (f64, f64) {
    let (mut x, mut dx) = (0.5, 0.0);
    for _ in 0..1u64 << n {
        dx = x * (1.0 - x) + r * (1.0 - 2.0 * x) * dx;
        x = r * x * (1.0 - x);
    }
    (x - 0.5, dx)
}

/// Parameters r of x ↦ r·x(1−x) whose 2ⁿ-cycle passes through 1/2,
/// for n = 0..count. Their gaps shrink by Feigenbaum's δ.
pub fn logistic_superstable_points(count: usize) -> Result<Vec<f64>> {
    if count > 14 {
        return Err(Error::InvalidArgument("double precision supports at most 14 points".into()));
    }
    let mut out: Vec<f64> = Vec::with_capacity(count);
    for n in 0..count as u32 {
        let mut r = match out.len() {
            0 => 2.0,
            1 => 3.2,
            k => out[k - 1] + (out[k - 1] - out[k - 2]) / 4.0,
        };
        for _ in 0..100 {
            let (g, dg) = superstable_residual(r, n);
            let step = g / dg;
            r -= step;
            if step.abs() < 1e-15 * r {
                break;
            }
        }
        out.push(r);
    }
    Ok(out)
}
