//! Letter-frequency limits from exact counts, and the length-ratio check
//! against the dominant root of the lag set.

use num_rational::BigRational;
use serde::Serialize;

use super::WordSystem;
use crate::error::{Error, Result};
use crate::polyalgebra::dominant_root;
use crate::real::{self, Real};
use crate::report::{ser_opt_real, ser_real};
use crate::rulecore::{aitken, characteristic_polynomial, ratio_limit, RecurrenceRule};

#[derive(Debug, Clone, Serialize)]
pub struct LetterLimit {
    pub letter: char,
    /// count/length of u_{p_max}, exact.
    pub last: String,
    /// |f(p) − f(p−1)| for the last few p.
    pub recent_differences: Vec<f64>,
    /// Aitken Δ² extrapolation of the last three frequencies.
    #[serde(serialize_with = "ser_real")]
    pub limit: Real,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrequencyLimits {
    pub p_max: usize,
    pub letters: Vec<LetterLimit>,
    /// Accelerated limit of |u_{p+1}|/|u_p|, when it settles.
    #[serde(serialize_with = "ser_opt_real")]
    pub length_ratio: Option<Real>,
    /// Positive root of x^n − Σ x^{n−i} over the lag set.
    #[serde(serialize_with = "ser_real")]
    pub dominant_root: Real,
    pub ratio_error: Option<f64>,
}

const DIGITS: usize = 40;
const RECENT: usize = 4;

pub fn letter_frequency_limits(system: &WordSystem, p_max: usize) -> Result<FrequencyLimits> {
    let n = system.n();
    if p_max < n + 5 {
        return Err(Error::InvalidArgument(format!("p_max must be at least {}", n + 5)));
    }
    let mut sys = system.clone();
    sys.extend_to(p_max);
    let freqs: Vec<Vec<BigRational>> = sys.metas().iter().map(|m| m.frequencies()).collect();
    let letters = sys
        .alphabet()
        .iter()
        .enumerate()
        .map(|(i, &letter)| {
            let f: Vec<Real> = freqs[p_max - 3..].iter().map(|v| real::from_ratio(&v[i], DIGITS)).collect();
            let recent_differences = (p_max - RECENT..p_max)
                .map(|p| real::to_f64(&real::from_ratio(&(&freqs[p][i] - &freqs[p - 1][i]), DIGITS)).abs())
                .collect();
            LetterLimit {
                letter,
                last: freqs[p_max - 1][i].to_string(),
                recent_differences,
                limit: aitken(&f[0], &f[1], &f[2]),
            }
        })
        .collect();

    let lags = sys.lags();
    let rule = RecurrenceRule::unit(&lags)?;
    let root = dominant_root(&characteristic_polynomial(&rule)?, 0.5, 2.5, 1e-30)?;
    let lengths: Vec<BigRational> =
        sys.metas()[..n].iter().map(|m| BigRational::from_integer(m.length.clone())).collect();
    let length_ratio = ratio_limit(&rule, &lengths, 1e-12).ok().map(|r| r.value);
    let ratio_error = length_ratio.as_ref().map(|r| real::to_f64(&(r - &root)).abs());
    Ok(FrequencyLimits { p_max, letters, length_ratio, dominant_root: root, ratio_error })
}
