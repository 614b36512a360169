//! p-Tribonacci numbers T and their p-Lucas-Tribonacci companions.
//!
//! Both obey u_{n+1} = u_n + u_{n−p} + u_{n−(p+1)}. Indices start at 0.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rulecore::{generate_terms, RecurrenceRule};

pub fn rule(p: usize) -> RecurrenceRule {
    RecurrenceRule::unit(&[1, p + 1, p + 2]).expect("positive lags")
}

fn run(p: usize, seed: Vec<i64>, count: usize) -> Result<Vec<BigInt>> {
    if count < p + 3 {
        return Err(Error::InvalidArgument(format!("count must be at least {}", p + 3)));
    }
    let init: Vec<BigRational> = seed.into_iter().map(|v| BigRational::from_integer(v.into())).collect();
    let seq = generate_terms(&rule(p), &init, count)?;
    Ok(seq.as_integers().expect("integer seeds and coefficients"))
}

/// 1 repeated p+1 times, then 2; the 4 that follows is generated.
pub fn p_tribonacci(p: usize, count: usize) -> Result<Vec<BigInt>> {
    let mut seed = vec![1; p + 1];
    seed.push(2);
    run(p, seed, count)
}

/// 3, then 1 repeated p times, then 3.
pub fn p_lucas_trib(p: usize, count: usize) -> Result<Vec<BigInt>> {
    let mut seed = vec![3];
    seed.extend(std::iter::repeat(1).take(p));
    seed.push(3);
    run(p, seed, count)
}

/// LT_{n+offset} = T_n + 2T_{n−p} + 3T_{n−(p+1)} over every index in range.
#[derive(Debug, Clone, Serialize)]
pub struct CompanionCheck {
    /// Whether the relation holds with offset 0.
    pub holds_unshifted: bool,
    /// Offsets in −(p+2)..=p+2 for which it holds.
    pub offsets: Vec<i64>,
    pub checked: usize,
}

pub fn companion_check(p: usize, trib: &[BigInt], lucas_trib: &[BigInt]) -> CompanionCheck {
    let holds = |s: i64| {
        (p + 1..trib.len())
            .filter_map(|n| {
                let m = n as i64 + s;
                (m >= 0 && (m as usize) < lucas_trib.len()).then_some((n, m as usize))
            })
            .all(|(n, m)| lucas_trib[m] == &trib[n] + 2 * &trib[n - p] + 3 * &trib[n - p - 1])
    };
    let bound = p as i64 + 2;
    let offsets: Vec<i64> = (-bound..=bound).filter(|&s| holds(s)).collect();
    CompanionCheck {
        holds_unshifted: offsets.contains(&0),
        offsets,
        checked: trib.len().saturating_sub(p + 2),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PTribFamily {
    pub p: usize,
    #[serde(serialize_with = "ser_ints")]
    pub trib: Vec<BigInt>,
    #[serde(serialize_with = "ser_ints")]
    pub lucas_trib: Vec<BigInt>,
    pub companion: CompanionCheck,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl PTribFamily {
    pub fn new(p: usize, count: usize) -> Result<Self> {
        let trib = p_tribonacci(p, count)?;
        let lucas_trib = p_lucas_trib(p, count)?;
        let companion = companion_check(p, &trib, &lucas_trib);
        Ok(Self { p, trib, lucas_trib, companion })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalgebra::{dominant_root, IntPolynomial};
    use crate::real;

    fn strs(v: &[BigInt]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn prefixes() {
        assert_eq!(strs(&p_tribonacci(1, 8).unwrap()), ["1", "1", "2", "4", "7", "13", "24", "44"]);
        assert_eq!(
            strs(&p_tribonacci(2, 11).unwrap()),
            ["1", "1", "1", "2", "4", "6", "9", "15", "25", "40", "64"]
        );
        assert_eq!(strs(&p_lucas_trib(1, 7).unwrap()), ["3", "1", "3", "7", "11", "21", "39"]);
        assert_eq!(strs(&p_tribonacci(0, 6).unwrap()), ["1", "2", "5", "12", "29", "70"]);
    }

    #[test]
    fn seeds_follow_the_pattern() {
        for p in 0..=6 {
            let t = p_tribonacci(p, p + 4).unwrap();
            assert!(t[..=p].iter().all(|x| *x == BigInt::from(1)));
            assert_eq!(t[p + 1], BigInt::from(2));
            // p = 0 is Pell, whose third term is 5
            if p > 0 {
                assert_eq!(t[p + 2], BigInt::from(4), "p={p}");
            }
            let l = p_lucas_trib(p, p + 3).unwrap();
            assert_eq!(l[0], BigInt::from(3));
            assert_eq!(l[p + 1], BigInt::from(3));
        }
    }

    #[test]
    fn companion_needs_a_shift_of_one() {
        for p in 0..=5 {
            let f = PTribFamily::new(p, 40).unwrap();
            assert!(!f.companion.holds_unshifted, "p={p}");
            assert_eq!(f.companion.offsets, [1], "p={p}");
        }
    }

    #[test]
    fn short_counts_are_refused() {
        assert!(p_tribonacci(3, 5).is_err());
    }

    fn ratio_error(p: usize, terms: usize) -> f64 {
        let t = p_tribonacci(p, terms).unwrap();
        let ratio = BigRational::new(t[terms - 1].clone(), t[terms - 2].clone());
        // x^{p+2} − x^{p+1} − x − 1
        let mut c = vec![0i64; p + 3];
        c[0] = -1;
        c[1] -= 1;
        c[p + 1] -= 1;
        c[p + 2] = 1;
        // Pell's limit 1 + √2 lies outside ]1, 2[
        let hi = if p == 0 { 3.0 } else { 2.0 };
        let root = dominant_root(&IntPolynomial::from_i64(&c), 1.0, hi, 1e-30).unwrap();
        real::to_f64(&(real::from_ratio(&ratio, 40) - root)).abs()
    }

    #[test]
    fn ratio_tends_to_the_dominant_root() {
        for p in 0..=2 {
            let err = ratio_error(p, 60);
            assert!(err < 1e-8, "p={p}: {err}");
        }
    }

    #[test]
    fn p3_ratio_converges_more_slowly() {
        // The subdominant pair is close to the dominant root in modulus.
        let at60 = ratio_error(3, 60);
        assert!(at60 > 1e-8 && at60 < 1e-7, "{at60}");
        assert!(ratio_error(3, 80) < 1e-10);
    }
}
