//! Catalog of logarithmic identities satisfied by powers of φ_k, k-bonacci
//! limits and silver means, each checked numerically with its residual.

use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::logexpr::{eval_log_expr, LogAtom, LogExpr, Orientation};
use super::psi::{phi, root_between, SilverMean};
use super::poly::IntPolynomial;
use crate::real::{self, Real};

/// Residual bound for a catalog entry to pass.
pub const CATALOG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct CatalogRecord {
    #[serde(rename = "identity-id")]
    pub id: String,
    pub inputs: String,
    pub expected: String,
    pub observed: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LogCatalogReport {
    pub digits: usize,
    pub tolerance: f64,
    pub records: Vec<CatalogRecord>,
}

impl LogCatalogReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn find(&self, id: &str) -> Option<&CatalogRecord> {
        self.records.iter().find(|r| r.id == id)
    }
}

fn record(id: String, inputs: String, expected: &str, expected_value: &Real, observed: &Real) -> CatalogRecord {
    let residual = real::to_f64(&real::abs(&(observed - expected_value)));
    CatalogRecord {
        id,
        inputs,
        expected: expected.to_string(),
        observed: real::format_fixed(observed, 30),
        residual,
        pass: residual < CATALOG_TOL,
    }
}

fn rational(num: i64, den: i64, digits: usize) -> Real {
    real::from_ratio(&BigRational::new(num.into(), den.into()), digits)
}

fn log_record(
    label: &str,
    x: &Real,
    expr: &LogExpr,
    num: i64,
    den: i64,
    digits: usize,
) -> CatalogRecord {
    let expected = if den == 1 { num.to_string() } else { format!("{num}/{den}") };
    let id = format!("{label}: {expr} = {expected}");
    let inputs = format!("x = {}", real::format_fixed(x, 20));
    match eval_log_expr(expr, x) {
        Ok(v) => record(id, inputs, &expected, &rational(num, den, digits), &v),
        Err(e) => CatalogRecord {
            id,
            inputs,
            expected,
            observed: e.to_string(),
            residual: f64::INFINITY,
            pass: false,
        },
    }
}

/// Lucas-type sequence 2, k, k² + 2, … (u_n = k·u_{n−1} + u_{n−2}).
fn lucas_k(k: u64, n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), BigInt::from(k));
    for _ in 0..n {
        let c = &b * k + &a;
        a = b;
        b = c;
    }
    a
}

fn power(x: &Real, n: u32) -> Real {
    x.powi(IBig::from(n))
}

/// `1/((−1)^{n+1} x^n + (−1)^n L)` compared with `x^n`.
fn reciprocal_record(label: &str, x: &Real, n: u32, lucas: &BigInt, digits: usize) -> CatalogRecord {
    let xn = power(x, n);
    let l = real::from_bigint(lucas, digits);
    let denom = if n % 2 == 1 { &xn - l } else { l - &xn };
    let lhs = real::from_i64(1, digits) / denom;
    record(
        format!("{label}: 1/((-1)^(n+1) x^n + (-1)^n L) = x^n, n={n}"),
        format!("x = {}, L = {lucas}", real::format_fixed(x, 20)),
        &format!("x^{n}"),
        &xn,
        &lhs,
    )
}

/// Evaluates every catalog identity at `digits` decimal digits.
pub fn verify_log_catalog(digits: usize) -> LogCatalogReport {
    let mut records = Vec::new();
    let phis: Vec<Real> = (1..=6).map(|k| phi(k, digits).value).collect();

    for (i, x) in phis.iter().enumerate() {
        let k = i as i64 + 1;
        records.push(log_record(&format!("phi_{k}"), x, &LogExpr::single(LogAtom::x_minus(1)), k, 1, digits));
    }

    for n in 2..=6usize {
        let mut c = vec![-1i64; n + 1];
        c[n] = 1;
        let x = root_between(&IntPolynomial::from_i64(&c), 1, 2, digits).expect("k-bonacci root");
        records.push(log_record(
            &format!("{n}-bonacci limit"),
            &x,
            &LogExpr::single(LogAtom::minus_x(2)),
            n as i64,
            1,
            digits,
        ));
    }

    let golden = &phis[0];
    for n in 1..=10u32 {
        let l = lucas_k(1, n as usize);
        let orientation = if n % 2 == 1 { Orientation::XMinusC } else { Orientation::CMinusX };
        let atom = LogAtom::new(1, orientation, real::exact_integer(&l), 1);
        records.push(log_record(
            &format!("phi_1^{n}"),
            &power(golden, n),
            &LogExpr::single(atom),
            1,
            1,
            digits,
        ));
    }
    for n in 1..=12u32 {
        records.push(reciprocal_record("phi_1", golden, n, &lucas_k(1, n as usize), digits));
    }

    for k in 1..=4u64 {
        let s = SilverMean::new(k, digits).value.with_precision(digits).value();
        for n in 1..=8u32 {
            let l = lucas_k(k, n as usize);
            let orientation = if n % 2 == 1 { Orientation::XMinusC } else { Orientation::CMinusX };
            let atom = LogAtom::new(1, orientation, real::exact_integer(&l), n);
            records.push(log_record(
                &format!("silver S_{k}, L={l}"),
                &s,
                &LogExpr::single(atom),
                n as i64,
                1,
                digits,
            ));
            records.push(reciprocal_record(&format!("silver S_{k}"), &s, n, &l, digits));
        }
    }

    let sq = |x: &Real, e: u32| power(x, e);
    let single = |c: i64| LogExpr::single(LogAtom::x_minus(c));
    let two_minus_x_less_x_minus_one =
        LogExpr::new(vec![LogAtom::minus_x(2), LogAtom::x_minus(1).negated()]);
    let (p2, p3, p4) = (&phis[1], &phis[2], &phis[3]);
    records.push(log_record("phi_2^2", &sq(p2, 2), &single(2), 5, 2, digits));
    records.push(log_record("phi_2^3", &sq(p2, 3), &single(3), 5, 3, digits));
    records.push(log_record(
        "phi_2^4",
        &sq(p2, 4),
        &LogExpr::new(vec![LogAtom::x_minus(2), LogAtom::minus_x(5).negated()]),
        -5,
        4,
        digits,
    ));
    records.push(log_record("phi_3^2", &sq(p3, 2), &two_minus_x_less_x_minus_one, 7, 2, digits));
    records.push(log_record("phi_4^2", &sq(p4, 2), &single(1), 1, 2, digits));
    records.push(log_record("phi_4^3", &sq(p4, 3), &single(2), 4, 3, digits));
    records.push(log_record("phi_4^4", &sq(p4, 4), &single(3), 9, 4, digits));
    records.push(log_record("phi_4^5", &sq(p4, 5), &single(4), 9, 5, digits));
    records.push(log_record("phi_4^2", &sq(p4, 2), &two_minus_x_less_x_minus_one, 2, 1, digits));

    LogCatalogReport { digits, tolerance: CATALOG_TOL, records }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lucas_k_sequences() {
        let l1: Vec<_> = (0..8).map(|n| lucas_k(1, n)).collect();
        assert_eq!(l1, [2, 1, 3, 4, 7, 11, 18, 29].map(BigInt::from));
        let l2: Vec<_> = (1..5).map(|n| lucas_k(2, n)).collect();
        assert_eq!(l2, [2, 6, 14, 34].map(BigInt::from));
    }

    #[test]
    fn whole_catalog_passes_at_fifty_digits() {
        let report = verify_log_catalog(50);
        for r in &report.records {
            assert!(r.pass, "{} observed {} residual {}", r.id, r.observed, r.residual);
        }
        assert!(report.records.len() > 60);
    }

    #[test]
    fn difference_form_at_phi2_fourth_is_minus_five_quarters() {
        let report = verify_log_catalog(50);
        let r = report
            .find("phi_2^4: Log[1/(x-2)]/Log(x) - Log[1/(5-x)]/Log(x) = -5/4")
            .unwrap();
        assert!(r.residual < 1e-40);
    }

    #[test]
    fn fourth_golden_power_uses_seven() {
        let report = verify_log_catalog(50);
        let r = report.find("phi_1^4: Log[1/(7-x)]/Log(x) = 1").unwrap();
        assert!(r.pass);
    }
}
