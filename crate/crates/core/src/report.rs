//! Report envelope and serialization helpers shared by all modules.

use serde::{Serialize, Serializer};

use crate::real::{self, Real};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Digits printed for extended-precision values in reports.
pub const REPORT_DECIMALS: usize = 30;

pub fn real_string(x: &Real) -> String {
    real::format_fixed(x, REPORT_DECIMALS)
}

pub fn ser_real<S: Serializer>(x: &Real, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&real_string(x))
}

pub fn ser_reals<S: Serializer>(xs: &[Real], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(real_string))
}

pub fn ser_opt_real<S: Serializer>(x: &Option<Real>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&real_string(x)),
        None => s.serialize_none(),
    }
}

/// Every emitted report: what was asked, by which version, at what precision.
#[derive(Debug, Clone, Serialize)]
pub struct Report<C: Serialize, P: Serialize> {
    pub version: &'static str,
    pub precision_digits: usize,
    pub config: C,
    pub result: P,
}

impl<C: Serialize, P: Serialize> Report<C, P> {
    pub fn new(precision_digits: usize, config: C, result: P) -> Self {
        Self { version: VERSION, precision_digits, config, result }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Serializes records as CSV; the first record is the header.
pub fn csv_string<I, R>(records: I) -> crate::Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in records {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Output(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
