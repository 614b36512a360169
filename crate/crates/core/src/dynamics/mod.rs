//! Generalized iteration u_n = F_a(u_{n−i}, u_{n−j}) with
//! F_a(x, y) = a·x(1−x)·y(1−y), in double precision.

pub mod feigenbaum;
pub mod orbit;
pub mod scan;

pub use feigenbaum::{feigenbaum_estimate, logistic_superstable_points};
pub use orbit::{classify_orbit, OrbitKind, OrbitParams, OrbitReport};
pub use scan::{
    bifurcation_scan, collapse_profile, scan_to_csv, CollapseEntry, OrbitKey, Scan, ScanPoint,
    Transition,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// x = 0.6, y = 0.7, z = 0.8, truncated to the map's order.
pub const STANDARD_INIT: [f64; 3] = [0.6, 0.7, 0.8];

#[inline]
pub fn f_a(a: f64, x: f64, y: f64) -> f64 {
    a * x * (1.0 - x) * y * (1.0 - y)
}

/// u_n = F_a(u_{n−i}, u_{n−j}) with i > j ≥ 1 and i initial values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagMap {
    pub a: f64,
    pub lags: (usize, usize),
    pub init: Vec<f64>,
}

pub fn check_lags(lags: (usize, usize)) -> Result<()> {
    let (i, j) = lags;
    if j < 1 || i <= j {
        return Err(Error::InvalidArgument(format!("lags must satisfy i > j >= 1, got ({i}, {j})")));
    }
    Ok(())
}

impl LagMap {
    pub fn new(a: f64, lags: (usize, usize), init: Vec<f64>) -> Result<Self> {
        check_lags(lags)?;
        if init.len() != lags.0 {
            return Err(Error::InvalidArgument(format!(
                "need {} initial values, got {}",
                lags.0,
                init.len()
            )));
        }
        if let Some(x) = init.iter().find(|x| !(**x > 0.0 && **x < 1.0)) {
            return Err(Error::InvalidArgument(format!("initial value {x} is not in ]0, 1[")));
        }
        if !a.is_finite() {
            return Err(Error::InvalidArgument("parameter must be finite".into()));
        }
        Ok(Self { a, lags, init })
    }

    /// Map with [`STANDARD_INIT`]; lags beyond 3 repeat 0.8.
    pub fn standard(a: f64, lags: (usize, usize)) -> Result<Self> {
        let init = (0..lags.0).map(|k| STANDARD_INIT[k.min(2)]).collect();
        Self::new(a, lags, init)
    }

    pub fn with_a(&self, a: f64) -> Self {
        Self { a, ..self.clone() }
    }

    /// Streams terms starting with the initial values.
    pub fn iter(&self) -> Orbit<'_> {
        Orbit { map: self, ring: self.init.clone(), pos: 0, produced: 0 }
    }
}

/// Iterator over u_1, u_2, … kept in a ring of length i.
pub struct Orbit<'a> {
    map: &'a LagMap,
    ring: Vec<f64>,
    pos: usize,
    produced: usize,
}

impl Iterator for Orbit<'_> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let (i, j) = self.map.lags;
        if self.produced < i {
            self.produced += 1;
            return Some(self.ring[self.produced - 1]);
        }
        // ring[pos] holds u_{n−i}; u_{n−j} sits i−j slots later.
        let x = self.ring[self.pos];
        let y = self.ring[(self.pos + i - j) % i];
        let u = f_a(self.map.a, x, y);
        self.ring[self.pos] = u;
        self.pos = (self.pos + 1) % i;
        self.produced += 1;
        Some(u)
    }
}

/// u_1..=u_n; fails at the first non-finite term.
pub fn trajectory(map: &LagMap, n: usize) -> Result<Vec<f64>> {
    if n < map.lags.0 {
        return Err(Error::InvalidArgument(format!("need at least {} terms", map.lags.0)));
    }
    let mut out = Vec::with_capacity(n);
    for (k, u) in map.iter().take(n).enumerate() {
        if !u.is_finite() {
            return Err(Error::Diverged { index: k + 1 });
        }
        out.push(u);
    }
    Ok(out)
}
