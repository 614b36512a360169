//! Orbit classification: fixed, periodic, weird, collapse to zero, aperiodic.

use serde::{Deserialize, Serialize};

use super::{trajectory, LagMap};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitParams {
    pub transient: usize,
    pub window: usize,
    pub tol: f64,
    pub p_max: usize,
}

impl Default for OrbitParams {
    fn default() -> Self {
        Self { transient: 5_000, window: 4_096, tol: 1e-7, p_max: 256 }
    }
}

impl OrbitParams {
    /// Long transient and period cap for resolving a doubling cascade up to
    /// period 512; convergence slows sharply near each doubling.
    pub fn cascade() -> Self {
        Self { transient: 50_000, window: 8_192, tol: 1e-7, p_max: 1_024 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    Fixed,
    Periodic,
    /// Stable cycle with fewer distinct values than its period.
    Weird,
    ZeroCollapse,
    Aperiodic,
}

impl OrbitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitKind::Fixed => "fixed",
            OrbitKind::Periodic => "periodic",
            OrbitKind::Weird => "weird",
            OrbitKind::ZeroCollapse => "zero_collapse",
            OrbitKind::Aperiodic => "aperiodic",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub kind: OrbitKind,
    pub period: Option<usize>,
    pub distinct: Option<usize>,
    /// Positions 1..=p grouped by equal value, each class sorted, classes
    /// ordered by their first position.
    pub equality_pattern: Vec<Vec<usize>>,
    /// For a collapse: number of terms before the orbit stays below tol.
    pub transient_length: Option<usize>,
    /// One period of the settled orbit, or its last few terms.
    pub witness: Vec<f64>,
}

impl OrbitReport {
    /// Classes with more than one position.
    pub fn coincidences(&self) -> Vec<Vec<usize>> {
        self.equality_pattern.iter().filter(|c| c.len() > 1).cloned().collect()
    }

    /// Whether `classes` are among the coincidences, read at some phase of
    /// the cycle.
    pub fn matches_up_to_rotation(&self, classes: &[Vec<usize>]) -> bool {
        let Some(p) = self.period else { return false };
        let mut want: Vec<Vec<usize>> = classes.to_vec();
        for c in &mut want {
            c.sort_unstable();
        }
        want.sort();
        (0..p).any(|shift| {
            let mut got: Vec<Vec<usize>> = self
                .coincidences()
                .iter()
                .map(|c| {
                    let mut c: Vec<usize> = c.iter().map(|&k| (k - 1 + shift) % p + 1).collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            got.sort();
            got == want
        })
    }
}

/// Groups positions 1..=p by values within `tol` of a class's first value.
pub fn equality_classes(values: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, v) in values.iter().enumerate() {
        match classes.iter_mut().find(|c| (values[c[0] - 1] - v).abs() < tol) {
            Some(c) => c.push(k + 1),
            None => classes.push(vec![k + 1]),
        }
    }
    classes
}

fn minimal_period(w: &[f64], tol: f64, p_max: usize) -> Option<usize> {
    (1..=p_max).find(|&p| w.iter().zip(&w[p..]).all(|(a, b)| (a - b).abs() < tol))
}

const WITNESS_TAIL: usize = 8;

/// Discards the transient, then classifies the next `window` terms.
pub fn classify_orbit(map: &LagMap, params: &OrbitParams) -> Result<OrbitReport> {
    if params.window < 2 * params.p_max || params.p_max == 0 {
        return Err(Error::InvalidArgument("window must be at least 2·p_max, p_max at least 1".into()));
    }
    let t = trajectory(map, params.transient + params.window)?;
    let w = &t[params.transient..];
    let report = |kind, period, distinct, equality_pattern, transient_length, witness| OrbitReport {
        kind,
        period,
        distinct,
        equality_pattern,
        transient_length,
        witness,
    };
    if w.iter().all(|u| u.abs() < params.tol) {
        let last_big = t.iter().rposition(|u| u.abs() >= params.tol);
        let transient = last_big.map_or(0, |i| i + 1);
        return Ok(report(OrbitKind::ZeroCollapse, None, None, vec![], Some(transient), vec![0.0]));
    }
    let Some(p) = minimal_period(w, params.tol, params.p_max) else {
        let tail = w[w.len() - WITNESS_TAIL..].to_vec();
        return Ok(report(OrbitKind::Aperiodic, None, None, vec![], None, tail));
    };
    let cycle = &w[..p];
    let classes = equality_classes(cycle, 10.0 * params.tol);
    let d = classes.len();
    let kind = match (p, d < p) {
        (1, _) => OrbitKind::Fixed,
        (_, true) => OrbitKind::Weird,
        (_, false) => OrbitKind::Periodic,
    };
    Ok(report(kind, Some(p), Some(d), classes, None, cycle.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(a: f64, lags: (usize, usize)) -> OrbitReport {
        classify_orbit(&LagMap::standard(a, lags).unwrap(), &OrbitParams::default()).unwrap()
    }

    #[test]
    fn weird_orbit_of_order_eight() {
        let r = classify(13.0, (3, 1));
        assert_eq!(r.kind, OrbitKind::Weird);
        assert_eq!((r.period, r.distinct), (Some(8), Some(5)));
        let pairs = vec![vec![1, 5], vec![2, 8], vec![4, 6]];
        assert!(r.matches_up_to_rotation(&pairs));
        let all: Vec<usize> = {
            let mut v: Vec<usize> = r.equality_pattern.concat();
            v.sort_unstable();
            v
        };
        assert_eq!(all, (1..=8).collect::<Vec<_>>());
    }

    #[test]
    fn weird_pattern_at_printed_phase() {
        let r = classify(13.2, (3, 1));
        assert_eq!(r.coincidences(), [vec![1, 5], vec![2, 8], vec![4, 6]]);
        assert_eq!(r.equality_pattern, [vec![1, 5], vec![2, 8], vec![3], vec![4, 6], vec![7]]);
    }

    #[test]
    fn fixed_below_first_bifurcation() {
        let r = classify(10.0, (3, 1));
        assert_eq!(r.kind, OrbitKind::Fixed);
        assert!(r.witness[0] > 0.0 && r.witness[0] < 1.0);
        assert_eq!(classify(8.0, (3, 1)).kind, OrbitKind::Fixed);
    }

    #[test]
    fn period_seven_window_belongs_to_the_first_rule() {
        let r = classify(14.75, (3, 1));
        assert_eq!((r.kind, r.period), (OrbitKind::Periodic, Some(7)));
        assert_eq!(classify(14.75, (3, 2)).kind, OrbitKind::Aperiodic);
    }

    #[test]
    fn five_cycle_of_the_second_rule() {
        for a in [11.5, 12.0] {
            let r = classify(a, (3, 2));
            assert_eq!((r.kind, r.period, r.distinct), (OrbitKind::Periodic, Some(5), Some(5)));
        }
    }

    #[test]
    fn collapse_reports_a_transient() {
        let r = classify(15.7, (3, 1));
        assert_eq!(r.kind, OrbitKind::ZeroCollapse);
        assert!(r.transient_length.unwrap() > 3);
        assert_eq!(classify(15.4, (3, 2)).kind, OrbitKind::ZeroCollapse);
    }

    #[test]
    fn classes_use_first_member() {
        assert_eq!(equality_classes(&[0.1, 0.2, 0.1, 0.3], 1e-6), [vec![1, 3], vec![2], vec![4]]);
    }

    #[test]
    fn window_precondition() {
        let m = LagMap::standard(10.0, (3, 1)).unwrap();
        let p = OrbitParams { window: 100, ..OrbitParams::default() };
        assert!(classify_orbit(&m, &p).is_err());
    }
}
