//! Parameter scans: classification over a grid, transition refinement and
//! collapse profiles. Grid points run in parallel; results keep grid order.

use rayon::prelude::*;
use serde::Serialize;

use super::orbit::{classify_orbit, OrbitKind, OrbitParams};
use super::LagMap;
use crate::error::{Error, Result};

/// What a bifurcation changes: the orbit kind and its period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitKey {
    pub kind: OrbitKind,
    pub period: Option<usize>,
}

impl std::fmt::Display for OrbitKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.period {
            Some(p) => write!(f, "{}({p})", self.kind.as_str()),
            None => f.write_str(self.kind.as_str()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanPoint {
    pub a: f64,
    pub kind: OrbitKind,
    pub period: Option<usize>,
    pub distinct: Option<usize>,
}

impl ScanPoint {
    pub fn key(&self) -> OrbitKey {
        OrbitKey { kind: self.kind, period: self.period }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Transition {
    /// Midpoint of the final bracket.
    pub a: f64,
    pub width: f64,
    pub from: OrbitKey,
    pub to: OrbitKey,
}

impl Transition {
    /// Period doubles with both sides periodic in some form.
    pub fn is_doubling(&self) -> bool {
        matches!((self.from.period, self.to.period), (Some(p), Some(q)) if q == 2 * p)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Scan {
    pub lags: (usize, usize),
    pub points: Vec<ScanPoint>,
    pub transitions: Vec<Transition>,
}

impl Scan {
    /// Period-doubling transitions in parameter order.
    pub fn doublings(&self) -> Vec<&Transition> {
        self.transitions.iter().filter(|t| t.is_doubling()).collect()
    }
}

fn point(base: &LagMap, a: f64, params: &OrbitParams) -> Result<ScanPoint> {
    let r = classify_orbit(&base.with_a(a), params)?;
    Ok(ScanPoint { a, kind: r.kind, period: r.period, distinct: r.distinct })
}

fn key_at(base: &LagMap, a: f64, params: &OrbitParams) -> Result<OrbitKey> {
    point(base, a, params).map(|p| p.key())
}

fn refine(
    base: &LagMap,
    params: &OrbitParams,
    (lo, klo): (f64, OrbitKey),
    (hi, khi): (f64, OrbitKey),
    tol: f64,
) -> Result<Vec<Transition>> {
    if hi - lo < tol {
        return Ok(vec![Transition { a: 0.5 * (lo + hi), width: hi - lo, from: klo, to: khi }]);
    }
    let mid = 0.5 * (lo + hi);
    let km = key_at(base, mid, params)?;
    if km == klo {
        refine(base, params, (mid, km), (hi, khi), tol)
    } else if km == khi {
        refine(base, params, (lo, klo), (mid, km), tol)
    } else {
        let mut left = refine(base, params, (lo, klo), (mid, km), tol)?;
        left.extend(refine(base, params, (mid, km), (hi, khi), tol)?);
        Ok(left)
    }
}

/// Classifies `grid` evenly spaced parameters in [a_lo, a_hi], then bisects
/// every change of kind or period down to `refine_tol`.
pub fn bifurcation_scan(
    base: &LagMap,
    a_lo: f64,
    a_hi: f64,
    grid: usize,
    refine_tol: f64,
    params: &OrbitParams,
) -> Result<Scan> {
    if grid < 2 || a_hi <= a_lo || refine_tol <= 0.0 {
        return Err(Error::InvalidArgument("need grid >= 2, a_lo < a_hi and refine_tol > 0".into()));
    }
    let step = (a_hi - a_lo) / (grid - 1) as f64;
    let points: Vec<ScanPoint> = (0..grid)
        .into_par_iter()
        .map(|k| point(base, if k + 1 == grid { a_hi } else { a_lo + k as f64 * step }, params))
        .collect::<Result<_>>()?;
    let changes: Vec<(usize, usize)> =
        (1..grid).filter(|&k| points[k - 1].key() != points[k].key()).map(|k| (k - 1, k)).collect();
    let transitions: Vec<Vec<Transition>> = changes
        .into_par_iter()
        .map(|(i, k)| {
            let (p, q) = (&points[i], &points[k]);
            refine(base, params, (p.a, p.key()), (q.a, q.key()), refine_tol)
        })
        .collect::<Result<_>>()?;
    Ok(Scan { lags: base.lags, points, transitions: transitions.concat() })
}

/// CSV with header `a,kind,period,distinct`.
pub fn scan_to_csv(points: &[ScanPoint]) -> Result<String> {
    let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    let header = vec!["a".to_string(), "kind".into(), "period".into(), "distinct".into()];
    let rows = points
        .iter()
        .map(|p| vec![p.a.to_string(), p.kind.as_str().to_string(), opt(p.period), opt(p.distinct)]);
    crate::report::csv_string(std::iter::once(header).chain(rows))
}

#[derive(Debug, Clone, Serialize)]
pub struct CollapseEntry {
    pub a: f64,
    /// Terms before the orbit stays below the threshold; `None` when it has
    /// not settled by `n_max`.
    pub transient: Option<usize>,
}

fn collapse_index(map: &LagMap, n_max: usize, threshold: f64) -> Option<usize> {
    let mut last_big = None;
    for (k, u) in map.iter().take(n_max).enumerate() {
        if !u.is_finite() {
            return None;
        }
        if u.abs() >= threshold {
            last_big = Some(k);
        }
    }
    match last_big {
        Some(k) if k + 1 >= n_max => None,
        Some(k) => Some(k + 1),
        None => Some(0),
    }
}

pub fn collapse_profile(
    base: &LagMap,
    a_values: &[f64],
    n_max: usize,
    threshold: f64,
) -> Vec<CollapseEntry> {
    a_values
        .par_iter()
        .map(|&a| CollapseEntry { a, transient: collapse_index(&base.with_a(a), n_max, threshold) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(lags: (usize, usize)) -> LagMap {
        LagMap::standard(10.0, lags).unwrap()
    }

    #[test]
    fn first_bifurcation() {
        let s = bifurcation_scan(&base((3, 1)), 10.0, 11.0, 21, 1e-4, &OrbitParams::default()).unwrap();
        let first = &s.transitions[0];
        assert_eq!(first.from.kind, OrbitKind::Fixed);
        assert!((first.a - 10.415).abs() < 0.05, "{}", first.a);
        assert!(first.width < 1e-4);
    }

    #[test]
    fn results_keep_grid_order() {
        let s = bifurcation_scan(&base((3, 1)), 12.0, 13.5, 16, 1e-3, &OrbitParams::default()).unwrap();
        assert!(s.points.windows(2).all(|w| w[0].a < w[1].a));
        assert!(s.transitions.windows(2).all(|w| w[0].a <= w[1].a));
        assert_eq!(s.points.last().unwrap().a, 13.5);
    }

    #[test]
    fn csv_header_and_rows() {
        let s = bifurcation_scan(&base((3, 1)), 10.0, 10.2, 3, 1e-2, &OrbitParams::default()).unwrap();
        let csv = scan_to_csv(&s.points).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("a,kind,period,distinct"));
        assert_eq!(lines.next(), Some("10,fixed,1,1"));
    }

    #[test]
    fn collapse_profiles() {
        let p = collapse_profile(&base((3, 1)), &[8.0, 15.7], 50_000, 1e-10);
        assert_eq!(p[0].transient, None);
        assert!(p[1].transient.is_some_and(|t| t > 3));
        let q = collapse_profile(&base((3, 2)), &[15.4], 50_000, 1e-10);
        assert!(q[0].transient.is_some());
    }

    #[test]
    fn bad_scan_arguments() {
        let p = OrbitParams::default();
        assert!(bifurcation_scan(&base((3, 1)), 10.0, 11.0, 1, 1e-3, &p).is_err());
        assert!(bifurcation_scan(&base((3, 1)), 11.0, 10.0, 5, 1e-3, &p).is_err());
    }
}
