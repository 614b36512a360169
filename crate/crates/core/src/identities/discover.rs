//! Brute-force search for single-edit corrections of failing identities,
//! and the empirical sign table of the balanced-product difference.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::catalog::{check, Constraint, Grid, IdentitySpec};
use super::expr::{Bindings, Factor, IdentityExpr, Side, Term};
use super::jfl::jfib;
use crate::error::{Error, Result};

/// Fewest grid cases a correction must survive before it is reported.
pub const MIN_CASES: usize = 100;

/// One-edit neighbourhood explored by [`discover_correction`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VariantSpace {
    pub sign_flips: bool,
    pub index_shifts: bool,
    /// F^1 ↔ F^2 on a single factor.
    pub power_toggles: bool,
    /// Remove one variable from a subscript with several parts.
    pub drop_variables: bool,
}

impl Default for VariantSpace {
    fn default() -> Self {
        Self { sign_flips: true, index_shifts: true, power_toggles: true, drop_variables: true }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Variant {
    pub edit: String,
    pub formula: String,
    #[serde(skip)]
    pub expr: IdentityExpr,
}

fn side_name(right: bool) -> &'static str {
    if right {
        "right"
    } else {
        "left"
    }
}

fn factor_edits(f: &Factor, space: &VariantSpace) -> Vec<(String, Factor)> {
    let mut out = Vec::new();
    match f {
        Factor::Term { seq, index, power } => {
            let shown = f.to_string();
            if space.index_shifts {
                for delta in [-1, 1] {
                    let g = Factor::Term { seq: *seq, index: index.shifted(delta), power: *power };
                    out.push((format!("{shown} -> {g}"), g));
                }
            }
            if space.power_toggles && (*power == 1 || *power == 2) {
                let g = Factor::Term { seq: *seq, index: index.clone(), power: 3 - *power };
                out.push((format!("{shown} -> {g}"), g));
            }
            if space.drop_variables && index.parts.len() >= 2 {
                for i in 0..index.parts.len() {
                    if !matches!(index.parts[i].1, super::expr::IndexAtom::Var(_)) {
                        continue;
                    }
                    let mut idx = index.clone();
                    idx.parts.remove(i);
                    if idx.parts[0].0 < 0 && idx.parts.len() == 1 {
                        continue;
                    }
                    let g = Factor::Term { seq: *seq, index: idx, power: *power };
                    out.push((format!("{shown} -> {g}"), g));
                }
            }
        }
        Factor::Sum { upper, body } => {
            for (edit, b) in term_factor_edits(body, space) {
                out.push((edit, Factor::Sum { upper: upper.clone(), body: Box::new(b) }));
            }
        }
        _ => {}
    }
    out
}

fn term_factor_edits(t: &Term, space: &VariantSpace) -> Vec<(String, Term)> {
    let mut out = Vec::new();
    for (i, f) in t.factors.iter().enumerate() {
        for (edit, g) in factor_edits(f, space) {
            let mut t2 = t.clone();
            t2.factors[i] = g;
            out.push((edit, t2));
        }
    }
    out
}

fn side_variants(side: &Side, right: bool, space: &VariantSpace) -> Vec<(String, Side)> {
    let mut out = Vec::new();
    for (ti, t) in side.terms.iter().enumerate() {
        if space.sign_flips {
            let mut s = side.clone();
            s.terms[ti].negative = !t.negative;
            out.push((format!("flip the sign of {} term {}", side_name(right), ti + 1), s));
        }
        for (edit, t2) in term_factor_edits(t, space) {
            let mut s = side.clone();
            s.terms[ti] = t2;
            out.push((format!("{edit} in {} term {}", side_name(right), ti + 1), s));
        }
    }
    out
}

/// All distinct single-edit variants of `expr`.
pub fn variants(expr: &IdentityExpr, space: &VariantSpace) -> Vec<Variant> {
    let mut seen = BTreeSet::new();
    seen.insert(expr.to_string());
    let mut out = Vec::new();
    let mut push = |edit: String, e: IdentityExpr| {
        let formula = e.to_string();
        if seen.insert(formula.clone()) {
            out.push(Variant { edit, formula, expr: e });
        }
    };
    for (edit, lhs) in side_variants(&expr.lhs, false, space) {
        push(edit, IdentityExpr { lhs, rhs: expr.rhs.clone() });
    }
    for (edit, rhs) in side_variants(&expr.rhs, true, space) {
        push(edit, IdentityExpr { lhs: expr.lhs.clone(), rhs });
    }
    out
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Correction {
    PrintedFormHolds,
    Corrected { variant: Variant },
    NoVariantPasses,
    Ambiguous { candidates: Vec<Variant> },
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrectionReport {
    pub id: String,
    pub printed: String,
    pub cases: usize,
    pub variants_tried: usize,
    pub result: Correction,
}

fn cases(grid: &Grid, expr: &IdentityExpr, constraint: Option<Constraint>) -> Vec<(u64, Bindings)> {
    let bindings = grid.bindings(&expr.variables(), constraint);
    grid.j.clone().flat_map(|j| bindings.iter().map(move |b| (j, b.clone()))).collect()
}

fn holds(expr: &IdentityExpr, cases: &[(u64, Bindings)]) -> bool {
    cases.iter().all(|(j, b)| check(expr, *j, b).2)
}

/// Finds the unique single-edit variant of a failing identity that holds
/// on every case of `grid`.
pub fn discover_correction(
    spec: &IdentitySpec,
    grid: &Grid,
    space: &VariantSpace,
) -> Result<CorrectionReport> {
    let expr = spec.expr();
    let cs = cases(grid, &expr, spec.constraint);
    if cs.len() < MIN_CASES {
        return Err(Error::InvalidArgument(format!(
            "grid yields {} cases; at least {MIN_CASES} are required",
            cs.len()
        )));
    }
    let base = |result| CorrectionReport {
        id: spec.id.to_string(),
        printed: expr.to_string(),
        cases: cs.len(),
        variants_tried: 0,
        result,
    };
    if holds(&expr, &cs) {
        return Ok(base(Correction::PrintedFormHolds));
    }
    let all = variants(&expr, space);
    let tried = all.len();
    let passing: Vec<Variant> = all.into_iter().filter(|v| holds(&v.expr, &cs)).collect();
    let result = match passing.len() {
        0 => Correction::NoVariantPasses,
        1 => Correction::Corrected { variant: passing.into_iter().next().unwrap() },
        _ => Correction::Ambiguous { candidates: passing },
    };
    Ok(CorrectionReport { variants_tried: tried, ..base(result) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Min,
    Max,
    Interior,
}

fn role(x: i64, lo: i64, hi: i64) -> Role {
    if x == lo {
        Role::Min
    } else if x == hi {
        Role::Max
    } else {
        Role::Interior
    }
}

/// Observed sign of F_aF_b − F_cF_d relative to (−1)^{|c−b|+|c−a|}·F_{|c−b|}F_{|c−a|},
/// grouped by the parity of min{a,b,c,d} and the roles of a and c.
#[derive(Debug, Clone, Serialize)]
pub struct SignTableRow {
    pub min_parity: &'static str,
    pub a_role: Role,
    pub c_role: Role,
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

pub fn balanced_sign_table(j_max: u64, max_index: i64) -> Vec<SignTableRow> {
    let mut rows: BTreeMap<(bool, Role, Role), [usize; 3]> = BTreeMap::new();
    for j in 1..=j_max {
        for a in 1..=max_index {
            for b in 1..=max_index {
                for c in 1..=max_index {
                    let d = a + b - c;
                    if d < 1 || d > max_index {
                        continue;
                    }
                    let lhs = jfib(j, a) * jfib(j, b) - jfib(j, c) * jfib(j, d);
                    let mag = jfib(j, (c - b).abs()) * jfib(j, (c - a).abs());
                    let printed = if ((c - b).abs() + (c - a).abs()) % 2 == 0 { mag } else { -mag };
                    let vals = [a, b, c, d];
                    let lo = *vals.iter().min().unwrap();
                    let hi = *vals.iter().max().unwrap();
                    let key = (lo % 2 == 1, role(a, lo, hi), role(c, lo, hi));
                    let slot = rows.entry(key).or_default();
                    if lhs == printed && lhs != 0.into() {
                        slot[0] += 1;
                    } else if lhs == -printed.clone() && lhs != 0.into() {
                        slot[1] += 1;
                    } else {
                        slot[2] += 1;
                    }
                }
            }
        }
    }
    rows.into_iter()
        .map(|((odd, a_role, c_role), [plus, minus, zero])| SignTableRow {
            min_parity: if odd { "odd" } else { "even" },
            a_role,
            c_role,
            plus,
            minus,
            zero,
        })
        .collect()
}
