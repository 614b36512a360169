//! Subcommand bodies. Each returns the JSON result and the CSV view.

use std::str::FromStr;

use num_rational::BigRational;
use recurlab::dynamics::{
    bifurcation_scan, classify_orbit, collapse_profile, scan_to_csv, LagMap, OrbitParams, STANDARD_INIT,
};
use recurlab::identities::catalog::cases_to_csv;
use recurlab::identities::{self, Correction, Grid, IdentityReport, VariantSpace};
use recurlab::polyalgebra::{self, psi, IntPolynomial};
use recurlab::report::{csv_string, real_string};
use recurlab::rulecore::{self, parse_rule};
use recurlab::triangles::{self, DiagonalKind};
use recurlab::words::{self, WordConfig};
use recurlab::{real, Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;

pub struct Output {
    pub result: Value,
    pub csv: String,
    /// Digits actually used, when the command raised them.
    pub digits: Option<usize>,
}

fn out<T: Serialize>(result: &T, csv: String) -> Result<Output> {
    let result = serde_json::to_value(result).map_err(|e| Error::Output(e.to_string()))?;
    Ok(Output { result, csv, digits: None })
}

fn table<I, R>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let head: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    csv_string(std::iter::once(head).chain(rows.into_iter().map(|r| r.into_iter().collect())))
}

pub fn run(cmd: &Command, digits: usize) -> Result<Output> {
    match cmd {
        Command::Seq(a) => seq(a),
        Command::Roots(a) => roots(a),
        Command::Psi(a) => psi_cmd(a, digits),
        Command::Logcat => logcat(digits),
        Command::Identities(c) => identities_cmd(c),
        Command::Triangles(c) => triangles_cmd(c, digits),
        Command::Dynamics(c) => dynamics_cmd(c),
        Command::Words(c) => words_cmd(c),
        Command::Equi(a) => equi(a, digits),
    }
}

fn seq(a: &SeqArgs) -> Result<Output> {
    let rule = parse_rule(&a.rule)?;
    let init: Vec<BigRational> =
        a.init.iter().map(|s| BigRational::from_str(s).expect("validated by the parser")).collect();
    let forward = rulecore::generate_terms(&rule, &init, a.count)?;
    let (start, mut terms) = if a.backward > 0 {
        let back = rulecore::backward_extend(&rule, &init, a.backward)?;
        (back.start_index, back.to_strings()[..a.backward].to_vec())
    } else {
        (1, Vec::new())
    };
    terms.extend(forward.to_strings());
    let ratio = match a.ratio_tol {
        Some(tol) => {
            let r = rulecore::ratio_limit(&rule, &init, tol)?;
            Some(json!({ "value": real_string(&r.value), "terms_used": r.terms_used }))
        }
        None => None,
    };
    let csv = table(
        &["n", "term"],
        terms.iter().enumerate().map(|(i, t)| [(start + i as i64).to_string(), t.clone()]),
    )?;
    let result = json!({
        "rule": rule.render(),
        "start_index": start,
        "terms": terms,
        "ratio_limit": ratio,
    });
    out(&result, csv)
}

fn roots(a: &RootsArgs) -> Result<Output> {
    let p = match (&a.rule, &a.poly) {
        (Some(r), _) => rulecore::characteristic_polynomial(&parse_rule(r)?)?,
        (None, Some(c)) => {
            let asc: Vec<i64> = c.iter().rev().copied().collect();
            let p = IntPolynomial::from_i64(&asc);
            if p.degree().unwrap_or(0) == 0 {
                return Err(Error::InvalidArgument("polynomial must have positive degree".into()));
            }
            p
        }
        (None, None) => unreachable!("clap requires one of --rule, --poly"),
    };
    if !(a.tol > 0.0 && a.tol < 1.0) {
        return Err(Error::InvalidArgument("tol must lie in ]0, 1[".into()));
    }
    let rs = polyalgebra::real_roots(&p, a.tol);
    let strs: Vec<String> = rs.iter().map(real_string).collect();
    let dominant = rs.iter().max_by(|x, y| real::abs(x).cmp(&real::abs(y))).map(real_string);
    let csv = table(&["index", "root"], strs.iter().enumerate().map(|(i, r)| [(i + 1).to_string(), r.clone()]))?;
    let result = json!({
        "polynomial": p.to_string(),
        "coefficients": p,
        "real_roots": strs,
        "largest_in_modulus": dominant,
    });
    out(&result, csv)
}

fn psi_cmd(a: &PsiArgs, digits: usize) -> Result<Output> {
    let (k, m) = (a.k as usize, a.m as usize);
    if !(a.tol > 0.0 && a.tol < 1.0) {
        return Err(Error::InvalidArgument("tol must lie in ]0, 1[".into()));
    }
    let p = psi::build_psi(k, m);
    let roots = psi::psi_real_roots(k, m, a.tol);
    let phi = psi::phi(k, digits);
    let membership = psi::verify_root_membership(&p, k);
    let gaps = a.gaps.map(|mm| psi::psi_derivative_gaps(k, mm, digits)).transpose()?;
    let sigma = (k % 2 == 1 && m >= 2).then(|| psi::sigma_gap_ratios(k, m, digits)).transpose()?;
    let csv = table(
        &["index", "root"],
        roots.roots.iter().enumerate().map(|(i, r)| [(i + 1).to_string(), real_string(r)]),
    )?;
    let result = json!({
        "polynomial": p.to_string(),
        "coefficients": p,
        "roots": roots,
        "phi": phi,
        "membership": membership,
        "derivative_gaps": gaps,
        "sigma_gap_ratios": sigma,
    });
    out(&result, csv)
}

fn logcat(digits: usize) -> Result<Output> {
    let rep = polyalgebra::verify_log_catalog(digits);
    let csv = table(
        &["identity-id", "inputs", "expected", "observed", "residual", "pass"],
        rep.records.iter().map(|r| {
            [
                r.id.clone(),
                r.inputs.clone(),
                r.expected.clone(),
                r.observed.clone(),
                format!("{:e}", r.residual),
                r.pass.to_string(),
            ]
        }),
    )?;
    let result = json!({ "all_pass": rep.all_pass(), "catalog": rep });
    out(&result, csv)
}

fn grid(j: &IntRange, n: &IntRange) -> Result<Grid> {
    if j.lo < 1 {
        return Err(Error::InvalidArgument("j must be at least 1".into()));
    }
    Ok(Grid::with(j.lo as u64..=j.hi as u64, n.lo..=n.hi))
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    id: &'a str,
    formula: &'a str,
    note: &'a str,
    total: usize,
    failures: usize,
    pass: bool,
    first_failure: Option<&'a identities::catalog::IdentityCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cases: Option<&'a [identities::catalog::IdentityCase]>,
}

fn identities_cmd(c: &IdentitiesCmd) -> Result<Output> {
    match c {
        IdentitiesCmd::Verify(a) => {
            let g = grid(&a.j, &a.n)?;
            let ids: Vec<String> = if a.id.eq_ignore_ascii_case("all") {
                identities::catalog().iter().map(|s| s.id.to_string()).collect()
            } else {
                vec![a.id.clone()]
            };
            let mut reports: Vec<IdentityReport> = Vec::new();
            for id in &ids {
                reports.extend(identities::verify_identity(id, &g)?);
            }
            let summaries: Vec<VerifySummary> = reports
                .iter()
                .map(|r| VerifySummary {
                    id: &r.id,
                    formula: &r.formula,
                    note: &r.note,
                    total: r.total,
                    failures: r.failures,
                    pass: r.passes(),
                    first_failure: r.first_failure(),
                    cases: a.cases.then_some(r.cases.as_slice()),
                })
                .collect();
            let all_pass = reports.iter().all(IdentityReport::passes);
            let csv = cases_to_csv(&reports)?;
            out(&json!({ "all_pass": all_pass, "identities": summaries }), csv)
        }
        IdentitiesCmd::Discover(a) => {
            let spec = identities::lookup(&a.id)?;
            let rep = identities::discover_correction(&spec, &grid(&a.j, &a.n)?, &VariantSpace::default())?;
            let (outcome, formulas): (&str, Vec<String>) = match &rep.result {
                Correction::PrintedFormHolds => ("printed_form_holds", vec![rep.printed.clone()]),
                Correction::Corrected { variant } => ("corrected", vec![variant.formula.clone()]),
                Correction::NoVariantPasses => ("no_variant_passes", vec![]),
                Correction::Ambiguous { candidates } => {
                    ("ambiguous", candidates.iter().map(|v| v.formula.clone()).collect())
                }
            };
            let csv = table(
                &["id", "printed", "outcome", "formula"],
                formulas
                    .iter()
                    .map(|f| f.as_str())
                    .chain(formulas.is_empty().then_some(""))
                    .map(|f| [rep.id.clone(), rep.printed.clone(), outcome.to_string(), f.to_string()]),
            )?;
            out(&rep, csv)
        }
        IdentitiesCmd::SignTable(a) => {
            if a.j_max < 1 || a.max_index < 1 {
                return Err(Error::InvalidArgument("j-max and max-index must be positive".into()));
            }
            let rows = identities::balanced_sign_table(a.j_max, a.max_index);
            let csv = table(
                &["min_parity", "a_role", "c_role", "plus", "minus", "zero"],
                rows.iter().map(|r| {
                    let role = |x| serde_json::to_value(x).ok().and_then(|v| v.as_str().map(String::from));
                    [
                        r.min_parity.to_string(),
                        role(r.a_role).unwrap_or_default(),
                        role(r.c_role).unwrap_or_default(),
                        r.plus.to_string(),
                        r.minus.to_string(),
                        r.zero.to_string(),
                    ]
                }),
            )?;
            out(&rows, csv)
        }
        IdentitiesCmd::List => {
            let specs = identities::catalog();
            let csv = table(
                &["id", "formula", "note"],
                specs.iter().map(|s| [s.id.to_string(), s.formula.to_string(), s.note.to_string()]),
            )?;
            let list: Vec<Value> =
                specs.iter().map(|s| json!({ "id": s.id, "formula": s.formula, "note": s.note })).collect();
            out(&list, csv)
        }
    }
}

fn int_column(name: &str, v: &[num_bigint::BigInt]) -> Result<String> {
    table(&["n", name], v.iter().enumerate().map(|(i, x)| [i.to_string(), x.to_string()]))
}

fn triangles_cmd(c: &TrianglesCmd, digits: usize) -> Result<Output> {
    match c {
        TrianglesCmd::Delannoy { size } => {
            if *size == 0 {
                return Err(Error::InvalidArgument("size must be at least 1".into()));
            }
            let sq = triangles::DelannoySquare::new(*size);
            let rows: Vec<Vec<String>> =
                sq.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
            out(&json!({ "size": size, "rows": rows }), triangles::rows_to_csv(sq.rows())?)
        }
        TrianglesCmd::Diagonals { kind, p, count } => {
            let k = match kind {
                DiagonalArg::Anti => DiagonalKind::Anti,
                DiagonalArg::Shallow => DiagonalKind::Shallow(*p),
            };
            let sums = triangles::delannoy_diagonal_sums(k, *count)?;
            let tribonacci_slope = match kind {
                DiagonalArg::Shallow => Some(triangles::match_shallow_slope(*p, *count)?),
                DiagonalArg::Anti => None,
            };
            let result = json!({
                "kind": k,
                "slope": k.slope(),
                "sums": sums.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "matches_p_tribonacci_at_slope": tribonacci_slope,
            });
            out(&result, int_column("sum", &sums)?)
        }
        TrianglesCmd::Tribonacci { p, count } => {
            let fam = triangles::PTribFamily::new(*p, *count)?;
            let csv = table(
                &["n", "trib", "lucas_trib"],
                fam.trib
                    .iter()
                    .zip(&fam.lucas_trib)
                    .enumerate()
                    .map(|(i, (t, l))| [i.to_string(), t.to_string(), l.to_string()]),
            )?;
            out(&fam, csv)
        }
        TrianglesCmd::Asymmetric { rows } => {
            if *rows == 0 {
                return Err(Error::InvalidArgument("rows must be at least 1".into()));
            }
            let t = triangles::asymmetric_triangle(*rows);
            let csv = triangles::rows_to_csv(&t.rows)?;
            out(&t, csv)
        }
        TrianglesCmd::Eta { count } => {
            let needed = (*count as f64 * 0.245).ceil() as usize + 10;
            let used = digits.max(needed);
            let suite = triangles::eta_suite(*count, used)?;
            let csv = table(
                &["n", "v", "w"],
                suite
                    .v
                    .iter()
                    .zip(&suite.w)
                    .enumerate()
                    .map(|(i, (v, w))| [(i + 1).to_string(), v.to_string(), w.to_string()]),
            )?;
            let mut o = out(&suite, csv)?;
            o.digits = (used != digits).then_some(used);
            Ok(o)
        }
    }
}

fn lag_map(m: &MapArgs, a: f64) -> Result<LagMap> {
    let init = m.init.clone().unwrap_or_else(|| STANDARD_INIT.to_vec());
    LagMap::new(a, (m.lags.0, m.lags.1), init)
}

fn orbit_params(o: &OrbitArgs) -> OrbitParams {
    let base = if o.cascade { OrbitParams::cascade() } else { OrbitParams::default() };
    OrbitParams {
        transient: o.transient.unwrap_or(base.transient),
        window: o.window.unwrap_or(base.window),
        tol: o.tol.unwrap_or(base.tol),
        p_max: o.p_max.unwrap_or(base.p_max),
    }
}

fn dynamics_cmd(c: &DynamicsCmd) -> Result<Output> {
    match c {
        DynamicsCmd::Orbit { map, a, orbit } => {
            let params = orbit_params(orbit);
            let rep = classify_orbit(&lag_map(map, *a)?, &params)?;
            let csv = table(
                &["position", "value"],
                rep.witness.iter().enumerate().map(|(i, v)| [(i + 1).to_string(), v.to_string()]),
            )?;
            out(&json!({ "a": a, "params": params, "orbit": rep }), csv)
        }
        DynamicsCmd::Scan { map, a, refine, orbit } => {
            let params = orbit_params(orbit);
            let grid = a.values();
            if grid.len() < 2 {
                return Err(Error::InvalidArgument("a scan needs lo:hi:step".into()));
            }
            let hi = *grid.last().expect("non-empty");
            let scan = bifurcation_scan(&lag_map(map, a.lo)?, a.lo, hi, grid.len(), *refine, &params)?;
            let doublings: Vec<f64> = scan.doublings().iter().map(|t| t.a).collect();
            let csv = scan_to_csv(&scan.points)?;
            let result = json!({
                "params": params,
                "transitions": scan.transitions,
                "doublings": doublings,
                "points": scan.points,
            });
            out(&result, csv)
        }
        DynamicsCmd::Collapse { map, a, n_max, threshold } => {
            let values = a.values();
            let profile = collapse_profile(&lag_map(map, values[0])?, &values, *n_max, *threshold);
            let csv = table(
                &["a", "transient"],
                profile
                    .iter()
                    .map(|e| [e.a.to_string(), e.transient.map(|t| t.to_string()).unwrap_or_default()]),
            )?;
            out(&profile, csv)
        }
    }
}

fn word_config(s: &SystemArgs) -> Result<WordConfig> {
    if let Some(path) = &s.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        return WordConfig::from_json(&text);
    }
    let init = s.init.clone().ok_or_else(|| Error::InvalidArgument("--init or --config is required".into()))?;
    let lags = match &s.lags {
        Some(l) => l.clone(),
        None => (1..=init.len()).collect(),
    };
    Ok(WordConfig {
        alphabet: s.alphabet.as_ref().map(|a| a.chars().collect()),
        init_words: init,
        lags,
        order: s.order.clone(),
        permuted_middle: s.permuted_middle,
    })
}

fn words_cmd(c: &WordsCmd) -> Result<Output> {
    match c {
        WordsCmd::Gen { system, count, max_len } => {
            let cfg = word_config(system)?;
            let class = words::grammar_condition_classify(&cfg.init_words);
            if cfg.permuted_middle {
                let sys = words::apply_algorithm_a_system(&cfg.init_words, *count)?;
                let csv = table(
                    &["p", "length", "word"],
                    sys.words.iter().enumerate().map(|(i, w)| {
                        [(i + 1).to_string(), w.chars().count().to_string(), w.clone()]
                    }),
                )?;
                return out(&json!({ "system": cfg, "grammar": class, "generated": sys }), csv);
            }
            let mut sys = cfg.build()?;
            sys.extend_to(*count);
            let mut rows = Vec::with_capacity(*count);
            let mut listed = Vec::with_capacity(*count);
            for p in 1..=*count {
                let meta = sys.meta(p).expect("extended");
                let word = sys.materialize(p, *max_len).ok();
                rows.push([p.to_string(), meta.length.to_string(), word.clone().unwrap_or_default()]);
                listed.push(json!({ "p": p, "length": meta.length.to_string(), "counts": meta, "word": word }));
            }
            let csv = table(&["p", "length", "word"], rows)?;
            let result = json!({
                "system": cfg,
                "alphabet": sys.alphabet().iter().collect::<String>(),
                "grammar": class,
                "words": listed,
            });
            out(&result, csv)
        }
        WordsCmd::Freq { system, p_max, k } => {
            let cfg = word_config(system)?;
            let sys = cfg.build()?;
            let limits = words::letter_frequency_limits(&sys, *p_max)?;
            let grams = k.map(|k| words::kgram_frequencies(&sys, k, *p_max)).transpose()?;
            let csv = match &grams {
                Some(t) => t.to_csv()?,
                None => table(
                    &["letter", "last", "limit"],
                    limits.letters.iter().map(|l| [l.letter.to_string(), l.last.clone(), real_string(&l.limit)]),
                )?,
            };
            out(&json!({ "system": cfg, "limits": limits, "kgrams": grams }), csv)
        }
        WordsCmd::PermA { n, apply } => {
            let pa = words::algorithm_a_permutation(*n)?;
            let applied = apply.as_deref().map(|w| words::apply_permutation(w, &pa.perm)).transpose()?;
            let csv = table(
                &["position", "image"],
                pa.perm.iter().enumerate().map(|(i, v)| [(i + 1).to_string(), v.to_string()]),
            )?;
            out(&json!({ "permutation": pa, "applied": applied }), csv)
        }
    }
}

fn base_value(text: &str, digits: usize) -> Result<real::Real> {
    let named = |s: &str| {
        s.parse::<u64>().ok().filter(|&k| k >= 1).ok_or_else(|| Error::InvalidArgument(format!("bad index in {text:?}")))
    };
    if let Some(k) = text.strip_prefix("phi:") {
        return Ok(psi::phi(named(k)? as usize, digits).value);
    }
    if let Some(k) = text.strip_prefix("silver:") {
        return Ok(psi::SilverMean::new(named(k)?, digits).value);
    }
    real::parse(text, digits)
}

fn equi(a: &EquiArgs, digits: usize) -> Result<Output> {
    let rough = |t: &str| base_value(t, 20).map(|v| real::to_f64(&v));
    let x0 = rough(&a.x)?;
    let y0 = a.y.as_deref().map(rough).transpose()?;
    if !(x0 > 1.0) || y0.is_some_and(|y| !(y > 1.0)) {
        return Err(Error::InvalidArgument("bases must exceed 1".into()));
    }
    let needed = polyalgebra::equi::required_digits(x0, y0, a.n_max);
    let used = digits.max(needed);
    let x = base_value(&a.x, used)?;
    let y = a.y.as_deref().map(|t| base_value(t, used)).transpose()?;
    let probe = polyalgebra::power_frac_probe(&x, y.as_ref(), a.n_max, a.eps, used)?;
    let csv = table(
        &["n", "frac_x", "frac_y"],
        probe.fracs_x.iter().enumerate().map(|(i, fx)| {
            let fy = probe.fracs_y.as_ref().map(|v| v[i].to_string()).unwrap_or_default();
            [(i + 1).to_string(), fx.to_string(), fy]
        }),
    )?;
    let mut o = out(&probe, csv)?;
    o.digits = (used != digits).then_some(used);
    Ok(o)
}
