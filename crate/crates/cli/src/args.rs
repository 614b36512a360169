//! Flag grammar.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Serialize, Serializer};

#[derive(Debug, Parser, Serialize)]
#[command(name = "recurlab", version, about = "Experiments on additive recurrences, their roots, identities and word systems")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Working precision in decimal digits (default: $RECURLAB_DIGITS or 50).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(10..))]
    pub digits: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generate terms of a recurrence.
    Seq(SeqArgs),
    /// Real roots of a characteristic or explicit polynomial.
    Roots(RootsArgs),
    /// The polynomial family x^{k+m+1} − x^{k+m} − … and its roots.
    Psi(PsiArgs),
    /// Check the logarithmic identity catalog.
    Logcat,
    /// Fibonacci/Lucas identity harness.
    #[command(subcommand)]
    Identities(IdentitiesCmd),
    /// Delannoy, p-Tribonacci and related triangles.
    #[command(subcommand)]
    Triangles(TrianglesCmd),
    /// The lagged map u_n = a·x(1−x)·y(1−y).
    #[command(subcommand)]
    Dynamics(DynamicsCmd),
    /// Concatenation word systems.
    #[command(subcommand)]
    Words(WordsCmd),
    /// Fractional parts of powers.
    Equi(EquiArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct SeqArgs {
    /// Rule such as "u[n-2]+u[n-3]".
    #[arg(long)]
    pub rule: String,
    /// Initial terms u_1, u_2, …; integers or p/q.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_text)]
    pub init: Vec<String>,
    /// Terms from u_1 on.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    /// Terms to prepend by solving backwards.
    #[arg(long, default_value_t = 0)]
    pub backward: usize,
    /// Also estimate lim u_{n+1}/u_n to this tolerance.
    #[arg(long)]
    pub ratio_tol: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct RootsArgs {
    /// Use the characteristic polynomial of this rule.
    #[arg(long, required_unless_present = "poly", conflicts_with = "poly")]
    pub rule: Option<String>,
    /// Integer coefficients, highest degree first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub poly: Option<Vec<i64>>,
    /// Root accuracy.
    #[arg(long, default_value_t = 1e-30)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct PsiArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub k: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(0..=256))]
    pub m: u64,
    #[arg(long, default_value_t = 1e-30)]
    pub tol: f64,
    /// Derivative gaps at φ_k for m = 0..=M (M ≥ 3).
    #[arg(long)]
    pub gaps: Option<usize>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentitiesCmd {
    /// Check identities exactly over a grid.
    Verify(VerifyArgs),
    /// Search single edits of a failing identity for one that holds.
    Discover(DiscoverArgs),
    /// Sign of F_aF_b − F_cF_d by parity of min and roles of a and c.
    SignTable(SignTableArgs),
    /// The identity catalog.
    List,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Catalog id, or "all".
    #[arg(long, default_value = "all")]
    pub id: String,
    #[arg(long, default_value = "1:5")]
    pub j: IntRange,
    #[arg(long, default_value = "2:20")]
    pub n: IntRange,
    /// Include every case in the JSON report.
    #[arg(long)]
    pub cases: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct DiscoverArgs {
    #[arg(long)]
    pub id: String,
    #[arg(long, default_value = "1:8")]
    pub j: IntRange,
    #[arg(long, default_value = "1:25")]
    pub n: IntRange,
}

#[derive(Debug, Args, Serialize)]
pub struct SignTableArgs {
    #[arg(long, default_value_t = 5)]
    pub j_max: u64,
    #[arg(long, default_value_t = 12)]
    pub max_index: i64,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrianglesCmd {
    /// The Delannoy square D(i, j).
    Delannoy {
        #[arg(long, default_value_t = 5)]
        size: usize,
    },
    /// Sums along anti-diagonals or the shallow lines i + (p+1)j = n.
    Diagonals {
        #[arg(long, value_enum, default_value_t = DiagonalArg::Anti)]
        kind: DiagonalArg,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 12)]
        count: usize,
    },
    /// p-Tribonacci, p-Lucas-Tribonacci and their companion relation.
    Tribonacci {
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Pascal-type triangle with borders 1 and 2.
    Asymmetric {
        #[arg(long, default_value_t = 10)]
        rows: usize,
    },
    /// Integer parts of powers of η and their Perrin relations.
    Eta {
        #[arg(long, default_value_t = 12)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagonalArg {
    Anti,
    Shallow,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DynamicsCmd {
    /// Classify the orbit at one parameter.
    Orbit {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[command(flatten)]
        orbit: OrbitArgs,
    },
    /// Classify over a grid and refine every transition.
    Scan {
        #[command(flatten)]
        map: MapArgs,
        /// lo:hi:step
        #[arg(long)]
        a: FloatRange,
        /// Bracket width at which refinement stops.
        #[arg(long, default_value_t = 1e-4)]
        refine: f64,
        #[command(flatten)]
        orbit: OrbitArgs,
    },
    /// Terms until the orbit stays below a threshold.
    Collapse {
        #[command(flatten)]
        map: MapArgs,
        /// A value or lo:hi:step.
        #[arg(long)]
        a: FloatRange,
        #[arg(long, default_value_t = 100_000)]
        n_max: usize,
        #[arg(long, default_value_t = 1e-12)]
        threshold: f64,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct MapArgs {
    /// The two lags i,j of u_n = f(u_{n−i}, u_{n−j}).
    #[arg(long, default_value = "3,1")]
    pub lags: Lags,
    /// Initial values, oldest first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub init: Option<Vec<f64>>,
}

#[derive(Debug, Args, Serialize)]
pub struct OrbitArgs {
    /// Long-transient preset for resolving a doubling cascade.
    #[arg(long)]
    pub cascade: bool,
    #[arg(long)]
    pub transient: Option<usize>,
    #[arg(long)]
    pub window: Option<usize>,
    /// Tolerance for detecting a period.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub p_max: Option<usize>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordsCmd {
    /// Generate words with their lengths and letter counts.
    Gen {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Longest word written out in full.
        #[arg(long, default_value_t = 4096)]
        max_len: usize,
    },
    /// Letter-frequency limits, and k-gram counts with --k.
    Freq {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 30)]
        p_max: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// The permutation chosen by Algorithm A for length n.
    #[command(name = "permA")]
    #[serde(rename = "permA")]
    PermA {
        #[arg(long)]
        n: usize,
        /// Apply the permutation to this word.
        #[arg(long)]
        apply: Option<String>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct SystemArgs {
    /// JSON system description; replaces the flags below.
    #[arg(long, conflicts_with_all = ["init", "lags", "order", "alphabet", "permuted_middle"])]
    pub config: Option<PathBuf>,
    /// Initial words u_1, u_2, …
    #[arg(long, value_delimiter = ',')]
    pub init: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    pub lags: Option<Vec<usize>>,
    /// Concatenation order over the lags (default: largest lag first).
    #[arg(long, value_delimiter = ',')]
    pub order: Option<Vec<usize>>,
    /// Letters in count order (default: sorted letters of the initial words).
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Permute the middle word by Algorithm A (three initial words).
    #[arg(long)]
    pub permuted_middle: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct EquiArgs {
    /// A decimal > 1, or phi:K, or silver:K.
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: Option<String>,
    #[arg(long, default_value_t = 20)]
    pub n_max: usize,
    /// Closeness threshold for |frac(xⁿ) − frac(yⁿ)|.
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
}

fn rational_text(s: &str) -> Result<String, String> {
    BigRational::from_str(s.trim())
        .map(|_| s.trim().to_string())
        .map_err(|_| format!("not an integer or p/q: {s:?}"))
}

/// Inclusive integer range `lo:hi`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad integer {t:?} in {s:?}"));
        let (lo, hi) = match s.split_once(':') {
            Some((a, b)) => (num(a)?, num(b)?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Self { lo, hi })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl Serialize for IntRange {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `lo:hi:step`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl FloatRange {
    /// lo, lo + step, …, up to hi within half a step.
    pub fn values(&self) -> Vec<f64> {
        if self.step == 0.0 {
            return vec![self.lo];
        }
        let n = ((self.hi - self.lo) / self.step + 0.5).floor() as usize + 1;
        // 12 decimals hide the drift of lo + k·step
        (0..n).map(|k| ((self.lo + k as f64 * self.step) * 1e12).round() / 1e12).collect()
    }
}

impl FromStr for FloatRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("bad number {t:?} in {s:?}"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                Ok(Self { lo: v, hi: v, step: 0.0 })
            }
            [lo, hi, step] => {
                let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
                if step <= 0.0 || hi <= lo {
                    return Err(format!("need lo < hi and step > 0 in {s:?}"));
                }
                Ok(Self { lo, hi, step })
            }
            _ => Err(format!("expected lo:hi:step, got {s:?}")),
        }
    }
}

impl fmt::Display for FloatRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.step == 0.0 {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}:{}:{}", self.lo, self.hi, self.step)
        }
    }
}

impl Serialize for FloatRange {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Two lags `i,j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lags(pub usize, pub usize);

impl FromStr for Lags {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(',').ok_or_else(|| format!("expected two lags i,j, got {s:?}"))?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad lag {t:?}"));
        Ok(Self(num(a)?, num(b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("1:5".parse::<IntRange>().unwrap(), IntRange { lo: 1, hi: 5 });
        assert_eq!("-3:2".parse::<IntRange>().unwrap(), IntRange { lo: -3, hi: 2 });
        assert!("5:1".parse::<IntRange>().is_err());
        let r: FloatRange = "10:16:0.002".parse().unwrap();
        let v = r.values();
        assert_eq!(v.len(), 3001);
        assert!((v[3000] - 16.0).abs() < 1e-9);
        assert_eq!("15.7".parse::<FloatRange>().unwrap().values(), vec![15.7]);
        assert!("1:2".parse::<FloatRange>().is_err());
        assert!("1:2:0".parse::<FloatRange>().is_err());
    }

    #[test]
    fn lags_and_rationals() {
        assert_eq!("3,1".parse::<Lags>().unwrap(), Lags(3, 1));
        assert!("3".parse::<Lags>().is_err());
        assert!(rational_text("-3/4").is_ok());
        assert!(rational_text("x").is_err());
    }
}
