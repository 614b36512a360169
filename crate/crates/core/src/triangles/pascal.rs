//! Shallow diagonals of Pascal's triangle and of the asymmetric triangle
//! with borders 1 and 2.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::identities::jlucas;

/// Σ_k C(n−k, k), which is the Fibonacci number F_{n+1}.
pub fn pascal_shallow_fib(n: u64) -> BigInt {
    (0..=n / 2)
        .map(|k| num_integer::binomial(BigInt::from(n - k), BigInt::from(k)))
        .sum()
}

/// The first six rows as they are usually displayed; the builder is checked
/// against them.
pub const REFERENCE_ROWS: [&[i64]; 6] =
    [&[1], &[1, 2], &[1, 3, 2], &[1, 4, 5, 2], &[1, 5, 9, 7, 2], &[1, 6, 14, 16, 9, 2]];

#[derive(Debug, Clone, Serialize)]
pub struct AsymmetricTriangle {
    #[serde(serialize_with = "ser_rows")]
    pub rows: Vec<Vec<BigInt>>,
    pub matches_reference_rows: bool,
    /// s_n = Σ_k T(n−k, k), n = 0, 1, …
    #[serde(serialize_with = "ser_ints")]
    pub shallow_sums: Vec<BigInt>,
    /// Smallest n from which s_n = L_{n+offset} holds through the last sum.
    pub lucas_from: Option<usize>,
    pub lucas_offset: Option<i64>,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn ser_rows<S: serde::Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()))
}

fn build_rows(rows: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let row = match r {
            0 => vec![BigInt::one()],
            1 => vec![BigInt::one(), BigInt::from(2)],
            _ => {
                let prev = &out[r - 1];
                let mut row = Vec::with_capacity(r + 1);
                row.push(BigInt::one());
                for k in 1..r {
                    row.push(&prev[k - 1] + &prev[k]);
                }
                row.push(BigInt::from(2));
                row
            }
        };
        out.push(row);
    }
    out
}

fn shallow_sums(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    // Diagonal n needs row n, so only as many sums as rows.
    (0..rows.len())
        .map(|n| {
            (0..=n / 2)
                .filter_map(|k| rows.get(n - k).and_then(|row| row.get(k)))
                .fold(BigInt::zero(), |acc, x| acc + x)
        })
        .collect()
}

fn lucas_alignment(sums: &[BigInt]) -> Option<(usize, i64)> {
    for from in 0..=2usize {
        if sums.len() < from + 4 {
            return None;
        }
        for offset in -2..=2i64 {
            let ok = (from..sums.len()).all(|n| {
                let idx = n as i64 + offset;
                idx >= 0 && sums[n] == jlucas(1, idx)
            });
            if ok {
                return Some((from, offset));
            }
        }
    }
    None
}

/// Triangle with left border 1, right border 2 and Pascal interior.
pub fn asymmetric_triangle(rows: usize) -> AsymmetricTriangle {
    let built = build_rows(rows.max(REFERENCE_ROWS.len()));
    let matches_reference_rows = REFERENCE_ROWS
        .iter()
        .zip(&built)
        .all(|(want, got)| want.iter().map(|&x| BigInt::from(x)).eq(got.iter().cloned()));
    let mut rows_out = built;
    rows_out.truncate(rows);
    let shallow_sums = shallow_sums(&rows_out);
    let alignment = if matches_reference_rows { lucas_alignment(&shallow_sums) } else { None };
    AsymmetricTriangle {
        rows: rows_out,
        matches_reference_rows,
        shallow_sums,
        lucas_from: alignment.map(|a| a.0),
        lucas_offset: alignment.map(|a| a.1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::jfib;

    #[test]
    fn shallow_pascal_values() {
        assert_eq!(pascal_shallow_fib(1), BigInt::from(1));
        assert_eq!(pascal_shallow_fib(4), BigInt::from(5));
        assert_eq!(pascal_shallow_fib(6), BigInt::from(13));
    }

    #[test]
    fn shallow_pascal_is_fibonacci() {
        for n in 0..=30u64 {
            assert_eq!(pascal_shallow_fib(n), jfib(1, n as i64 + 1), "n={n}");
        }
    }

    #[test]
    fn asymmetric_rows() {
        let t = asymmetric_triangle(8);
        assert!(t.matches_reference_rows);
        let row = |i: usize| t.rows[i].iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        assert_eq!(row(4), "1 5 9 7 2");
        assert_eq!(row(5), "1 6 14 16 9 2");
    }

    #[test]
    fn asymmetric_shallow_sums_are_lucas() {
        let t = asymmetric_triangle(20);
        let head: Vec<_> = t.shallow_sums[1..7].iter().map(ToString::to_string).collect();
        assert_eq!(head, ["1", "3", "4", "7", "11", "18"]);
        // the apex alone sums to 1, not L_0 = 2
        assert_eq!((t.lucas_from, t.lucas_offset), (Some(1), Some(0)));
    }

    #[test]
    fn asymmetric_diagonals() {
        let t = asymmetric_triangle(12);
        for (r, row) in t.rows.iter().enumerate().skip(1) {
            // right border, then odd numbers, then squares
            assert_eq!(row[r], BigInt::from(2));
            if r >= 2 {
                assert_eq!(row[r - 1], BigInt::from(2 * r as i64 - 1));
            }
            if r >= 3 {
                assert_eq!(row[r - 2], BigInt::from(((r - 1) * (r - 1)) as i64));
            }
        }
    }
}
