//! The Delannoy square D(i,j) and sums along its straight diagonals.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::tribonacci::p_tribonacci;
use crate::error::{Error, Result};

/// D(0,j) = D(i,0) = 1, D(i,j) = D(i−1,j) + D(i,j−1) + D(i−1,j−1).
#[derive(Debug, Clone)]
pub struct DelannoySquare {
    table: Vec<Vec<BigInt>>,
}

impl DelannoySquare {
    /// Square with `size` rows and columns.
    pub fn new(size: usize) -> Self {
        let mut table = vec![vec![BigInt::one(); size]; size];
        for i in 1..size {
            for j in 1..size {
                let v = &table[i - 1][j] + &table[i][j - 1] + &table[i - 1][j - 1];
                table[i][j] = v;
            }
        }
        Self { table }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.table.get(i).and_then(|r| r.get(j))
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.table
    }

    /// Σ D(i,j) over i + slope·j = n.
    pub fn line_sum(&self, n: usize, slope: usize) -> BigInt {
        (0..=n / slope.max(1))
            .filter_map(|j| self.get(n - slope * j, j))
            .fold(BigInt::zero(), |acc, x| acc + x)
    }
}

pub fn delannoy(i: usize, j: usize) -> BigInt {
    let (a, b) = (i.min(j), i.max(j));
    // Rolling rows keep this O(a·b) in time and O(b) in space.
    let mut row = vec![BigInt::one(); b + 1];
    for _ in 1..=a {
        let mut diag = BigInt::one();
        for c in 1..=b {
            let up = row[c].clone();
            row[c] = &row[c] + &row[c - 1] + &diag;
            diag = up;
        }
    }
    row[b].clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagonalKind {
    /// i + j = n
    Anti,
    /// i + (p+1)·j = n
    Shallow(usize),
}

impl DiagonalKind {
    pub fn slope(self) -> usize {
        match self {
            DiagonalKind::Anti => 1,
            DiagonalKind::Shallow(p) => p + 1,
        }
    }
}

/// The first `count` diagonal sums, n = 0, 1, …
pub fn delannoy_diagonal_sums(kind: DiagonalKind, count: usize) -> Result<Vec<BigInt>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let sq = DelannoySquare::new(count);
    Ok((0..count).map(|n| sq.line_sum(n, kind.slope())).collect())
}

/// Confirms that sums along i + (p+1)·j = n reproduce the p-Tribonacci
/// numbers; otherwise reports which slope, if any, does.
pub fn match_shallow_slope(p: usize, count: usize) -> Result<usize> {
    let want = p_tribonacci(p, count)?;
    let sq = DelannoySquare::new(count);
    let fits = |slope: usize| (0..count).all(|n| sq.line_sum(n, slope) == want[n]);
    if fits(p + 1) {
        return Ok(p + 1);
    }
    let other = (1..=count).find(|&s| fits(s));
    Err(Error::InvalidArgument(match other {
        Some(s) => format!("p = {p}: diagonal sums need slope {s}, not {}", p + 1),
        None => format!("p = {p}: no straight diagonal reproduces the sequence"),
    }))
}
