//! Pascal-type triangles, the Delannoy square and its diagonal sums,
//! p-Tribonacci / p-Lucas-Tribonacci families and the η/Perrin relations.

pub mod delannoy;
pub mod eta;
pub mod pascal;
pub mod tribonacci;

pub use delannoy::{delannoy, delannoy_diagonal_sums, match_shallow_slope, DelannoySquare, DiagonalKind};
pub use eta::{eta_suite, EtaSuite};
pub use pascal::{asymmetric_triangle, pascal_shallow_fib, AsymmetricTriangle};
pub use tribonacci::{p_lucas_trib, p_tribonacci, CompanionCheck, PTribFamily};

use num_bigint::BigInt;

/// Rows as CSV with header `row,0,1,…`; ragged rows are padded with empty cells.
pub fn rows_to_csv(rows: &[Vec<BigInt>]) -> crate::Result<String> {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let header: Vec<String> = std::iter::once("row".to_string()).chain((0..width).map(|c| c.to_string())).collect();
    let body = rows.iter().enumerate().map(|(i, row)| {
        let mut cells = vec![i.to_string()];
        cells.extend(row.iter().map(ToString::to_string));
        cells.resize(width + 1, String::new());
        cells
    });
    crate::report::csv_string(std::iter::once(header).chain(body))
}
