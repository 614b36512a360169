//! Directed n-cycle with one self-loop: its characteristic polynomial is
//! λⁿ − λⁿ⁻¹ − 1, so its dominant eigenvalue is φ_{n−1}.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::IntPolynomial;
use super::psi::{build_psi, phi};
use crate::real;

const POWER_ITERATION_CAP: usize = 1_000_000;

/// Adjacency matrix: edges i → i+1 (mod n) plus a loop at vertex 0.
pub fn cycle_with_loop(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[(i + 1) % n] = 1;
    }
    a[0][0] += 1;
    a
}

/// det(λI − A) by Faddeev–LeVerrier over the integers.
pub fn characteristic_polynomial(a: &[Vec<i64>]) -> IntPolynomial {
    let n = a.len();
    let a: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() {
                        s += &a[i][l] * &m[l][j];
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        // c_{n−k} = −tr(A·M_k)/k
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() {
                    tr += &a[i][l] * &m[l][i];
                }
            }
        }
        coeffs[n - k] = -tr / BigInt::from(k);
    }
    IntPolynomial::new(coeffs)
}

/// Dominant eigenvalue by power iteration on a non-negative matrix.
pub fn power_iteration(a: &[Vec<i64>], tol: f64) -> (f64, usize) {
    let n = a.len();
    let mut v = vec![1.0f64; n];
    let mut estimate = 0.0;
    for it in 1..=POWER_ITERATION_CAP {
        let w: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| a[i][j] as f64 * v[j]).sum())
            .collect();
        let norm_v: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let norm_w: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let next = norm_w / norm_v;
        v = w.iter().map(|x| x / norm_w).collect();
        if (next - estimate).abs() < tol * 1e-3 {
            return (next, it);
        }
        estimate = next;
    }
    (estimate, POWER_ITERATION_CAP)
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphEigenReport {
    pub n: usize,
    pub dominant: f64,
    pub phi: f64,
    pub residual: f64,
    pub characteristic_polynomial: IntPolynomial,
    pub char_poly_matches: bool,
    pub iterations: usize,
}

/// Compares the dominant eigenvalue of the looped n-cycle with φ_{n−1}.
pub fn cycle_graph_eigen_check(n: usize, tol: f64) -> GraphEigenReport {
    assert!(n >= 2, "need at least two vertices");
    let a = cycle_with_loop(n);
    let cp = characteristic_polynomial(&a);
    let expected = build_psi(n - 1, 0);
    let char_poly_matches = cp == expected || cp == -&expected;
    let (dominant, iterations) = power_iteration(&a, tol);
    let phi = real::to_f64(&phi(n - 1, 30).value);
    GraphEigenReport {
        n,
        dominant,
        phi,
        residual: (dominant - phi).abs(),
        characteristic_polynomial: cp,
        char_poly_matches,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn faddeev_leverrier_on_small_matrices() {
        assert_eq!(
            characteristic_polynomial(&[vec![1, 1], vec![1, 0]]),
            IntPolynomial::from_i64(&[-1, -1, 1])
        );
        assert_eq!(
            characteristic_polynomial(&[vec![2, 0], vec![0, 3]]),
            IntPolynomial::from_i64(&[6, -5, 1])
        );
    }

    #[test]
    fn two_vertices_give_golden_ratio() {
        let r = cycle_graph_eigen_check(2, 1e-10);
        assert!(r.char_poly_matches);
        assert!((r.dominant - 1.618033988749895).abs() < 1e-8);
    }

    #[test]
    fn four_and_five_vertices() {
        let r = cycle_graph_eigen_check(4, 1e-10);
        assert!((r.dominant - 1.3802775).abs() < 1e-7);
        let r = cycle_graph_eigen_check(5, 1e-10);
        assert!((r.dominant - 1.324717957).abs() < 1e-8);
    }

    #[test]
    fn residual_small_up_to_ten() {
        for n in 2..=10 {
            let r = cycle_graph_eigen_check(n, 1e-10);
            assert!(r.char_poly_matches, "n={n}");
            assert!(r.residual < 1e-8, "n={n}: {}", r.residual);
        }
    }
}
