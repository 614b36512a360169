//! j-Fibonacci and j-Lucas numbers on all integer indices.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

/// Terms of u_n = j·u_{n−1} + u_{n−2} from two seeds, extended both ways
/// on demand. Reads take a shared lock; growth takes the write lock.
#[derive(Debug)]
struct SignedMemo {
    j: BigInt,
    /// index 0, 1, 2, …
    forward: RwLock<Vec<BigInt>>,
    /// index −1, −2, …
    backward: RwLock<Vec<BigInt>>,
}

impl SignedMemo {
    /// Seeds are u_1 and u_2; u_0 and everything below is back-solved.
    fn new(j: u64, u1: BigInt, u2: BigInt) -> Self {
        let j = BigInt::from(j);
        let u0 = &u2 - &j * &u1;
        Self { j, forward: RwLock::new(vec![u0, u1, u2]), backward: RwLock::new(Vec::new()) }
    }

    fn get(&self, n: i64) -> BigInt {
        if n >= 0 {
            let i = n as usize;
            if let Some(v) = self.forward.read().expect("memo lock").get(i) {
                return v.clone();
            }
            let mut f = self.forward.write().expect("memo lock");
            while f.len() <= i {
                let k = f.len();
                let next = &self.j * &f[k - 1] + &f[k - 2];
                f.push(next);
            }
            f[i].clone()
        } else {
            let i = (-n - 1) as usize;
            if let Some(v) = self.backward.read().expect("memo lock").get(i) {
                return v.clone();
            }
            let (u0, u1) = {
                let f = self.forward.read().expect("memo lock");
                (f[0].clone(), f[1].clone())
            };
            let mut b = self.backward.write().expect("memo lock");
            while b.len() <= i {
                // u_{k−2} = u_k − j·u_{k−1}, walking down from u_1, u_0
                let k = b.len();
                let (hi, mid) = match k {
                    0 => (u1.clone(), u0.clone()),
                    1 => (u0.clone(), b[0].clone()),
                    _ => (b[k - 2].clone(), b[k - 1].clone()),
                };
                b.push(hi - &self.j * mid);
            }
            b[i].clone()
        }
    }
}

/// F_{(j,n)} and L_{(j,n)} for one order j.
#[derive(Debug)]
pub struct JFLPair {
    j: u64,
    fib: SignedMemo,
    lucas: SignedMemo,
}

impl JFLPair {
    /// F: 1, j, …; L: j, j² + 2, …
    pub fn new(j: u64) -> Self {
        assert!(j >= 1, "order must be positive");
        let jb = BigInt::from(j);
        Self {
            j,
            fib: SignedMemo::new(j, BigInt::from(1), jb.clone()),
            lucas: SignedMemo::new(j, jb.clone(), &jb * &jb + 2),
        }
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn fib(&self, n: i64) -> BigInt {
        self.fib.get(n)
    }

    pub fn lucas(&self, n: i64) -> BigInt {
        self.lucas.get(n)
    }
}

fn shared(j: u64) -> Arc<JFLPair> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<JFLPair>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().expect("cache lock").get(&j) {
        return Arc::clone(p);
    }
    let mut w = cache.write().expect("cache lock");
    Arc::clone(w.entry(j).or_insert_with(|| Arc::new(JFLPair::new(j))))
}

/// F_{(j,n)}, memoized process-wide.
pub fn jfib(j: u64, n: i64) -> BigInt {
    shared(j).fib(n)
}

/// L_{(j,n)}, memoized process-wide.
pub fn jlucas(j: u64, n: i64) -> BigInt {
    shared(j).lucas(n)
}

/// Shared pair for order `j`.
pub fn pair(j: u64) -> Arc<JFLPair> {
    shared(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn classical_and_pell() {
        let f1: Vec<_> = (1..=6).map(|n| jfib(1, n)).collect();
        assert_eq!(f1, v(&[1, 1, 2, 3, 5, 8]));
        let f2: Vec<_> = (1..=6).map(|n| jfib(2, n)).collect();
        assert_eq!(f2, v(&[1, 2, 5, 12, 29, 70]));
        assert_eq!(jfib(2, 0), BigInt::from(0));
        assert_eq!(jfib(2, -1), BigInt::from(1));
    }

    #[test]
    fn lucas_orders() {
        let l1: Vec<_> = (1..=5).map(|n| jlucas(1, n)).collect();
        assert_eq!(l1, v(&[1, 3, 4, 7, 11]));
        let l2: Vec<_> = (1..=5).map(|n| jlucas(2, n)).collect();
        assert_eq!(l2, v(&[2, 6, 14, 34, 82]));
        let l3: Vec<_> = (1..=4).map(|n| jlucas(3, n)).collect();
        assert_eq!(l3, v(&[3, 11, 36, 119]));
        assert_eq!(jlucas(3, 0), BigInt::from(2));
    }

    #[test]
    fn fibonacci_backwards() {
        let back: Vec<_> = (-3..=2).map(|n| jfib(1, n)).collect();
        assert_eq!(back, v(&[2, -1, 1, 0, 1, 1]));
    }

    #[test]
    fn recurrence_holds_both_directions() {
        for j in 1..=8u64 {
            let p = JFLPair::new(j);
            let jb = BigInt::from(j);
            for n in -30..=30i64 {
                assert_eq!(p.fib(n), &jb * p.fib(n - 1) + p.fib(n - 2));
                assert_eq!(p.lucas(n), &jb * p.lucas(n - 1) + p.lucas(n - 2));
            }
        }
    }

    #[test]
    fn negative_index_symmetry() {
        for j in 1..=8u64 {
            for n in 0..=30i64 {
                let sign = if n % 2 == 0 { -1 } else { 1 };
                assert_eq!(jfib(j, -n), sign * jfib(j, n), "j={j} n={n}");
            }
        }
    }

    #[test]
    fn concurrent_reads_agree() {
        let p = Arc::new(JFLPair::new(3));
        let handles: Vec<_> = (0..8)
            .map(|t| {
                let p = Arc::clone(&p);
                std::thread::spawn(move || (0..200).map(|n| p.fib(n - 100 + t)).collect::<Vec<_>>())
            })
            .collect();
        for (t, h) in handles.into_iter().enumerate() {
            let got = h.join().unwrap();
            for (n, val) in got.iter().enumerate() {
                assert_eq!(*val, JFLPair::new(3).fib(n as i64 - 100 + t as i64));
            }
        }
    }
}
