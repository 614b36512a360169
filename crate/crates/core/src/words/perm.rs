//! The prime-indexed permutation P_(A,n) and the word system that applies it
//! to its middle term.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest n whose primes below n! are enumerated.
pub const PERMUTATION_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationA {
    pub n: usize,
    /// 1-based lexicographic rank, absent when no prime is below n!.
    pub rank: Option<u64>,
    /// σ as images of 1..=n; P(W)_i = W_{σ(i)}.
    pub perm: Vec<usize>,
    pub warning: Option<String>,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// 1-based rank `m` among the permutations of 1..=n in lexicographic order.
fn unrank(n: usize, m: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut r = m - 1;
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i);
        let idx = (r / f) as usize;
        r %= f;
        out.push(pool.remove(idx));
    }
    out
}

/// Takes term (n−1)^{n−1} (1-based) of the periodic sequence of primes
/// below n!, and returns the permutation of that rank.
pub fn algorithm_a_permutation(n: usize) -> Result<PermutationA> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n > PERMUTATION_CAP {
        return Err(Error::PermutationCap { n, cap: PERMUTATION_CAP });
    }
    let identity = (1..=n).collect();
    if n == 1 {
        return Ok(PermutationA { n, rank: None, perm: identity, warning: None });
    }
    let limit = factorial(n);
    let primes: Vec<u64> =
        primal::Primes::all().map(|p| p as u64).take_while(|&p| p < limit).collect();
    if primes.is_empty() {
        return Ok(PermutationA {
            n,
            rank: None,
            perm: identity,
            warning: Some(format!("no primes below {n}! = {limit}; identity used")),
        });
    }
    let term = ((n - 1) as u64).pow((n - 1) as u32);
    let m = primes[((term - 1) % primes.len() as u64) as usize];
    Ok(PermutationA { n, rank: Some(m), perm: unrank(n, m), warning: None })
}

/// P(W)_i = W_{σ(i)}.
pub fn apply_permutation(word: &str, perm: &[usize]) -> Result<String> {
    let chars: Vec<char> = word.chars().collect();
    if chars.len() != perm.len() {
        return Err(Error::InvalidArgument("permutation and word differ in length".into()));
    }
    Ok(perm.iter().map(|&i| chars[i - 1]).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgorithmASystem {
    pub words: Vec<String>,
    /// Index of the word that could not be built, if generation stopped early.
    pub stopped_at: Option<usize>,
    pub stop_reason: Option<String>,
    pub warnings: Vec<String>,
}

/// W_{n+3} = W_{n+1} ⋕ P_(A,|W_{n+2}|)(W_{n+2}) ⋕ W_n, up to `count` words.
/// Stops when a middle word is longer than [`PERMUTATION_CAP`].
pub fn apply_algorithm_a_system(init: &[String], count: usize) -> Result<AlgorithmASystem> {
    if init.len() != 3 || init.iter().any(String::is_empty) {
        return Err(Error::InvalidArgument("three non-empty initial words are required".into()));
    }
    let mut words = init.to_vec();
    let mut warnings = Vec::new();
    while words.len() < count {
        let p = words.len();
        let middle = &words[p - 1];
        let len = middle.chars().count();
        let pa = match algorithm_a_permutation(len) {
            Ok(pa) => pa,
            Err(e) => {
                return Ok(AlgorithmASystem {
                    words,
                    stopped_at: Some(p + 1),
                    stop_reason: Some(e.to_string()),
                    warnings,
                })
            }
        };
        if let Some(w) = pa.warning {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        let next = format!("{}{}{}", words[p - 2], apply_permutation(middle, &pa.perm)?, words[p - 3]);
        words.push(next);
    }
    Ok(AlgorithmASystem { words, stopped_at: None, stop_reason: None, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::kgram::scan_kgrams;
    use crate::words::words;

    #[test]
    fn three_gives_one_three_two() {
        let p = algorithm_a_permutation(3).unwrap();
        assert_eq!(p.rank, Some(2));
        assert_eq!(p.perm, [1, 3, 2]);
    }

    #[test]
    fn four_regression_anchor() {
        // nine primes below 24; term 27 is the ninth, 23
        let p = algorithm_a_permutation(4).unwrap();
        assert_eq!(p.rank, Some(23));
        assert_eq!(p.perm, [4, 3, 1, 2]);
    }

    #[test]
    fn degenerate_sizes() {
        assert_eq!(algorithm_a_permutation(1).unwrap().perm, [1]);
        let two = algorithm_a_permutation(2).unwrap();
        assert_eq!(two.perm, [1, 2]);
        assert!(two.warning.is_some());
        assert!(matches!(algorithm_a_permutation(9), Err(Error::PermutationCap { .. })));
    }

    #[test]
    fn permutations_are_bijections() {
        for n in 1..=PERMUTATION_CAP {
            let mut p = algorithm_a_permutation(n).unwrap().perm;
            p.sort_unstable();
            assert_eq!(p, (1..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn unrank_is_lexicographic() {
        let all: Vec<Vec<usize>> = (1..=6).map(|m| unrank(3, m)).collect();
        assert_eq!(all, [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]]);
    }

    #[test]
    fn system_from_single_letters() {
        let s = apply_algorithm_a_system(&words(&["A", "B", "C"]), 10).unwrap();
        assert_eq!(s.words[3], "BCA");
        // |BCA| = 3 so the middle word becomes BAC
        assert_eq!(s.words[4], "CBACB");
        assert_eq!(s.stopped_at, Some(7));
        assert_eq!(s.words.len(), 6);
    }

    #[test]
    fn letter_counts_survive_permutation() {
        let s = apply_algorithm_a_system(&words(&["A", "BC", "CA"]), 8).unwrap();
        for p in 3..s.words.len() {
            let plain = format!("{}{}{}", s.words[p - 2], s.words[p - 1], s.words[p - 3]);
            assert_eq!(scan_kgrams(&s.words[p], 1), scan_kgrams(&plain, 1));
        }
    }

    #[test]
    fn bigrams_change_once_the_middle_is_permuted() {
        let s = apply_algorithm_a_system(&words(&["A", "B", "C"]), 6).unwrap();
        let plain = format!("{}{}{}", s.words[2], s.words[3], s.words[1]);
        assert_ne!(scan_kgrams(&s.words[4], 2), scan_kgrams(&plain, 2));
    }
}
