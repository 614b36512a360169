//! Exact k-gram counts, maintained through concatenation from each word's
//! counts and its (k−1)-letter prefix and suffix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::WordSystem;
use crate::error::{Error, Result};

pub type GramCounts = BTreeMap<String, BigInt>;

/// Counts of every k-gram of `word` by sliding a window.
pub fn scan_kgrams(word: &str, k: usize) -> GramCounts {
    let chars: Vec<char> = word.chars().collect();
    let mut out = GramCounts::new();
    if k == 0 || chars.len() < k {
        return out;
    }
    for w in chars.windows(k) {
        *out.entry(w.iter().collect()).or_insert_with(BigInt::zero) += 1;
    }
    out
}

#[derive(Debug, Clone)]
struct GramState {
    counts: GramCounts,
    /// First and last min(k−1, |w|) letters.
    prefix: String,
    suffix: String,
}

fn first_chars(s: &str, n: usize) -> String {
    s.chars().take(n).collect()
}

fn last_chars(s: &str, n: usize) -> String {
    let len = s.chars().count();
    s.chars().skip(len.saturating_sub(n)).collect()
}

impl GramState {
    fn of_word(w: &str, k: usize) -> Self {
        Self { counts: scan_kgrams(w, k), prefix: first_chars(w, k - 1), suffix: last_chars(w, k - 1) }
    }

    /// State of `self ⋕ other`. Every k-gram of suffix ⋕ prefix straddles
    /// the junction, since both fragments are shorter than k.
    fn concat(&self, other: &Self, k: usize) -> Self {
        let mut counts = self.counts.clone();
        for (g, c) in &other.counts {
            *counts.entry(g.clone()).or_insert_with(BigInt::zero) += c;
        }
        let joint = format!("{}{}", self.suffix, other.prefix);
        for (g, c) in scan_kgrams(&joint, k) {
            *counts.entry(g).or_insert_with(BigInt::zero) += c;
        }
        // A fragment shorter than k−1 is the whole word.
        let prefix = first_chars(&format!("{}{}", self.prefix, other.prefix), k - 1);
        let suffix = last_chars(&format!("{}{}", self.suffix, other.suffix), k - 1);
        Self { counts, prefix, suffix }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GramRow {
    pub p: usize,
    #[serde(serialize_with = "ser_counts")]
    pub counts: GramCounts,
    /// |u_p| − k + 1, or 0 for shorter words.
    #[serde(serialize_with = "ser_int")]
    pub total: BigInt,
}

fn ser_counts<S: serde::Serializer>(m: &GramCounts, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(g, c)| (g, c.to_string())))
}

fn ser_int<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl GramRow {
    pub fn frequency(&self, gram: &str) -> Option<BigRational> {
        if self.total.is_zero() {
            return None;
        }
        let c = self.counts.get(gram).cloned().unwrap_or_default();
        Some(BigRational::new(c, self.total.clone()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FrequencyTable {
    pub k: usize,
    pub rows: Vec<GramRow>,
}

impl FrequencyTable {
    pub fn row(&self, p: usize) -> Option<&GramRow> {
        p.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    /// CSV with header `p,gram,count,frequency`; frequency in lowest terms.
    pub fn to_csv(&self) -> Result<String> {
        let header = ["p", "gram", "count", "frequency"].map(String::from).to_vec();
        let rows = self.rows.iter().flat_map(|r| {
            r.counts.iter().map(move |(g, c)| {
                let f = BigRational::new(c.clone(), r.total.clone());
                vec![r.p.to_string(), g.clone(), c.to_string(), f.to_string()]
            })
        });
        crate::report::csv_string(std::iter::once(header).chain(rows))
    }
}

/// k-gram counts of u_1..=u_{p_max}, built incrementally.
pub fn kgram_frequencies(system: &WordSystem, k: usize, p_max: usize) -> Result<FrequencyTable> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut states: Vec<GramState> = system.init_words().iter().map(|w| GramState::of_word(w, k)).collect();
    for p in states.len() + 1..=p_max {
        let parts = system.parts(p).expect("beyond the initial words");
        let mut acc = states[parts[0] - 1].clone();
        for &q in &parts[1..] {
            acc = acc.concat(&states[q - 1], k);
        }
        states.push(acc);
    }
    let mut sys = system.clone();
    sys.extend_to(p_max);
    let rows = states
        .into_iter()
        .take(p_max)
        .enumerate()
        .map(|(i, st)| {
            let len = &sys.meta(i + 1).expect("extended").length;
            let total = if *len >= BigInt::from(k) { len - k + 1 } else { BigInt::zero() };
            GramRow { p: i + 1, counts: st.counts, total }
        })
        .collect();
    Ok(FrequencyTable { k, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{words, MATERIALIZE_CAP};

    fn abc() -> WordSystem {
        WordSystem::new(words(&["A", "AB", "CA"]), &[3, 2]).unwrap()
    }

    #[test]
    fn bigrams_of_the_sixth_word() {
        let t = kgram_frequencies(&abc(), 2, 6).unwrap();
        let row = t.row(6).unwrap();
        let got: Vec<(String, String)> = row.counts.iter().map(|(g, c)| (g.clone(), c.to_string())).collect();
        assert_eq!(got, [("AA".into(), "2".into()), ("AB".into(), "1".into()), ("CA".into(), "1".into())]);
        assert_eq!(row.total, BigInt::from(4));
    }

    #[test]
    fn incremental_equals_scan() {
        let systems = [
            abc(),
            WordSystem::new(words(&["A", "B"]), &[2, 1]).unwrap(),
            WordSystem::permuted(words(&["AB", "C", "BCA"]), &[2, 3, 1]).unwrap(),
            WordSystem::new(words(&["A", "B", "C", "D"]), &[4, 1]).unwrap(),
        ];
        for sys in systems {
            let mut full = sys.clone();
            full.extend_to(30);
            for k in 1..=4 {
                let t = kgram_frequencies(&sys, k, 30).unwrap();
                for p in 1..=30 {
                    let Ok(w) = full.materialize(p, MATERIALIZE_CAP) else { continue };
                    assert_eq!(t.row(p).unwrap().counts, scan_kgrams(&w, k), "k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn unigrams_are_letter_counts() {
        let mut s = abc();
        s.extend_to(25);
        let t = kgram_frequencies(&s, 1, 25).unwrap();
        for p in 1..=25 {
            let m = s.meta(p).unwrap();
            for (i, ch) in s.alphabet().iter().enumerate() {
                let c = t.row(p).unwrap().counts.get(&ch.to_string()).cloned().unwrap_or_default();
                assert_eq!(c, m.counts[i]);
            }
        }
    }

    #[test]
    fn totals_and_csv() {
        let t = kgram_frequencies(&abc(), 3, 8).unwrap();
        assert_eq!(t.row(1).unwrap().total, BigInt::zero());
        for r in &t.rows {
            let sum: BigInt = r.counts.values().sum();
            assert_eq!(sum, r.total);
        }
        let csv = t.to_csv().unwrap();
        assert!(csv.starts_with("p,gram,count,frequency\n"));
        assert!(csv.contains("4,AAB,1,1\n"));
    }

    #[test]
    fn k_zero_is_refused() {
        assert!(kgram_frequencies(&abc(), 0, 5).is_err());
    }
}
