//! Word-concatenation recurrences: each new word is the concatenation of
//! earlier words at fixed lags. Lengths and letter counts follow the same
//! additive rule, so they are tracked without building the words.

pub mod freq;
pub mod kgram;
pub mod perm;

pub use freq::{letter_frequency_limits, FrequencyLimits, LetterLimit};
pub use kgram::{kgram_frequencies, scan_kgrams, FrequencyTable, GramRow};
pub use perm::{algorithm_a_permutation, apply_algorithm_a_system, apply_permutation, AlgorithmASystem, PermutationA};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on materialized word length.
pub const MATERIALIZE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordMeta {
    #[serde(serialize_with = "ser_int")]
    pub length: BigInt,
    /// Per letter of the alphabet, in alphabet order.
    #[serde(serialize_with = "ser_ints")]
    pub counts: Vec<BigInt>,
}

fn ser_int<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl WordMeta {
    /// count/length per letter; exact, so the entries sum to 1.
    pub fn frequencies(&self) -> Vec<BigRational> {
        self.counts.iter().map(|c| BigRational::new(c.clone(), self.length.clone())).collect()
    }
}

/// u_p = u_{p−o(1)} ⋕ u_{p−o(2)} ⋕ … for p beyond the initial words, where
/// o is the concatenation order over the lag set.
#[derive(Debug, Clone)]
pub struct WordSystem {
    alphabet: Vec<char>,
    init: Vec<String>,
    order: Vec<usize>,
    words: Vec<WordMeta>,
}

fn distinct_letters(init: &[String]) -> Vec<char> {
    init.iter().flat_map(|w| w.chars()).collect::<BTreeSet<_>>().into_iter().collect()
}

impl WordSystem {
    /// Lags concatenated oldest first: u_4 = u_1 ⋕ u_2 for lags {3, 2}.
    pub fn new(init: Vec<String>, lags: &[usize]) -> Result<Self> {
        let mut order: Vec<usize> = lags.to_vec();
        order.sort_unstable_by(|a, b| b.cmp(a));
        Self::permuted(init, &order)
    }

    /// Concatenation in the given lag order: (2, 3, 1) means
    /// u_p = u_{p−2} ⋕ u_{p−3} ⋕ u_{p−1}.
    pub fn permuted(init: Vec<String>, order: &[usize]) -> Result<Self> {
        let alphabet = distinct_letters(&init);
        Self::with_alphabet(alphabet, init, order)
    }

    pub fn with_alphabet(alphabet: Vec<char>, init: Vec<String>, order: &[usize]) -> Result<Self> {
        let lags: BTreeSet<usize> = order.iter().copied().collect();
        if order.is_empty() || lags.len() != order.len() || lags.contains(&0) {
            return Err(Error::InvalidArgument("lags must be distinct and positive".into()));
        }
        let n = *lags.iter().next_back().expect("non-empty");
        if init.len() != n {
            return Err(Error::InvalidArgument(format!(
                "the largest lag is {n}, so {n} initial words are needed, got {}",
                init.len()
            )));
        }
        if init.iter().any(String::is_empty) {
            return Err(Error::InvalidArgument("initial words must be non-empty".into()));
        }
        if alphabet.iter().collect::<BTreeSet<_>>().len() != alphabet.len() {
            return Err(Error::InvalidArgument("alphabet has repeated symbols".into()));
        }
        let mut words = Vec::with_capacity(init.len());
        for w in &init {
            let mut counts = vec![BigInt::zero(); alphabet.len()];
            for ch in w.chars() {
                let i = alphabet.iter().position(|&a| a == ch).ok_or_else(|| {
                    Error::InvalidArgument(format!("letter {ch:?} is not in the alphabet"))
                })?;
                counts[i] += 1;
            }
            words.push(WordMeta { length: BigInt::from(w.chars().count()), counts });
        }
        Ok(Self { alphabet, init, order: order.to_vec(), words })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn init_words(&self) -> &[String] {
        &self.init
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Lag set in increasing order.
    pub fn lags(&self) -> Vec<usize> {
        let mut l = self.order.clone();
        l.sort_unstable();
        l
    }

    /// Number of initial words, the largest lag.
    pub fn n(&self) -> usize {
        self.init.len()
    }

    /// Words generated so far, initial words included.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Constituent indices (1-based) of u_p in concatenation order.
    pub fn parts(&self, p: usize) -> Option<Vec<usize>> {
        (p > self.n()).then(|| self.order.iter().map(|&l| p - l).collect())
    }

    /// Appends the next word by adding constituent lengths and counts.
    pub fn next_word(&mut self) -> &WordMeta {
        let p = self.words.len() + 1;
        let parts = self.parts(p).expect("beyond the initial words");
        let mut length = BigInt::zero();
        let mut counts = vec![BigInt::zero(); self.alphabet.len()];
        for q in parts {
            let w = &self.words[q - 1];
            length += &w.length;
            for (c, d) in counts.iter_mut().zip(&w.counts) {
                *c += d;
            }
        }
        self.words.push(WordMeta { length, counts });
        self.words.last().expect("just pushed")
    }

    /// Generates words until u_p exists.
    pub fn extend_to(&mut self, p: usize) {
        while self.words.len() < p {
            self.next_word();
        }
    }

    /// Metadata of u_p, 1-based.
    pub fn meta(&self, p: usize) -> Option<&WordMeta> {
        p.checked_sub(1).and_then(|i| self.words.get(i))
    }

    pub fn metas(&self) -> &[WordMeta] {
        &self.words
    }

    /// The word u_p itself, refused when longer than `cap`.
    pub fn materialize(&self, p: usize, cap: usize) -> Result<String> {
        let meta = self
            .meta(p)
            .ok_or_else(|| Error::InvalidArgument(format!("word {p} has not been generated")))?;
        if meta.length > BigInt::from(cap) {
            return Err(Error::MaterializationCap { len: meta.length.to_string(), cap });
        }
        let mut built: Vec<Option<String>> = vec![None; p];
        Ok(self.build(p, &mut built))
    }

    fn build(&self, p: usize, built: &mut Vec<Option<String>>) -> String {
        if p <= self.n() {
            return self.init[p - 1].clone();
        }
        if let Some(w) = &built[p - 1] {
            return w.clone();
        }
        let mut s = String::new();
        for q in self.parts(p).expect("beyond the initial words") {
            s.push_str(&self.build(q, built));
        }
        built[p - 1] = Some(s.clone());
        s
    }
}

/// JSON system description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordConfig {
    /// Defaults to the sorted letters of the initial words.
    #[serde(default)]
    pub alphabet: Option<Vec<char>>,
    pub init_words: Vec<String>,
    pub lags: Vec<usize>,
    /// Concatenation order over the lags; oldest first when absent.
    #[serde(default)]
    pub order: Option<Vec<usize>>,
    /// Generate with the permuted middle word instead.
    #[serde(default)]
    pub permuted_middle: bool,
}

impl WordConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad word config: {e}")))
    }

    pub fn build(&self) -> Result<WordSystem> {
        let order = match &self.order {
            Some(o) => {
                let a: BTreeSet<_> = o.iter().collect();
                let b: BTreeSet<_> = self.lags.iter().collect();
                if a != b {
                    return Err(Error::InvalidArgument("order must use exactly the lag set".into()));
                }
                o.clone()
            }
            None => {
                let mut o = self.lags.clone();
                o.sort_unstable_by(|a, b| b.cmp(a));
                o
            }
        };
        let alphabet = self.alphabet.clone().unwrap_or_else(|| distinct_letters(&self.init_words));
        WordSystem::with_alphabet(alphabet, self.init_words.clone(), &order)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrammarClass {
    ContextFreeAchievable,
    PossiblyNotContextFree,
}

/// Context-free generation is achievable when the initial words are single
/// letters and pairwise distinct.
pub fn grammar_condition_classify(init: &[String]) -> GrammarClass {
    let single = init.iter().all(|w| w.chars().count() == 1);
    let distinct = init.iter().collect::<BTreeSet<_>>().len() == init.len();
    if single && distinct {
        GrammarClass::ContextFreeAchievable
    } else {
        GrammarClass::PossiblyNotContextFree
    }
}

#[cfg(test)]
pub(crate) fn words(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generated(init: &[&str], lags: &[usize], upto: usize) -> Vec<String> {
        let mut s = WordSystem::new(words(init), lags).unwrap();
        s.extend_to(upto);
        (1..=upto).map(|p| s.materialize(p, MATERIALIZE_CAP).unwrap()).collect()
    }

    #[test]
    fn three_word_system() {
        let w = generated(&["A", "AB", "CA"], &[3, 2], 10);
        assert_eq!(
            w,
            ["A", "AB", "CA", "AAB", "ABCA", "CAAAB", "AABABCA", "ABCACAAAB", "CAAABAABABCA", "AABABCAABCACAAAB"]
        );
    }

    #[test]
    fn the_long_listed_word_is_the_eleventh() {
        let w = generated(&["A", "AB", "CA"], &[3, 2], 11);
        assert_eq!(w[10], "ABCACAAABCAAABAABABCA");
        assert_eq!(w[9].len(), 16);
    }

    #[test]
    fn fibonacci_word() {
        assert_eq!(generated(&["A", "B"], &[2, 1], 5), ["A", "B", "AB", "BAB", "ABBAB"]);
    }

    #[test]
    fn self_copy() {
        assert_eq!(generated(&["A"], &[1], 4), ["A", "A", "A", "A"]);
    }

    #[test]
    fn lengths_and_counts_match_materialized_words() {
        let mut s = WordSystem::new(words(&["A", "AB", "CA"]), &[3, 2]).unwrap();
        s.extend_to(30);
        let lens: Vec<String> = (1..=10).map(|p| s.meta(p).unwrap().length.to_string()).collect();
        assert_eq!(lens, ["1", "2", "2", "3", "4", "5", "7", "9", "12", "16"]);
        for p in 1..=30 {
            let w = s.materialize(p, MATERIALIZE_CAP).unwrap();
            let m = s.meta(p).unwrap();
            assert_eq!(m.length, BigInt::from(w.len()));
            for (i, ch) in s.alphabet().iter().enumerate() {
                assert_eq!(m.counts[i], BigInt::from(w.chars().filter(|c| c == ch).count()));
            }
        }
    }

    #[test]
    fn permuted_order() {
        let mut s = WordSystem::permuted(words(&["A", "B", "C"]), &[2, 3, 1]).unwrap();
        s.extend_to(4);
        assert_eq!(s.materialize(4, 10).unwrap(), "BAC");
        let mut plain = WordSystem::new(words(&["A", "AB", "CA"]), &[3, 2]).unwrap();
        let mut swapped = WordSystem::permuted(words(&["A", "AB", "CA"]), &[2, 3]).unwrap();
        plain.extend_to(4);
        swapped.extend_to(4);
        assert_ne!(plain.materialize(4, 10).unwrap(), swapped.materialize(4, 10).unwrap());
        let mut asc = WordSystem::permuted(words(&["A", "AB", "CA"]), &[3, 2]).unwrap();
        asc.extend_to(8);
        assert_eq!(asc.materialize(8, 100).unwrap(), "ABCACAAAB");
    }

    #[test]
    fn cap_is_enforced() {
        let mut s = WordSystem::new(words(&["A", "B"]), &[2, 1]).unwrap();
        s.extend_to(40);
        assert!(matches!(s.materialize(40, 1000), Err(Error::MaterializationCap { .. })));
        assert!(s.meta(40).is_some());
    }

    #[test]
    fn grammar_conditions() {
        use GrammarClass::*;
        assert_eq!(grammar_condition_classify(&words(&["A", "B", "C"])), ContextFreeAchievable);
        assert_eq!(grammar_condition_classify(&words(&["A", "AB", "CA"])), PossiblyNotContextFree);
        assert_eq!(grammar_condition_classify(&words(&["A", "A"])), PossiblyNotContextFree);
    }

    #[test]
    fn config_round_trip() {
        let c = WordConfig::from_json(r#"{"init_words":["A","AB","CA"],"lags":[3,2]}"#).unwrap();
        let mut s = c.build().unwrap();
        s.extend_to(6);
        assert_eq!(s.materialize(6, 100).unwrap(), "CAAAB");
        assert_eq!(s.alphabet(), ['A', 'B', 'C']);
        let bad = WordConfig::from_json(r#"{"init_words":["A","B"],"lags":[2,1],"order":[2,3]}"#).unwrap();
        assert!(bad.build().is_err());
    }

    #[test]
    fn invalid_systems() {
        assert!(WordSystem::new(words(&["A", "B"]), &[3, 1]).is_err());
        assert!(WordSystem::new(words(&["A", ""]), &[2, 1]).is_err());
        assert!(WordSystem::with_alphabet(vec!['A'], words(&["A", "B"]), &[2, 1]).is_err());
    }
}
