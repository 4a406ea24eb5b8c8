//! Words over small digit sets.
//!
//! Finite words are plain `Vec<u8>` / `&[u8]` slices; [`EpWord`] is an
//! eventually periodic infinite word kept in canonical form so that
//! equality and lexicographic comparison are decidable. The substitutions
//! `τ_h` and their compositions live in [`sigma`], the lexicographic
//! characterization of the limit-word set in [`lex`], and prefix-language
//! enumeration in [`prefixes`].

pub mod lex;
pub mod prefixes;
pub mod sigma;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lex::{check_lex_bounds, check_lex_bounds_ep, Violation, ViolationKind};
pub use prefixes::{enumerate_prefixes, is_limit_word_prefix};
pub use sigma::{
    desubstitute, desubstitute_ep, limit_word_prefix, sigma_one_bar, sigma_zero_one_bar, sigma_zero_one_bar_direct,
    tau_apply, DesubstituteError, Desubstitution, SAdicError, SAdicSpec, Sigma,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordParseError {
    #[error("invalid letter {0:?}")]
    BadLetter(char),
    #[error("missing or empty period in {0:?}")]
    MissingPeriod(String),
    #[error("invalid substitution index {0:?}")]
    BadIndex(String),
}

/// Parses a finite word written as a string of digits.
pub fn parse_word(s: &str) -> Result<Vec<u8>, WordParseError> {
    s.chars()
        .map(|c| c.to_digit(10).map(|d| d as u8).ok_or(WordParseError::BadLetter(c)))
        .collect()
}

pub fn format_word(w: &[u8]) -> String {
    w.iter().map(|d| char::from(b'0' + d)).collect()
}

/// An eventually periodic infinite word `pre · period^∞` in canonical form:
/// the period is primitive and the preperiod is as short as possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EpWord {
    pre: Vec<u8>,
    period: Vec<u8>,
}

fn primitive_root_len(w: &[u8]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| w[i] == w[i - d]))
        .unwrap_or(n)
}

impl EpWord {
    /// Builds the canonical form of `pre · period^∞`; panics on an empty period.
    pub fn new(mut pre: Vec<u8>, mut period: Vec<u8>) -> EpWord {
        assert!(!period.is_empty(), "eventually periodic word needs a nonempty period");
        let root = primitive_root_len(&period);
        period.truncate(root);
        while let Some(&last) = pre.last() {
            if last != *period.last().unwrap() {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        EpWord { pre, period }
    }

    pub fn periodic(period: Vec<u8>) -> EpWord {
        EpWord::new(Vec::new(), period)
    }

    pub fn constant(letter: u8) -> EpWord {
        EpWord::new(Vec::new(), vec![letter])
    }

    pub fn pre(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn letter(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.letter(i)).collect()
    }

    /// The suffix starting at position `k`.
    pub fn tail(&self, k: usize) -> EpWord {
        if k <= self.pre.len() {
            EpWord::new(self.pre[k..].to_vec(), self.period.clone())
        } else {
            let r = (k - self.pre.len()) % self.period.len();
            let mut p = self.period.clone();
            p.rotate_left(r);
            EpWord::new(Vec::new(), p)
        }
    }

    /// Prepends a finite word.
    pub fn prepend(&self, w: &[u8]) -> EpWord {
        let mut pre = w.to_vec();
        pre.extend_from_slice(&self.pre);
        EpWord::new(pre, self.period.clone())
    }

    /// Number of distinct suffixes (positions `0..pre+period`).
    pub fn distinct_tails(&self) -> usize {
        self.pre.len() + self.period.len()
    }

    pub fn is_constant(&self) -> bool {
        self.pre.is_empty() && self.period.len() == 1
    }

    /// Letters needed to decide comparison with `other`.
    fn horizon(&self, other: &EpWord) -> usize {
        self.pre.len().max(other.pre.len()) + self.period.len().lcm(&other.period.len())
    }

    pub fn letters(&self) -> impl Iterator<Item = u8> + '_ {
        (0..).map(move |i| self.letter(i))
    }
}

impl Ord for EpWord {
    /// Lexicographic order of the infinite words.
    fn cmp(&self, other: &EpWord) -> Ordering {
        let n = self.horizon(other);
        for i in 0..n {
            match self.letter(i).cmp(&other.letter(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for EpWord {
    fn partial_cmp(&self, other: &EpWord) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", format_word(&self.pre), format_word(&self.period))
    }
}

impl FromStr for EpWord {
    type Err = WordParseError;

    /// Parses `pre(period)`, e.g. `0(1)` or `(01)`.
    fn from_str(s: &str) -> Result<EpWord, WordParseError> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| WordParseError::MissingPeriod(s.to_string()))?;
        let close = s.rfind(')').filter(|&c| c == s.len() - 1 && c > open + 1);
        let close = close.ok_or_else(|| WordParseError::MissingPeriod(s.to_string()))?;
        let pre = parse_word(&s[..open])?;
        let period = parse_word(&s[open + 1..close])?;
        Ok(EpWord::new(pre, period))
    }
}
