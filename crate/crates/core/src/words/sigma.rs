//! The substitutions `τ_h : 0 ↦ 0^{h+1}1, 1 ↦ 0^h1`, their compositions,
//! and the inverse operation of peeling one substitution off a word.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{EpWord, WordParseError};

/// Applies `τ_h` letter by letter.
pub fn tau_apply(h: u32, w: &[u8]) -> Vec<u8> {
    let h = h as usize;
    let mut out = Vec::with_capacity(w.len() * (h + 2));
    for &c in w {
        debug_assert!(c <= 1, "substitutions act on binary words");
        let zeros = if c == 0 { h + 1 } else { h };
        out.extend(std::iter::repeat_n(0, zeros));
        out.push(1);
    }
    out
}

/// A composition `τ_{h_0} ∘ τ_{h_1} ∘ … ∘ τ_{h_{n-1}}`, stored without
/// trailing `τ_0` factors. The empty composition is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Sigma {
    indices: Vec<u32>,
}

impl Sigma {
    pub fn identity() -> Sigma {
        Sigma::default()
    }

    /// Builds a composition; trailing zeros are dropped since `τ_0` fixes `1̄` and `01̄`.
    pub fn new(mut indices: Vec<u32>) -> Sigma {
        while indices.last() == Some(&0) {
            indices.pop();
        }
        Sigma { indices }
    }

    pub fn tau(h: u32) -> Sigma {
        Sigma::new(vec![h])
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn is_identity(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `Σ (h_k + 1)`; there are `2^{w-2}` canonical compositions of weight `w ≥ 2`.
    pub fn weight(&self) -> u32 {
        self.indices.iter().map(|h| h + 1).sum()
    }

    /// `τ_h ∘ self`.
    pub fn prepend(&self, h: u32) -> Sigma {
        let mut indices = Vec::with_capacity(self.indices.len() + 1);
        indices.push(h);
        indices.extend_from_slice(&self.indices);
        if self.indices.is_empty() {
            Sigma::new(indices)
        } else {
            Sigma { indices }
        }
    }

    pub fn apply(&self, w: &[u8]) -> Vec<u8> {
        self.indices.iter().rev().fold(w.to_vec(), |acc, &h| tau_apply(h, &acc))
    }

    pub fn image_of(&self, letter: u8) -> Vec<u8> {
        self.apply(&[letter])
    }

    /// Recovers `σ` from the word `σ(1)`, or `None` if no composition maps 1 to it.
    pub fn from_image_of_one(w: &[u8]) -> Option<Sigma> {
        let mut indices = Vec::new();
        let mut cur = w.to_vec();
        while cur != [1] {
            if cur.last() != Some(&1) {
                return None;
            }
            let d = desubstitute(&cur).ok()?;
            indices.push(d.h);
            cur = d.preimage;
        }
        Some(Sigma::new(indices))
    }

    /// All canonical compositions of weight at most `max_weight`, ordered by
    /// `|σ(0)|` and then by index sequence.
    pub fn enumerate(max_weight: u32) -> Vec<Sigma> {
        fn grow(inner: &Sigma, budget: u32, out: &mut Vec<Sigma>) {
            for h in 0..budget {
                let s = inner.prepend(h);
                let rest = budget - h - 1;
                out.push(s.clone());
                grow(&s, rest, out);
            }
        }
        let mut out = vec![Sigma::identity()];
        for h in 1..max_weight {
            let s = Sigma::tau(h);
            out.push(s.clone());
            grow(&s, max_weight - h - 1, &mut out);
        }
        out.sort_by_cached_key(|s| (s.image_of(0).len(), s.indices.clone()));
        out
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|h| h.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl From<Sigma> for String {
    fn from(s: Sigma) -> String {
        s.to_string()
    }
}

impl FromStr for Sigma {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Sigma, WordParseError> {
        parse_indices(s).map(Sigma::new)
    }
}

impl TryFrom<String> for Sigma {
    type Error = WordParseError;

    fn try_from(s: String) -> Result<Sigma, WordParseError> {
        s.parse()
    }
}

fn parse_indices(s: &str) -> Result<Vec<u32>, WordParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| WordParseError::BadIndex(t.to_string())))
        .collect()
}

/// `σ(1̄)`.
pub fn sigma_one_bar(sigma: &Sigma) -> EpWord {
    EpWord::periodic(sigma.image_of(1))
}

/// `σ(01̄)`, via the rotation identity: if `σ(1) = 0w1` then `σ(01̄) = 0·(w01)^∞`.
pub fn sigma_zero_one_bar(sigma: &Sigma) -> EpWord {
    let one = sigma.image_of(1);
    if one == [1] {
        return EpWord::new(vec![0], vec![1]);
    }
    let mut period = one[1..one.len() - 1].to_vec();
    period.extend_from_slice(&[0, 1]);
    EpWord::new(vec![0], period)
}

/// `σ(01̄) = σ(0)·σ(1)^∞` computed by direct substitution.
pub fn sigma_zero_one_bar_direct(sigma: &Sigma) -> EpWord {
    EpWord::new(sigma.image_of(0), sigma.image_of(1))
}

/// An eventually periodic sequence of substitution indices `(σ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SAdicSpec {
    prefix: Vec<u32>,
    tail: Vec<u32>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SAdicError {
    #[error("periodic part of the index sequence is empty")]
    EmptyTail,
    #[error("periodic part must contain a nonzero index")]
    NotPrimitive,
    #[error(transparent)]
    Parse(#[from] WordParseError),
}

impl SAdicSpec {
    pub fn new(prefix: Vec<u32>, tail: Vec<u32>) -> Result<SAdicSpec, SAdicError> {
        if tail.is_empty() {
            return Err(SAdicError::EmptyTail);
        }
        if tail.iter().all(|&h| h == 0) {
            return Err(SAdicError::NotPrimitive);
        }
        Ok(SAdicSpec { prefix, tail })
    }

    /// The constant sequence `h, h, h, …`.
    pub fn constant(h: u32) -> Result<SAdicSpec, SAdicError> {
        SAdicSpec::new(Vec::new(), vec![h])
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn tail(&self) -> &[u32] {
        &self.tail
    }

    pub fn index(&self, k: usize) -> u32 {
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.tail[(k - self.prefix.len()) % self.tail.len()]
        }
    }

    /// `σ_0 ∘ … ∘ σ_{k-1}` in canonical form (its action on `1̄` and `01̄`).
    pub fn truncation(&self, k: usize) -> Sigma {
        Sigma::new((0..k).map(|i| self.index(i)).collect())
    }
}

impl fmt::Display for SAdicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}({})", join(&self.prefix), join(&self.tail))
    }
}

impl FromStr for SAdicSpec {
    type Err = SAdicError;

    /// Parses `prefix(tail)` with comma-separated indices, e.g. `2(1)` or `(1,2)`.
    fn from_str(s: &str) -> Result<SAdicSpec, SAdicError> {
        let s = s.trim();
        let missing = || SAdicError::Parse(WordParseError::MissingPeriod(s.to_string()));
        let open = s.find('(').ok_or_else(missing)?;
        if !s.ends_with(')') {
            return Err(missing());
        }
        let prefix = parse_indices(s[..open].trim_end_matches(','))?;
        let tail = parse_indices(&s[open + 1..s.len() - 1])?;
        SAdicSpec::new(prefix, tail)
    }
}

/// First `n` letters of the limit word of `spec`.
pub fn limit_word_prefix(spec: &SAdicSpec, n: usize) -> Vec<u8> {
    // Trailing τ_0 factors matter here (τ_0(0) = 01), so no canonicalization.
    let mut k = 1;
    loop {
        let w = (0..k).rev().fold(vec![0], |acc, i| tau_apply(spec.index(i), &acc));
        if w.len() >= n {
            return w[..n].to_vec();
        }
        k += 1;
    }
}

/// Result of peeling one substitution off a word: `word ≈ τ_h(preimage)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Desubstitution {
    pub h: u32,
    pub preimage: Vec<u8>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesubstituteError {
    #[error("word must start with 0 and contain a 1")]
    Precondition,
    #[error("block ending at position {0} matches neither substitution image")]
    NotDesubstitutable(usize),
}

fn block_letter(zeros: usize, h: usize) -> Option<u8> {
    if zeros == h + 1 {
        Some(0)
    } else if zeros == h {
        Some(1)
    } else {
        None
    }
}

/// Writes a finite prefix as `τ_h(preimage)` followed by an incomplete block.
///
/// A preimage consisting only of zeros is reported one level up: `(τ_h(0))^k = τ_{h+1}(1)^k`.
pub fn desubstitute(prefix: &[u8]) -> Result<Desubstitution, DesubstituteError> {
    let first_one = prefix.iter().position(|&c| c == 1).ok_or(DesubstituteError::Precondition)?;
    if first_one == 0 {
        return Err(DesubstituteError::Precondition);
    }
    let h = first_one - 1;
    let mut preimage = Vec::new();
    let mut zeros = 0;
    for (i, &c) in prefix.iter().enumerate() {
        if c == 0 {
            zeros += 1;
            if zeros > h + 1 {
                return Err(DesubstituteError::NotDesubstitutable(i));
            }
        } else {
            preimage.push(block_letter(zeros, h).ok_or(DesubstituteError::NotDesubstitutable(i))?);
            zeros = 0;
        }
    }
    if preimage.iter().all(|&c| c == 0) {
        return Ok(Desubstitution { h: h as u32 + 1, preimage: vec![1; preimage.len()] });
    }
    Ok(Desubstitution { h: h as u32, preimage })
}

/// Exact desubstitution of an eventually periodic word.
pub fn desubstitute_ep(u: &EpWord) -> Result<(u32, EpWord), DesubstituteError> {
    let pre_len = u.pre().len();
    let p = u.period().len();
    let Some(first_one_in_period) = u.period().iter().position(|&c| c == 1) else {
        return Err(DesubstituteError::Precondition);
    };
    if u.letter(0) != 0 {
        return Err(DesubstituteError::Precondition);
    }
    let cut = pre_len + first_one_in_period + 1;
    let head = u.prefix(cut);
    let mut tail = u.prefix(cut + p);
    tail.drain(..cut);
    let h = head.iter().position(|&c| c == 1).unwrap() - 1;
    let parse = |w: &[u8], offset: usize| -> Result<Vec<u8>, DesubstituteError> {
        let mut out = Vec::new();
        let mut zeros = 0;
        for (i, &c) in w.iter().enumerate() {
            if c == 0 {
                zeros += 1;
            } else {
                out.push(block_letter(zeros, h).ok_or(DesubstituteError::NotDesubstitutable(offset + i))?);
                zeros = 0;
            }
        }
        Ok(out)
    };
    let pre = parse(&head, 0)?;
    let period = parse(&tail, cut)?;
    let pre_image = EpWord::new(pre, period);
    if pre_image == EpWord::constant(0) {
        return Ok((h as u32 + 1, EpWord::constant(1)));
    }
    Ok((h as u32, pre_image))
}
