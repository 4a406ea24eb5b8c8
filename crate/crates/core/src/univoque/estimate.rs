//! Numeric brackets for `𝒢(A)`.
//!
//! A base with a certified nontrivial unique word bounds `𝒢(A)` from above;
//! a base where only trivial words survive bounds it from below.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::{certify_trivial, q_of, Alphabet, Certificate, CertifyOptions, UnivoqueError};
use crate::golden::Evaluator;
use crate::numerics::Bracket;
use crate::words::EpWord;

#[derive(Clone, Copy, Debug)]
pub struct EstimateOptions {
    /// Initial bases spread evenly over `(1, q(A)]`.
    pub samples: usize,
    /// Width at which the bisections stop.
    pub tol: f64,
    pub certify: CertifyOptions,
}

impl Default for EstimateOptions {
    fn default() -> EstimateOptions {
        EstimateOptions {
            samples: 64,
            tol: 1e-6,
            certify: CertifyOptions { max_iter: 120, ..CertifyOptions::default() },
        }
    }
}

impl EstimateOptions {
    pub fn with_period_max(mut self, period_max: usize) -> EstimateOptions {
        self.certify.period_max = period_max;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GEstimate {
    pub alphabet: Alphabet,
    pub q: String,
    /// Largest base found where only trivial words are unique.
    pub lower: Option<Bracket>,
    /// Smallest base found with a nontrivial unique word, or `q(A)`.
    pub upper: Bracket,
    /// The word behind `upper`, absent when `upper = q(A)`.
    pub witness: Option<String>,
    pub probes: usize,
}

#[derive(Clone, Debug)]
enum Probe {
    Trivial,
    Witness(EpWord),
    Unknown,
}

struct Prober<'a> {
    alphabet: &'a Alphabet,
    opts: CertifyOptions,
    cache: BTreeMap<BigRational, Probe>,
}

impl Prober<'_> {
    fn probe(&mut self, beta: &BigRational) -> Probe {
        if let Some(p) = self.cache.get(beta) {
            return p.clone();
        }
        let p = match certify_trivial(self.alphabet, beta, self.opts) {
            Ok(Certificate::Certified { .. }) => Probe::Trivial,
            Ok(Certificate::Witness { word, .. }) => Probe::Witness(word),
            _ => Probe::Unknown,
        };
        self.cache.insert(beta.clone(), p.clone());
        p
    }
}

fn to_f64(q: &BigRational) -> f64 {
    super::rational_to_f64(q)
}

/// Brackets `𝒢(A)` by probing rational bases with [`certify_trivial`].
pub fn estimate_g(a: &Alphabet, opts: &EstimateOptions) -> GEstimate {
    let q = q_of(a);
    let one = BigRational::one();
    let n = opts.samples.max(1);
    let step = (&q - &one) / BigRational::from_integer(BigInt::from(n));
    let betas: Vec<BigRational> = (1..=n).map(|k| &one + &step * BigRational::from_integer(BigInt::from(k))).collect();
    let mut prober = Prober { alphabet: a, opts: opts.certify, cache: BTreeMap::new() };
    let status: Vec<Probe> = betas.iter().map(|b| prober.probe(b)).collect();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));

    let first_witness = status.iter().position(|p| matches!(p, Probe::Witness(_)));
    let (upper, witness) = match first_witness {
        Some(k) => {
            let mut hi = betas[k].clone();
            let mut word = match &status[k] {
                Probe::Witness(w) => w.clone(),
                _ => unreachable!(),
            };
            let mut lo = if k == 0 { one.clone() } else { betas[k - 1].clone() };
            while to_f64(&(&hi - &lo)) > opts.tol {
                let mid = (&lo + &hi) * &half;
                match prober.probe(&mid) {
                    Probe::Witness(w) => {
                        hi = mid;
                        word = w;
                    }
                    _ => lo = mid,
                }
            }
            (hi, Some(a.format_word(&word)))
        }
        None => (q.clone(), None),
    };

    let end = first_witness.unwrap_or(n);
    let last_trivial = status[..end].iter().rposition(|p| matches!(p, Probe::Trivial));
    let lower = last_trivial.map(|i| {
        let mut lo = betas[i].clone();
        let mut hi = if i + 1 < n { betas[i + 1].clone().min(upper.clone()) } else { upper.clone() };
        while to_f64(&(&hi - &lo)) > opts.tol {
            let mid = (&lo + &hi) * &half;
            match prober.probe(&mid) {
                Probe::Trivial => lo = mid,
                _ => hi = mid,
            }
        }
        lo
    });

    GEstimate {
        alphabet: a.clone(),
        q: q.to_string(),
        lower: lower.as_ref().map(Bracket::from_rational),
        upper: Bracket::from_rational(&upper),
        witness,
        probes: prober.cache.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContinuityRow {
    /// The perturbed alphabet, normalised to `a_0 = 0`, `a_d = 1`.
    pub alphabet: Alphabet,
    pub estimate: GEstimate,
    /// The certified ternary value when the alphabet has three digits.
    pub golden: Option<Bracket>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContinuityReport {
    pub rows: Vec<ContinuityRow>,
    /// Largest distance between the brackets of neighbouring rows.
    pub max_gap: f64,
    pub jump_threshold: f64,
    /// Rows `i` whose bracket is farther than the threshold from row `i + 1`.
    pub flagged: Vec<usize>,
}

fn bracket_gap(a: &GEstimate, b: &GEstimate) -> f64 {
    let lo = |e: &GEstimate| e.lower.map_or(1.0, |l| l.lo().to_f64());
    let (alo, ahi) = (lo(a), a.upper.hi().to_f64());
    let (blo, bhi) = (lo(b), b.upper.hi().to_f64());
    (blo - ahi).max(alo - bhi).max(0.0)
}

/// Estimates `𝒢` along a family of alphabets obtained by shifting the digit
/// at index `digit` of `base` by each offset.
pub fn continuity_experiment(
    base: &Alphabet,
    digit: usize,
    offsets: &[BigRational],
    opts: &EstimateOptions,
    jump_threshold: f64,
) -> Result<ContinuityReport, UnivoqueError> {
    let ev = Evaluator::default();
    let mut rows = Vec::with_capacity(offsets.len());
    for off in offsets {
        let mut digits = base.digits().to_vec();
        digits[digit] += off;
        let alphabet = Alphabet::new(digits)?.normalized();
        let estimate = estimate_g(&alphabet, opts);
        let golden = match alphabet.digits() {
            [x, y, z] => ev.golden_alphabet(x, y, z).ok().map(|g| g.value),
            _ => None,
        };
        rows.push(ContinuityRow { alphabet, estimate, golden });
    }
    let gaps: Vec<f64> = rows.windows(2).map(|w| bracket_gap(&w[0].estimate, &w[1].estimate)).collect();
    let flagged = gaps.iter().enumerate().filter(|(_, &g)| g > jump_threshold).map(|(i, _)| i).collect();
    Ok(ContinuityReport { rows, max_gap: gaps.iter().copied().fold(0.0, f64::max), jump_threshold, flagged })
}
