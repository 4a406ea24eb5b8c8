//! Expansions over arbitrary finite alphabets.
//!
//! A sequence `u ∈ A^ℕ` is a unique expansion in base `β` exactly when every
//! tail value `Σ_k u_{i+k} β^{-k}` falls in the uniqueness region `E_{u_i}`.
//! Words over an alphabet are stored as [`EpWord`]s whose letters are digit
//! indices into the alphabet.

mod certify;
mod estimate;
mod expansions;
mod interval_set;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use certify::{certify_trivial, Certificate, Certifier, CertifyOptions};
pub use estimate::{continuity_experiment, estimate_g, ContinuityReport, ContinuityRow, EstimateOptions, GEstimate};
pub use expansions::{enumerate_expansions, BranchReport, EnumerateOptions};
pub use interval_set::IntervalSet;

use crate::numerics::Bracket;
use crate::words::EpWord;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UnivoqueError {
    #[error("cannot parse digit {0:?}")]
    BadDigit(String),
    #[error("an alphabet needs at least two digits")]
    TooFewDigits,
    #[error("alphabet digits must be distinct")]
    RepeatedDigit,
    #[error("base {beta} outside (1, {q}]")]
    BaseOutOfRange { beta: String, q: String },
    #[error("x = {0} has no expansion in this base")]
    XOutOfRange(Bracket),
}

/// Parses an integer, a fraction `p/q` or a finite decimal (optionally with
/// an exponent, `1.25e-3`) exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, UnivoqueError> {
    let t = s.trim();
    let bad = || UnivoqueError::BadDigit(s.to_string());
    if t.contains('/') {
        let r = BigRational::from_str(t).map_err(|_| bad())?;
        return Ok(r);
    }
    let (t, exp) = match t.split_once(['e', 'E']) {
        Some((mantissa, e)) => (mantissa, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let scale = BigRational::from_integer(num_traits::pow(BigInt::from(10), exp.unsigned_abs() as usize));
    let scale = if exp < 0 { scale.recip() } else { scale };
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(num, den) * scale;
    Ok(if neg { -r } else { r })
}

/// Sorted, distinct rational digits `a_0 < … < a_d`, `d ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    digits: Vec<BigRational>,
}

impl Alphabet {
    pub fn new(mut digits: Vec<BigRational>) -> Result<Alphabet, UnivoqueError> {
        digits.sort();
        if digits.windows(2).any(|w| w[0] == w[1]) {
            return Err(UnivoqueError::RepeatedDigit);
        }
        if digits.len() < 2 {
            return Err(UnivoqueError::TooFewDigits);
        }
        Ok(Alphabet { digits })
    }

    /// `{0, 1, m}`; `m` must differ from 0 and 1.
    pub fn ternary(m: &BigRational) -> Result<Alphabet, UnivoqueError> {
        Alphabet::new(vec![BigRational::zero(), BigRational::one(), m.clone()])
    }

    pub fn digits(&self) -> &[BigRational] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Index of the largest digit.
    pub fn top(&self) -> usize {
        self.digits.len() - 1
    }

    pub fn to_brackets(&self) -> Vec<Bracket> {
        self.digits.iter().map(Bracket::from_rational).collect()
    }

    /// The affinely equivalent alphabet with `a_0 = 0` and `a_d = 1`.
    pub fn normalized(&self) -> Alphabet {
        let a0 = &self.digits[0];
        let span = &self.digits[self.top()] - a0;
        Alphabet { digits: self.digits.iter().map(|a| (a - a0) / &span).collect() }
    }

    /// Renders a word of digit indices as `pre(period)` with comma-separated digits.
    pub fn format_word(&self, u: &EpWord) -> String {
        let join = |w: &[u8]| w.iter().map(|&i| self.digits[i as usize].to_string()).collect::<Vec<_>>().join(",");
        format!("{}({})", join(u.pre()), join(u.period()))
    }
}

impl FromStr for Alphabet {
    type Err = UnivoqueError;

    /// Comma-separated digits: `0,1,4,5`, `0,1,7/5` or `0,1,1.4`.
    fn from_str(s: &str) -> Result<Alphabet, UnivoqueError> {
        let digits = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
        Alphabet::new(digits)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.digits.iter().map(|d| d.to_string()))
    }
}

/// `q(A) = 1 + (a_d - a_0) / max_j (a_{j+1} - a_j)`.
pub fn q_of(a: &Alphabet) -> BigRational {
    let d = a.digits();
    let gap = d.windows(2).map(|w| &w[1] - &w[0]).max().expect("two digits");
    BigRational::one() + (&d[d.len() - 1] - &d[0]) / gap
}

/// Arithmetic shared by exact rationals and brackets.
pub trait Scalar: Clone + fmt::Debug {
    fn from_rational(q: &BigRational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// `None` when the order cannot be certified.
    fn compare(&self, o: &Self) -> Option<Ordering>;
    fn label(&self) -> String;

    fn unit() -> Self {
        Self::from_rational(&BigRational::one())
    }
}

impl Scalar for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn compare(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
    fn label(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Bracket {
    fn from_rational(q: &BigRational) -> Self {
        Bracket::from_rational(q)
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn div(&self, o: &Self) -> Self {
        *self / *o
    }
    fn compare(&self, o: &Self) -> Option<Ordering> {
        Bracket::compare(*self, *o)
    }
    fn label(&self) -> String {
        self.to_string()
    }
}

/// An interval with open or closed ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl<T: Scalar> Interval<T> {
    /// Three-valued membership.
    pub fn contains(&self, x: &T) -> Option<bool> {
        let above = x.compare(&self.lo).map(|o| match o {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        });
        let below = x.compare(&self.hi).map(|o| match o {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        });
        match (above, below) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        }
    }
}

impl<T: Scalar> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo.label(), self.hi.label())
    }
}

impl<T: Scalar> Serialize for Interval<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Interval", 4)?;
        st.serialize_field("lo", &self.lo.label())?;
        st.serialize_field("hi", &self.hi.label())?;
        st.serialize_field("loClosed", &self.lo_closed)?;
        st.serialize_field("hiClosed", &self.hi_closed)?;
        st.end()
    }
}

/// The regions `E_{a_j}` in a fixed base, indexed like the digits.
pub type Regions<T> = Vec<Interval<T>>;

/// Regions for digits and base given in any [`Scalar`].
pub fn regions_of<T: Scalar>(digits: &[T], beta: &T) -> Regions<T> {
    let d = digits.len() - 1;
    let bm1 = beta.sub(&T::unit());
    let low = digits[0].div(&bm1);
    let high = digits[d].div(&bm1);
    (0..=d)
        .map(|j| {
            let (lo, lo_closed) = if j == 0 { (digits[0].mul(beta).div(&bm1), true) } else { (digits[j - 1].add(&high), false) };
            let (hi, hi_closed) = if j == d { (digits[d].mul(beta).div(&bm1), true) } else { (digits[j + 1].add(&low), false) };
            Interval { lo, hi, lo_closed, hi_closed }
        })
        .collect()
}

fn check_base(a: &Alphabet, beta: &BigRational) -> Result<(), UnivoqueError> {
    let q = q_of(a);
    if beta <= &BigRational::one() || beta > &q {
        return Err(UnivoqueError::BaseOutOfRange { beta: beta.to_string(), q: q.to_string() });
    }
    Ok(())
}

/// Exact regions for a rational base `1 < β ≤ q(A)`.
pub fn regions(a: &Alphabet, beta: &BigRational) -> Result<Regions<BigRational>, UnivoqueError> {
    check_base(a, beta)?;
    Ok(regions_of(a.digits(), beta))
}

/// Values `Σ_k u_{i+k} β^{-k}` of the distinct tails `i = 0..pre+period`.
pub fn tail_values<T: Scalar>(u: &EpWord, digits: &[T], beta: &T) -> Vec<T> {
    let one = T::unit();
    let y = one.div(beta);
    let period = u.period();
    let l = period.len();
    let mut yl = one.clone();
    for _ in 0..l {
        yl = yl.mul(&y);
    }
    let factor = one.div(&one.sub(&yl));
    // Horner from the back of each rotation.
    let rotation = |r: usize| {
        let mut acc = digits[period[(r + l - 1) % l] as usize].clone();
        for k in (0..l - 1).rev() {
            acc = digits[period[(r + k) % l] as usize].add(&acc.mul(&y));
        }
        acc.mul(&factor)
    };
    let periodic: Vec<T> = (0..l).map(rotation).collect();
    let pre = u.pre();
    let mut values = vec![periodic[0].clone(); pre.len()];
    let mut next = periodic[0].clone();
    for i in (0..pre.len()).rev() {
        next = digits[pre[i] as usize].add(&next.mul(&y));
        values[i] = next.clone();
    }
    values.extend(periodic);
    values
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Unique,
    NotUnique,
    Undecided,
}

/// Decides whether `u` (digit indices) is a unique expansion in base `β`.
pub fn is_unique_ep<T: Scalar>(u: &EpWord, beta: &T, digits: &[T]) -> Verdict {
    let regs = regions_of(digits, beta);
    let mut undecided = false;
    for (i, v) in tail_values(u, digits, beta).iter().enumerate() {
        match regs[u.letter(i) as usize].contains(v) {
            Some(true) => {}
            Some(false) => return Verdict::NotUnique,
            None => undecided = true,
        }
    }
    if undecided {
        Verdict::Undecided
    } else {
        Verdict::Unique
    }
}

/// [`is_unique_ep`] with exact rational arithmetic.
pub fn is_unique_exact(u: &EpWord, beta: &BigRational, a: &Alphabet) -> Verdict {
    is_unique_ep(u, beta, a.digits())
}

/// Whether `u` is one of the constant words `ā_0`, `ā_d`.
pub fn is_trivial(u: &EpWord, a: &Alphabet) -> bool {
    u.is_constant() && (u.period()[0] == 0 || u.period()[0] as usize == a.top())
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    Bracket::from_rational(q).mid().to_f64()
}

pub(crate) fn is_positive(q: &BigRational) -> bool {
    q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn alpha(s: &str) -> Alphabet {
        s.parse().unwrap()
    }

    #[test]
    fn parsing_digits() {
        assert_eq!(q("1.4"), q("7/5"));
        assert_eq!(q("-0.25"), q("-1/4"));
        assert_eq!(q("3"), q("6/2"));
        assert_eq!(q(".5"), q("1/2"));
        assert_eq!(q("2.5e-1"), q("1/4"));
        assert_eq!(q("-1.5E2"), q("-150"));
        assert!(parse_rational("1e").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("x").is_err());
        assert!("0".parse::<Alphabet>().is_err());
        assert!("0,1,1".parse::<Alphabet>().is_err());
        assert_eq!(alpha("5,0,4,1").to_string(), "{0,1,4,5}");
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_of(&alpha("0,1,4,5")), q("8/3"));
        assert_eq!(q_of(&alpha("0,1")), q("2"));
        assert_eq!(q_of(&Alphabet::ternary(&q("1.7")).unwrap()), q("2.7"));
        assert_eq!(q_of(&Alphabet::ternary(&q("3")).unwrap()), q("5/2"));
    }

    #[test]
    fn regions_of_four_digits() {
        let r = regions(&alpha("0,1,4,5"), &q("8/3")).unwrap();
        let shown: Vec<String> = r.iter().map(|i| i.to_string()).collect();
        assert_eq!(shown, ["[0, 1)", "(3, 4)", "(4, 5)", "(7, 8]"]);
        let r = regions(&alpha("0,1"), &q("2")).unwrap();
        assert_eq!(r[0].to_string(), "[0, 1)");
        assert_eq!(r[1].to_string(), "(1, 2]");
        assert!(regions(&alpha("0,1"), &q("2.01")).is_err());
        assert!(regions(&alpha("0,1"), &q("1")).is_err());
    }

    #[test]
    fn regions_of_ternary() {
        let m = q("1.5");
        let beta = q("2.2");
        let r = regions(&Alphabet::ternary(&m).unwrap(), &beta).unwrap();
        assert_eq!(r[1].lo, &m / (&beta - BigRational::one()));
        assert_eq!(r[1].hi, m);
    }

    #[test]
    fn tail_values_match_partial_sums() {
        let u = EpWord::new(vec![2, 0], vec![1, 0, 2]);
        let digits = [q("0"), q("1"), q("3/2")];
        let beta = q("2.3");
        let exact = tail_values(&u, &digits, &beta);
        let b = Bracket::from_rational(&beta).to_f64();
        for (i, v) in exact.iter().enumerate() {
            let approx: f64 = (0..400).map(|k| rational_to_f64(&digits[u.letter(i + k) as usize]) * b.powi(-(k as i32))).sum();
            assert!((rational_to_f64(v) - approx).abs() < 1e-12);
        }
        let brackets: Vec<Bracket> = digits.iter().map(Bracket::from_rational).collect();
        let enclosed = tail_values(&u, &brackets, &Bracket::from_rational(&beta));
        for (e, b) in exact.iter().zip(&enclosed) {
            assert!(b.contains_bracket(Bracket::from_rational(e)) || b.width() < 1e-25);
        }
    }

    #[test]
    fn uniqueness_examples() {
        let a = Alphabet::ternary(&q("1.4")).unwrap();
        let w = EpWord::periodic(vec![0, 1]);
        assert_eq!(is_unique_exact(&w, &q("2.2"), &a), Verdict::Unique);
        assert_eq!(is_unique_exact(&w, &q("2.05"), &a), Verdict::NotUnique);
        for beta in ["1.1", "2", "2.4"] {
            assert_eq!(is_unique_exact(&EpWord::constant(0), &q(beta), &a), Verdict::Unique);
            assert_eq!(is_unique_exact(&EpWord::constant(2), &q(beta), &a), Verdict::Unique);
        }
        let b: Vec<Bracket> = a.to_brackets();
        assert_eq!(is_unique_ep(&w, &Bracket::from_ratio(11, 5), &b), Verdict::Unique);
    }

    #[test]
    fn gap_word_is_unique_above_threshold() {
        // a_j · ā_d is unique just above 1 + (a_d - a_0)/(a_{j+1} - a_j).
        let a = alpha("0,1,4,5");
        let w = EpWord::new(vec![1], vec![3]);
        assert_eq!(is_unique_exact(&w, &q("8/3"), &a), Verdict::NotUnique);
        let a = alpha("0,2,3");
        let w = EpWord::new(vec![0], vec![2]);
        assert_eq!(is_unique_exact(&w, &q("2.6"), &a), Verdict::Unique);
    }

    #[test]
    fn alphabet_word_format() {
        let a = alpha("0,1,7/5");
        assert_eq!(a.format_word(&EpWord::new(vec![2], vec![0, 1])), "7/5(0,1)");
        assert!(is_trivial(&EpWord::constant(2), &a));
        assert!(!is_trivial(&EpWord::constant(1), &a));
    }
}
