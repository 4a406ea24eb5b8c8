//! Lexicographic bounds `u ≤ u_i u_{i+1}⋯ ≤ 1u_1u_2⋯` for `i ≥ 1`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::EpWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ViolationKind {
    /// The shift at `index` is smaller than the word itself.
    BelowWord,
    /// The shift at `index` is larger than the word with its first letter replaced by 1.
    AboveOneShift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    pub kind: ViolationKind,
}

/// First position where two sequences differ within `len` letters.
fn first_difference(a: impl Iterator<Item = u8>, b: impl Iterator<Item = u8>, len: usize) -> Ordering {
    a.zip(b).take(len).map(|(x, y)| x.cmp(&y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Checks the bounds on a finite prefix. Comparisons that run off the end of
/// the prefix count as satisfied, so a reported violation holds for every
/// extension. Returns the violation with the smallest index.
pub fn check_lex_bounds(prefix: &[u8]) -> Option<Violation> {
    let n = prefix.len();
    let one_u = || std::iter::once(1u8).chain(prefix[1..].iter().copied());
    for i in 1..n {
        let shift = || prefix[i..].iter().copied();
        if first_difference(shift(), prefix.iter().copied(), n - i) == Ordering::Less {
            return Some(Violation { index: i, kind: ViolationKind::BelowWord });
        }
        if first_difference(shift(), one_u(), n - i) == Ordering::Greater {
            return Some(Violation { index: i, kind: ViolationKind::AboveOneShift });
        }
    }
    None
}

/// Exact check for an eventually periodic word.
pub fn check_lex_bounds_ep(u: &EpWord) -> Option<Violation> {
    let upper = u.tail(1).prepend(&[1]);
    for i in 1..=u.distinct_tails() {
        let t = u.tail(i);
        if t < *u {
            return Some(Violation { index: i, kind: ViolationKind::BelowWord });
        }
        if t > upper {
            return Some(Violation { index: i, kind: ViolationKind::AboveOneShift });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn check(s: &str) -> Option<Violation> {
        check_lex_bounds(&parse_word(s).unwrap())
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(check("011111"), None);
        assert_eq!(check("01101"), None);
        assert_eq!(check("010111"), Some(Violation { index: 3, kind: ViolationKind::AboveOneShift }));
        // shift 1 = 1011… is already below 1101…
        assert_eq!(check("11011"), Some(Violation { index: 1, kind: ViolationKind::BelowWord }));
        assert_eq!(check("10"), Some(Violation { index: 1, kind: ViolationKind::BelowWord }));
        assert_eq!(check("0"), None);
    }

    #[test]
    fn ep_examples() {
        for ok in ["0(1)", "(1)", "(0)", "(01)", "0(101)", "0(01)", "(001)", "(011)"] {
            assert_eq!(check_lex_bounds_ep(&ok.parse().unwrap()), None, "{ok}");
        }
        let v = check_lex_bounds_ep(&"(0011)".parse().unwrap()).unwrap();
        assert_eq!(v, Violation { index: 2, kind: ViolationKind::AboveOneShift });
        let v = check_lex_bounds_ep(&"0(0011)".parse().unwrap()).unwrap();
        assert_eq!(v.kind, ViolationKind::AboveOneShift);
    }

    #[test]
    fn digit_two_is_above() {
        let v = check_lex_bounds(&[0, 2]).unwrap();
        assert_eq!(v, Violation { index: 1, kind: ViolationKind::AboveOneShift });
    }
}
