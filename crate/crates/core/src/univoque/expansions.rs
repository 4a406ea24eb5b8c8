//! Counting the expansions of a number digit by digit.

use std::cmp::Ordering;

use serde::Serialize;

use super::UnivoqueError;
use crate::numerics::Bracket;
use crate::words::EpWord;

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Nodes visited before the count is reported as truncated.
    pub max_nodes: u64,
    /// Alive prefixes kept in the report.
    pub max_listed: usize,
}

impl Default for EnumerateOptions {
    fn default() -> EnumerateOptions {
        EnumerateOptions { max_nodes: 1 << 24, max_listed: 256 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BranchReport {
    pub depth: usize,
    /// Prefixes of length `depth` that remain feasible.
    pub alive_count: u64,
    /// The first few alive prefixes, as digit indices.
    pub prefixes: Vec<Vec<u8>>,
    /// Alive prefixes whose remainder sits on an end of the feasible range,
    /// completed by the constant tail that end forces.
    pub pinned_words: Vec<EpWord>,
    pub truncated: bool,
}

struct Search<'a> {
    digits: &'a [Bracket],
    beta: Bracket,
    low: Bracket,
    high: Bracket,
    depth: usize,
    opts: EnumerateOptions,
    nodes: u64,
    report: BranchReport,
    prefix: Vec<u8>,
}

impl Search<'_> {
    fn feasible(&self, r: Bracket) -> bool {
        !r.certainly_lt(self.low) && !r.certainly_gt(self.high)
    }

    fn visit(&mut self, r: Bracket) {
        if self.report.truncated {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.opts.max_nodes {
            self.report.truncated = true;
            return;
        }
        if self.prefix.len() == self.depth {
            self.report.alive_count += 1;
            if self.report.prefixes.len() < self.opts.max_listed {
                self.report.prefixes.push(self.prefix.clone());
                let top = (self.digits.len() - 1) as u8;
                let on = |end: Bracket| matches!(r.compare(end), None | Some(Ordering::Equal));
                if on(self.low) {
                    self.report.pinned_words.push(EpWord::new(self.prefix.clone(), vec![0]));
                }
                if on(self.high) {
                    self.report.pinned_words.push(EpWord::new(self.prefix.clone(), vec![top]));
                }
            }
            return;
        }
        for (j, a) in self.digits.iter().enumerate() {
            let next = self.beta * r - *a;
            if self.feasible(next) {
                self.prefix.push(j as u8);
                self.visit(next);
                self.prefix.pop();
            }
        }
    }
}

/// Counts prefixes `u_1⋯u_n` with `βⁿ(x - Σ u_k β^{-k})` still inside the
/// closed range `[a_0/(β-1), a_d/(β-1)]` of expansion values. Digits are
/// given as brackets so that irrational alphabets can be used; a remainder
/// straddling an end of the range keeps its branch alive.
pub fn enumerate_expansions(
    x: Bracket,
    beta: Bracket,
    digits: &[Bracket],
    depth: usize,
    opts: EnumerateOptions,
) -> Result<BranchReport, UnivoqueError> {
    let bm1 = beta - Bracket::from_f64(1.0);
    let low = digits[0] / bm1;
    let high = digits[digits.len() - 1] / bm1;
    let mut s = Search {
        digits,
        beta,
        low,
        high,
        depth,
        opts,
        nodes: 0,
        report: BranchReport { depth, alive_count: 0, prefixes: Vec::new(), pinned_words: Vec::new(), truncated: false },
        prefix: Vec::new(),
    };
    if !s.feasible(x) {
        return Err(UnivoqueError::XOutOfRange(x));
    }
    s.visit(x);
    Ok(s.report)
}
