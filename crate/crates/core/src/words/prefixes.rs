//! The language of length-`n` prefixes of words in the limit set.
//!
//! Two independent routes: [`enumerate_prefixes`] closes a seed set under
//! truncated substitutions, and [`is_limit_word_prefix`] decides membership
//! of a single word by repeated block parsing.

use std::collections::{BTreeSet, VecDeque};

use super::tau_apply;

/// All length-`n` prefixes, generated from `01̄` and `1̄` by the maps
/// `x ↦ τ_h(x)[..n]`.
pub fn enumerate_prefixes(n: usize) -> BTreeSet<Vec<u8>> {
    let mut seen = BTreeSet::new();
    if n == 0 {
        seen.insert(Vec::new());
        return seen;
    }
    let mut zero_one_bar = vec![1; n];
    zero_one_bar[0] = 0;
    let mut queue: VecDeque<Vec<u8>> = VecDeque::new();
    for seed in [zero_one_bar, vec![1; n]] {
        if seen.insert(seed.clone()) {
            queue.push_back(seed);
        }
    }
    while let Some(x) = queue.pop_front() {
        // τ_h(x) starts with 0^{h+1}, so h ≥ n - 1 always gives 0^n.
        for h in 0..n as u32 {
            let mut y = tau_apply(h, &x);
            y.truncate(n);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Whether `w` is a prefix of some word in the limit set.
pub fn is_limit_word_prefix(w: &[u8]) -> bool {
    let mut cur = w.to_vec();
    loop {
        if cur.iter().all(|&c| c == 1) {
            return true;
        }
        if cur[0] != 0 {
            return false;
        }
        let Some(first_one) = cur.iter().position(|&c| c == 1) else {
            return true;
        };
        let h = first_one - 1;
        let mut next = Vec::with_capacity(cur.len());
        let mut zeros = 0;
        for &c in &cur {
            if c == 0 {
                zeros += 1;
                if zeros > h + 1 {
                    return false;
                }
            } else {
                match zeros {
                    z if z == h + 1 => next.push(0),
                    z if z == h => next.push(1),
                    _ => return false,
                }
                zeros = 0;
            }
        }
        // A pending 0^{h+1} can only be completed as τ_h(0).
        if zeros == h + 1 {
            next.push(0);
        }
        debug_assert!(next.len() < cur.len());
        cur = next;
    }
}
