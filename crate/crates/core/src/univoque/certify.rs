//! Deciding whether only the trivial words `ā_0`, `ā_d` are unique in a base.
//!
//! The sets `V_a` start at the regions `E_a` and are refined by
//! `V_a ← V_a ∩ T_a^{-1}(⋃_b V_b)` with `T_a(x) = (x - a)β`. Every tail value
//! of a unique word stays inside these sets, so the orbits of unique words
//! are infinite walks in the graph whose nodes are the components of the
//! `V_a` and whose edges are `C → D` when `T_a(C)` meets `D`.
//!
//! A component with a self-loop traps an orbit forever only at the fixed
//! point `aβ/(β-1)` of `T_a`. When no strongly connected component has more
//! than one node, every unique word ends in such a fixed point, and a suffix
//! of it follows a path without repeated nodes; those finitely many words
//! are checked exactly.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::One;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use super::interval_set::{affine, intersect};
use super::{is_trivial, is_unique_ep, rational_to_f64, regions, Alphabet, Interval, IntervalSet, UnivoqueError, Verdict};
use crate::numerics::Bracket;
use crate::words::EpWord;

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub max_iter: usize,
    /// Components allowed per digit before giving up.
    pub max_components: usize,
    /// Longest walk tried when searching for a periodic witness.
    pub period_max: usize,
    /// Node budget of one witness search.
    pub search_budget: usize,
    /// Paths enumerated once the graph has no cycles left.
    pub path_cap: usize,
}

impl Default for CertifyOptions {
    fn default() -> CertifyOptions {
        CertifyOptions { max_iter: 1000, max_components: 64, period_max: 12, search_budget: 200_000, path_cap: 20_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Certificate {
    Certified { iterations: usize },
    /// A nontrivial unique word, letters are digit indices.
    Witness { word: EpWord, iterations: usize },
    Inconclusive { resolution: f64, iterations: usize, reason: String },
}

type Iv = Interval<BigRational>;

struct Graph {
    digit: Vec<usize>,
    iv: Vec<Iv>,
    succ: Vec<Vec<usize>>,
    /// Self-loop present and the fixed point of `T_a` inside the component.
    trap: Vec<bool>,
    alive: Vec<bool>,
}

/// Refinement state for one alphabet and rational base.
#[derive(Clone, Debug)]
pub struct Certifier {
    alphabet: Alphabet,
    beta: BigRational,
    sets: Vec<IntervalSet>,
    fixed: Vec<BigRational>,
    iterations: usize,
}

impl Certifier {
    pub fn new(alphabet: &Alphabet, beta: &BigRational) -> Result<Certifier, UnivoqueError> {
        let regs = regions(alphabet, beta)?;
        let bm1 = beta - BigRational::one();
        let fixed = alphabet.digits().iter().map(|a| a * beta / &bm1).collect();
        Ok(Certifier {
            alphabet: alphabet.clone(),
            beta: beta.clone(),
            sets: regs.into_iter().map(IntervalSet::single).collect(),
            fixed,
            iterations: 0,
        })
    }

    pub fn sets(&self) -> &[IntervalSet] {
        &self.sets
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// One refinement pass; returns whether any set shrank.
    pub fn step(&mut self) -> bool {
        let union = self.sets.iter().fold(IntervalSet::default(), |acc, s| acc.union(s));
        let inv_beta = BigRational::one() / &self.beta;
        let next: Vec<IntervalSet> = self
            .sets
            .iter()
            .zip(self.alphabet.digits())
            .map(|(v, a)| v.intersect(&union.affine(&inv_beta, a)))
            .collect();
        let changed = next != self.sets;
        self.sets = next;
        self.iterations += 1;
        changed
    }

    fn graph(&self) -> Graph {
        let mut digit = Vec::new();
        let mut iv = Vec::new();
        for (a, set) in self.sets.iter().enumerate() {
            for p in set.parts() {
                digit.push(a);
                iv.push(p.clone());
            }
        }
        let n = iv.len();
        let digits = self.alphabet.digits();
        let mut succ = vec![Vec::new(); n];
        for i in 0..n {
            let a = &digits[digit[i]];
            let image = affine(&iv[i], &self.beta, &(-a * &self.beta));
            for j in 0..n {
                if intersect(&image, &iv[j]).is_some() {
                    succ[i].push(j);
                }
            }
        }
        let trap = (0..n).map(|i| succ[i].contains(&i) && iv[i].contains(&self.fixed[digit[i]]) == Some(true)).collect();
        let mut g = Graph { digit, iv, succ, trap, alive: vec![true; n] };
        prune(&mut g);
        g
    }

    fn word_verdict(&self, w: &EpWord, approx: &(Vec<Bracket>, Bracket)) -> Verdict {
        if is_unique_ep(w, &approx.1, &approx.0) == Verdict::NotUnique {
            return Verdict::NotUnique;
        }
        is_unique_ep(w, &self.beta, self.alphabet.digits())
    }

    fn approx(&self) -> (Vec<Bracket>, Bracket) {
        (self.alphabet.to_brackets(), Bracket::from_rational(&self.beta))
    }

    /// Depth-first search for a nontrivial unique word along short walks.
    fn search_witness(&self, g: &Graph, period_max: usize, budget: usize) -> Option<EpWord> {
        let approx = self.approx();
        let b = rational_to_f64(&self.beta);
        let digits: Vec<f64> = self.alphabet.digits().iter().map(rational_to_f64).collect();
        let ivs: Vec<(f64, f64)> = g.iv.iter().map(|p| (rational_to_f64(&p.lo), rational_to_f64(&p.hi))).collect();
        let fixed: Vec<f64> = self.fixed.iter().map(rational_to_f64).collect();
        let mut search = WalkSearch {
            cert: self,
            g,
            approx: &approx,
            beta: b,
            digits,
            ivs,
            fixed,
            period_max,
            budget,
            seen: HashSet::new(),
            word: Vec::new(),
        };
        (0..g.iv.len()).filter(|&s| g.alive[s]).find_map(|s| {
            search.word = vec![g.digit[s] as u8];
            let (lo, hi) = search.ivs[s];
            search.walk(s, s, lo, hi)
        })
    }

    /// Words ending in a trapped fixed point along paths without repeated nodes.
    fn path_candidates(&self, g: &Graph, cap: usize) -> Option<HashSet<EpWord>> {
        fn dfs(g: &Graph, node: usize, word: &mut Vec<u8>, out: &mut HashSet<EpWord>, count: &mut usize, cap: usize) -> bool {
            *count += 1;
            if *count > cap {
                return false;
            }
            word.push(g.digit[node] as u8);
            if g.trap[node] {
                out.insert(EpWord::new(word[..word.len() - 1].to_vec(), vec![g.digit[node] as u8]));
            }
            for &j in &g.succ[node] {
                if j != node && g.alive[j] && !dfs(g, j, word, out, count, cap) {
                    return false;
                }
            }
            word.pop();
            true
        }
        let mut out = HashSet::new();
        let mut count = 0;
        for s in (0..g.iv.len()).filter(|&s| g.alive[s]) {
            if !dfs(g, s, &mut Vec::new(), &mut out, &mut count, cap) {
                return None;
            }
        }
        Some(out)
    }
}

/// Drops components no infinite walk can pass through.
fn prune(g: &mut Graph) {
    loop {
        let mut changed = false;
        for i in 0..g.iv.len() {
            if g.alive[i] && !g.trap[i] && !g.succ[i].iter().any(|&j| j != i && g.alive[j]) {
                g.alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Strongly connected components with more than one node.
fn cyclic_components(g: &Graph) -> Vec<Vec<usize>> {
    let ids: Vec<usize> = (0..g.iv.len()).filter(|&i| g.alive[i]).collect();
    let mut index = vec![usize::MAX; g.iv.len()];
    let mut pg = DiGraph::<usize, ()>::new();
    for &i in &ids {
        index[i] = pg.add_node(i).index();
    }
    for &i in &ids {
        for &j in &g.succ[i] {
            if g.alive[j] && i != j {
                pg.add_edge(NodeIndex::new(index[i]), NodeIndex::new(index[j]), ());
            }
        }
    }
    tarjan_scc(&pg).into_iter().filter(|c| c.len() > 1).map(|c| c.into_iter().map(|n| pg[n]).collect()).collect()
}

struct WalkSearch<'a> {
    cert: &'a Certifier,
    g: &'a Graph,
    approx: &'a (Vec<Bracket>, Bracket),
    beta: f64,
    digits: Vec<f64>,
    ivs: Vec<(f64, f64)>,
    fixed: Vec<f64>,
    period_max: usize,
    budget: usize,
    seen: HashSet<EpWord>,
    word: Vec<u8>,
}

impl WalkSearch<'_> {
    fn check(&self, w: EpWord) -> Option<EpWord> {
        if is_trivial(&w, &self.cert.alphabet) {
            return None;
        }
        (self.cert.word_verdict(&w, self.approx) == Verdict::Unique).then_some(w)
    }

    fn test(&mut self, w: EpWord) -> Option<EpWord> {
        if !self.seen.insert(w.clone()) {
            return None;
        }
        self.check(w)
    }

    /// Extends the walk at `node`, where the current point lies in `[lo, hi]`.
    fn walk(&mut self, start: usize, node: usize, lo: f64, hi: f64) -> Option<EpWord> {
        if self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        let slack = |x: f64| 1e-9 * (1.0 + x.abs());
        let a = self.g.digit[node];
        if self.g.trap[node] && self.fixed[a] >= lo - slack(lo) && self.fixed[a] <= hi + slack(hi) {
            let w = EpWord::new(self.word[..self.word.len() - 1].to_vec(), vec![a as u8]);
            if let Some(w) = self.test(w) {
                return Some(w);
            }
        }
        let (ilo, ihi) = ((lo - self.digits[a]) * self.beta, (hi - self.digits[a]) * self.beta);
        for &j in &self.g.succ[node] {
            if !self.g.alive[j] {
                continue;
            }
            let (jlo, jhi) = self.ivs[j];
            let (nlo, nhi) = (ilo.max(jlo), ihi.min(jhi));
            if nlo > nhi + slack(nhi) {
                continue;
            }
            if j == start {
                // Rotations of a periodic word are unique together.
                let key = EpWord::periodic(min_rotation(&self.word));
                if self.seen.insert(key) {
                    if let Some(w) = self.check(EpWord::periodic(self.word.clone())) {
                        return Some(w);
                    }
                }
            }
            if self.word.len() < self.period_max {
                self.word.push(self.g.digit[j] as u8);
                let found = self.walk(start, j, nlo, nhi);
                self.word.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }
}

fn min_rotation(p: &[u8]) -> Vec<u8> {
    (0..p.len())
        .map(|r| {
            let mut q = p.to_vec();
            q.rotate_left(r);
            q
        })
        .min()
        .unwrap_or_default()
}

/// Runs the refinement until the graph decides the question or a cap is hit.
pub fn certify_trivial(a: &Alphabet, beta: &BigRational, opts: CertifyOptions) -> Result<Certificate, UnivoqueError> {
    let mut c = Certifier::new(a, beta)?;
    let approx = c.approx();
    loop {
        let it = c.iterations();
        let g = c.graph();
        let cyclic = cyclic_components(&g);
        let resolution = || {
            let ids = cyclic.iter().flatten();
            ids.map(|&i| rational_to_f64(&(&g.iv[i].hi - &g.iv[i].lo))).fold(0.0, f64::max)
        };
        if cyclic.is_empty() {
            let Some(cands) = c.path_candidates(&g, opts.path_cap) else {
                return Ok(Certificate::Inconclusive { resolution: 0.0, iterations: it, reason: "path cap".into() });
            };
            let mut cands: Vec<EpWord> = cands.into_iter().filter(|w| !is_trivial(w, a)).collect();
            cands.sort();
            return Ok(match cands.into_iter().find(|w| c.word_verdict(w, &approx) == Verdict::Unique) {
                Some(word) => Certificate::Witness { word, iterations: it },
                None => Certificate::Certified { iterations: it },
            });
        }
        let last = it >= opts.max_iter;
        if (it + 1).is_power_of_two() || last {
            if let Some(word) = c.search_witness(&g, opts.period_max, opts.search_budget) {
                return Ok(Certificate::Witness { word, iterations: it });
            }
        }
        if last {
            return Ok(Certificate::Inconclusive { resolution: resolution(), iterations: it, reason: "iteration cap".into() });
        }
        if c.sets().iter().any(|s| s.len() > opts.max_components) {
            return Ok(Certificate::Inconclusive { resolution: resolution(), iterations: it, reason: "component cap".into() });
        }
        if !c.step() {
            let word = c.search_witness(&g, opts.period_max, 4 * opts.search_budget);
            return Ok(match word {
                Some(word) => Certificate::Witness { word, iterations: it },
                None => Certificate::Inconclusive { resolution: resolution(), iterations: it, reason: "stationary cycles".into() },
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::univoque::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn four_digit_example_is_trivial() {
        let a: Alphabet = "0,1,4,5".parse().unwrap();
        let c = certify_trivial(&a, &q("8/3"), CertifyOptions::default()).unwrap();
        assert!(matches!(c, Certificate::Certified { .. }), "{c:?}");
    }

    #[test]
    fn periodic_witness() {
        let a = Alphabet::ternary(&q("1.4")).unwrap();
        match certify_trivial(&a, &q("2.2"), CertifyOptions::default()).unwrap() {
            Certificate::Witness { word, .. } => assert_eq!(word, EpWord::periodic(vec![0, 1])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_base_is_trivial() {
        let a = Alphabet::ternary(&q("1.5")).unwrap();
        let c = certify_trivial(&a, &q("1.9"), CertifyOptions::default()).unwrap();
        assert!(matches!(c, Certificate::Certified { .. }), "{c:?}");
    }

    #[test]
    fn binary_alphabet_threshold() {
        let a: Alphabet = "0,1".parse().unwrap();
        let c = certify_trivial(&a, &q("1.6"), CertifyOptions::default()).unwrap();
        assert!(matches!(c, Certificate::Certified { .. }), "{c:?}");
        let c = certify_trivial(&a, &q("1.7"), CertifyOptions::default()).unwrap();
        assert!(matches!(c, Certificate::Witness { .. }), "{c:?}");
    }

    #[test]
    fn refinement_shrinks() {
        let a = Alphabet::ternary(&q("1.3")).unwrap();
        let mut c = Certifier::new(&a, &q("2.1")).unwrap();
        for _ in 0..10 {
            let before = c.sets().to_vec();
            c.step();
            for (new, old) in c.sets().iter().zip(&before) {
                assert!(new.is_subset(old));
            }
        }
    }
}
