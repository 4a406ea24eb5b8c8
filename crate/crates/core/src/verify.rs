//! Named verification suites with machine-readable reports.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::golden::{
    f_sigma, g_sigma, graph_sample, ln_growth, m_membership, m_of_sadic, m_of_word, root_law_check, variation_report,
    Evaluator, Membership,
};
use crate::numerics::Bracket;
use crate::univoque::{
    certify_trivial, continuity_experiment, enumerate_expansions, estimate_g, regions, Alphabet, Certificate,
    CertifyOptions, EnumerateOptions, EstimateOptions,
};
use crate::words::{limit_word_prefix, EpWord, SAdicSpec, Sigma};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Klp,
    Variation,
    Theorem4,
    LnGrowth,
    TwoExpansions,
    Remark23,
    Continuity,
    CrossValidation,
    Monotonicity,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Klp,
        Suite::Variation,
        Suite::Theorem4,
        Suite::LnGrowth,
        Suite::TwoExpansions,
        Suite::Remark23,
        Suite::Continuity,
        Suite::CrossValidation,
        Suite::Monotonicity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Klp => "klp",
            Suite::Variation => "variation",
            Suite::Theorem4 => "theorem4",
            Suite::LnGrowth => "ln-growth",
            Suite::TwoExpansions => "two-expansions",
            Suite::Remark23 => "remark23",
            Suite::Continuity => "continuity",
            Suite::CrossValidation => "cross-validation",
            Suite::Monotonicity => "monotonicity",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL.into_iter().find(|x| x.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.as_str()).collect();
            format!("unknown suite {s:?}; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Seed for the randomly sampled parameters.
    pub seed: u64,
    /// Parameters sampled by the cross-validation suite.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig { seed: 2024, samples: 50 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl Check {
    fn new(name: &str, passed: bool, detail: Value) -> Check {
        Check { name: name.to_string(), passed, detail }
    }

    fn error(name: &str, e: impl fmt::Display) -> Check {
        Check::new(name, false, json!({ "error": e.to_string() }))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let ev = Evaluator::default();
    let checks = match suite {
        Suite::Klp => vec![plateaus(&ev), extremum(&ev)],
        Suite::Variation => vec![crossing_points(&ev), variation_bounds(&ev)],
        Suite::Theorem4 => vec![root_law(&ev)],
        Suite::LnGrowth => vec![prefix_growth()],
        Suite::TwoExpansions => vec![two_expansions()],
        Suite::Remark23 => vec![four_digit_example()],
        Suite::Continuity => vec![continuity()],
        Suite::CrossValidation => vec![cross_validation(&ev, cfg)],
        Suite::Monotonicity => vec![branch_monotonicity(&ev)],
    };
    SuiteReport {
        schema_version: SCHEMA_VERSION,
        suite: suite.as_str().to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn s(b: Bracket) -> String {
    b.to_string()
}

/// `𝒢(2^k/(2^k - 1)) = 2` for `k = 1..6`.
pub fn plateaus(ev: &Evaluator) -> Check {
    let mut rows = Vec::new();
    let mut ok = true;
    for k in 1..=6 {
        let p = 1i64 << k;
        match ev.golden(Bracket::from_ratio(p, p - 1)) {
            Ok(g) => {
                let pass = g.value.within(Bracket::from_f64(2.0), 1e-9);
                ok &= pass;
                rows.push(json!({ "k": k, "G": s(g.value), "pass": pass }));
            }
            Err(e) => return Check::error("plateaus", e),
        }
    }
    Check::new("plateaus", ok, json!(rows))
}

/// The smallest point `m_{01̄}` of the set where `𝒢(m) = 1 + √m`.
pub fn extremum(ev: &Evaluator) -> Check {
    let name = "extremum";
    let m = match m_of_word(&EpWord::new(vec![0], vec![1]), ev.options().solve) {
        Ok(m) => m,
        Err(e) => return Check::error(name, e),
    };
    let in_range = m.lo().to_f64() >= 1.75487 && m.hi().to_f64() <= 1.75489;
    let g = match ev.golden(m) {
        Ok(g) => g,
        Err(e) => return Check::error(name, e),
    };
    let sqrt_law = g.value.within(Bracket::from_f64(1.0) + m.sqrt(), 1e-9);
    let membership = m_membership(ev, m);
    let member = membership == Membership::In;
    Check::new(
        name,
        in_range && sqrt_law && member,
        json!({ "m": s(m), "G": s(g.value), "branch": g.branch, "membership": membership }),
    )
}

/// `μ_{τ_h} = 2^{h+1}/(2^{h+1} - 1)`, `β_{τ_h} = 2`, and the first two gaps.
pub fn crossing_points(ev: &Evaluator) -> Check {
    let name = "crossing-points";
    let mut ok = true;
    let mut rows = Vec::new();
    for h in 0..=6u32 {
        let cell = match ev.cell(&Sigma::tau(h)) {
            Ok(c) => c,
            Err(e) => return Check::error(name, e),
        };
        let p = 1i64 << (h + 1);
        let pass = cell.mu.within(Bracket::from_ratio(p, p - 1), 1e-9) && cell.beta_sigma.within(Bracket::from_f64(2.0), 1e-9);
        ok &= pass;
        rows.push(json!({ "h": h, "mu": s(cell.mu), "beta": s(cell.beta_sigma), "pass": pass }));
    }
    let mut gaps = Vec::new();
    for (h, expected) in [(0u32, 0.24512), (1, 0.05136)] {
        let cell = match ev.cell(&Sigma::tau(h)) {
            Ok(c) => c,
            Err(e) => return Check::error(name, e),
        };
        let gap = (cell.mu - cell.m_left).to_f64();
        let pass = (gap - expected).abs() <= 5e-5;
        ok &= pass;
        gaps.push(json!({ "h": h, "gap": gap, "expected": expected, "pass": pass }));
    }
    Check::new(name, ok, json!({ "cells": rows, "gaps": gaps }))
}

pub fn variation_bounds(ev: &Evaluator) -> Check {
    match variation_report(ev, 6) {
        Ok(r) => {
            let ok = r.total_variation < 2.0 && r.left_gap_sum > 0.25;
            Check::new("variation-bounds", ok, serde_json::to_value(&r).unwrap_or(Value::Null))
        }
        Err(e) => Check::error("variation-bounds", e),
    }
}

/// `𝒢(m) = m^{1/h}` at four parameters inside the applicability range.
pub fn root_law(ev: &Evaluator) -> Check {
    let mut ok = true;
    let mut rows = Vec::new();
    for (h, m) in [(1u32, Bracket::from_ratio(21, 10)), (2, Bracket::from_f64(4.0)), (2, Bracket::from_f64(4.5)), (3, Bracket::from_f64(8.0))] {
        match root_law_check(ev, h, m) {
            Ok(r) => {
                let diff = match (r.lhs, r.rhs) {
                    (Some(l), Some(rh)) => l.max_distance(rh),
                    _ => f64::INFINITY,
                };
                let pass = r.applicable && diff <= 1e-8;
                ok &= pass;
                rows.push(json!({ "h": h, "m": s(m), "applicable": r.applicable, "lhs": r.lhs.map(s), "rhs": r.rhs.map(s), "pass": pass }));
            }
            Err(e) => return Check::error("root-law", e),
        }
    }
    Check::new("root-law", ok, json!(rows))
}

pub fn prefix_growth() -> Check {
    let table = ln_growth(40);
    let ok = table.iter().all(|&(n, c)| c <= 2 * n * n);
    Check::new("prefix-growth", ok, json!(table.iter().map(|&(n, c)| json!([n, c])).collect::<Vec<_>>()))
}

/// The point `m_u/β` for the all-`τ_1` limit word `u` has exactly two expansions.
pub fn two_expansions() -> Check {
    let name = "two-expansions";
    let spec = match SAdicSpec::constant(1) {
        Ok(sp) => sp,
        Err(e) => return Check::error(name, e),
    };
    let m = match m_of_sadic(&spec, Default::default()) {
        Ok(m) => m,
        Err(e) => return Check::error(name, e),
    };
    let one = Bracket::from_f64(1.0);
    let beta = one + m.sqrt();
    let digits = [Bracket::from_f64(0.0), one, m];
    let depth = 30;
    let report = match enumerate_expansions(m / beta, beta, &digits, depth, EnumerateOptions::default()) {
        Ok(r) => r,
        Err(e) => return Check::error(name, e),
    };
    let u = limit_word_prefix(&spec, depth);
    let mut sturmian = vec![1u8];
    sturmian.extend_from_slice(&u[1..depth]);
    let mut zero_branch = vec![2u8];
    zero_branch.extend(std::iter::repeat_n(0, depth - 1));
    let zero_pinned = report.pinned_words.contains(&EpWord::new(vec![2], vec![0]));
    let has = |p: &Vec<u8>| report.prefixes.contains(p);
    let ok = report.alive_count == 2 && has(&zero_branch) && zero_pinned && has(&sturmian);
    Check::new(
        name,
        ok,
        json!({
            "m": s(m),
            "aliveCount": report.alive_count,
            "zeroBranch": { "found": has(&zero_branch), "pinned": zero_pinned },
            "sturmianBranch": { "found": has(&sturmian), "prefix": crate::words::format_word(&sturmian) },
        }),
    )
}

/// `{0,1,4,5}` at `β = 8/3`: the four regions and triviality of the univoque set.
pub fn four_digit_example() -> Check {
    let name = "four-digit-regions";
    let a: Alphabet = "0,1,4,5".parse().expect("literal alphabet");
    let beta = ratio(8, 3);
    let regs = match regions(&a, &beta) {
        Ok(r) => r,
        Err(e) => return Check::error(name, e),
    };
    let shown: Vec<String> = regs.iter().map(|r| r.to_string()).collect();
    let expected = ["[0, 1)", "(3, 4)", "(4, 5)", "(7, 8]"];
    let regions_ok = shown == expected;
    let cert = certify_trivial(&a, &beta, CertifyOptions::default());
    let certified = matches!(cert, Ok(Certificate::Certified { .. }));
    Check::new(
        name,
        regions_ok && certified,
        json!({ "regions": shown, "certificate": cert.map(|c| serde_json::to_value(c).unwrap_or(Value::Null)).unwrap_or(Value::Null) }),
    )
}

/// Brackets for `{0, t, 1}` with `t` on a 20-point grid of spacing `10^-3`
/// around `2/5` move continuously and contain the certified value.
pub fn continuity() -> Check {
    let name = "continuity";
    let base: Alphabet = "0,2/5,1".parse().expect("literal alphabet");
    let offsets: Vec<BigRational> = (0..20).map(|k| ratio(2 * k - 19, 2000)).collect();
    let opts = EstimateOptions::default().with_period_max(12);
    let report = match continuity_experiment(&base, 1, &offsets, &opts, 0.05) {
        Ok(r) => r,
        Err(e) => return Check::error(name, e),
    };
    let agrees = |row: &crate::univoque::ContinuityRow| match row.golden {
        Some(g) => {
            let lo = row.estimate.lower.map_or(1.0, |l| l.lo().to_f64());
            g.lo().to_f64() >= lo - 1e-9 && g.hi().to_f64() <= row.estimate.upper.hi().to_f64() + 1e-9
        }
        None => false,
    };
    let disagreements: Vec<usize> = (0..report.rows.len()).filter(|&i| !agrees(&report.rows[i])).collect();
    let ok = report.flagged.is_empty() && disagreements.is_empty();
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "t": r.alphabet.digits()[1].to_string(),
                "lower": r.estimate.lower.map(|b| b.to_f64()),
                "upper": r.estimate.upper.to_f64(),
                "G": r.golden.map(|b| b.to_f64()),
            })
        })
        .collect();
    Check::new(name, ok, json!({ "maxGap": report.max_gap, "flagged": report.flagged, "disagreements": disagreements, "rows": rows }))
}

/// Random dyadic `m ∈ (1.05, 2)`: the certified `𝒢(m)` lies in the numeric bracket for `{0,1,m}`.
pub fn cross_validation(ev: &Evaluator, cfg: &VerifyConfig) -> Check {
    let name = "cross-validation";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let den = 1i64 << 16;
    let (lo, hi) = ((1.05 * den as f64).ceil() as i64, 2 * den);
    let opts = EstimateOptions::default().with_period_max(12);
    let mut ok = true;
    let mut rows = Vec::new();
    for _ in 0..cfg.samples {
        let num = rng.gen_range(lo + 1..hi);
        let m = ratio(num, den);
        let g = match ev.golden(Bracket::from_rational(&m)) {
            Ok(g) => g.value,
            Err(e) => return Check::error(name, e),
        };
        let a = Alphabet::ternary(&m).expect("m > 1");
        let e = estimate_g(&a, &opts);
        let lower = e.lower.map_or(1.0, |l| l.lo().to_f64());
        let pass = g.lo().to_f64() >= lower && g.hi().to_f64() <= e.upper.hi().to_f64();
        ok &= pass;
        rows.push(json!({ "m": m.to_string(), "G": g.to_f64(), "lower": e.lower.map(|b| b.to_f64()), "upper": e.upper.to_f64(), "pass": pass }));
    }
    Check::new(name, ok, json!(rows))
}

/// Sampled `f_σ` decreasing and `g_σ` increasing on every cell of weight
/// at most 4, and `2 ≤ 𝒢(m) ≤ 1 + √m` along the full graph.
pub fn branch_monotonicity(ev: &Evaluator) -> Check {
    let name = "branch-monotonicity";
    let opts = ev.options().solve;
    let mut failures = Vec::new();
    let sigmas = Sigma::enumerate(4);
    for sigma in &sigmas {
        let cell = match ev.cell(sigma) {
            Ok(c) => c,
            Err(e) => return Check::error(name, e),
        };
        let sample = |a: Bracket, b: Bracket, i: usize| {
            let t = (i as f64 + 1.0) / 51.0;
            let (a, b) = (a.mid().to_f64(), b.mid().to_f64());
            Bracket::from_f64(a + t * (b - a))
        };
        let mut prev_f: Option<Bracket> = None;
        let mut prev_g: Option<Bracket> = None;
        for i in 0..50 {
            let mf = sample(cell.m_left, cell.mu, i);
            let mg = sample(cell.mu, cell.m_right, i);
            let (f, g) = match (f_sigma(sigma, mf, opts), g_sigma(sigma, mg, opts)) {
                (Ok(f), Ok(g)) => (f, g),
                (Err(e), _) | (_, Err(e)) => return Check::error(name, e),
            };
            if prev_f.is_some_and(|p| !f.certainly_lt(p)) {
                failures.push(format!("f {sigma} at {}", mf.to_f64()));
            }
            if prev_g.is_some_and(|p| !g.certainly_gt(p)) {
                failures.push(format!("g {sigma} at {}", mg.to_f64()));
            }
            prev_f = Some(f);
            prev_g = Some(g);
        }
    }
    let rows = match graph_sample(ev, 1.001, 2.0, 1e-3) {
        Ok(r) => r,
        Err(e) => return Check::error(name, e),
    };
    let out_of_bounds = rows.iter().filter(|r| r.g < 2.0 - 1e-12 || r.g > 1.0 + r.m.sqrt() + 1e-12).count();
    Check::new(
        name,
        failures.is_empty() && out_of_bounds == 0,
        json!({ "cells": sigmas.len(), "failures": failures, "graphRows": rows.len(), "outOfBounds": out_of_bounds }),
    )
}
