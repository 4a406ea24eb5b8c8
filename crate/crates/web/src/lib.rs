//! Browser bindings. Every export returns a JSON (or CSV) string; failures
//! come back as `{"error": "..."}` so the page never has to catch.

use ggr_core::golden::{graph_csv, graph_sample, witness_label, Evaluator};
use ggr_core::numerics::Bracket;
use ggr_core::univoque::{enumerate_expansions, parse_rational, Alphabet, EnumerateOptions};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Node budget for one count, small enough to keep the page responsive.
const COUNT_NODES: u64 = 1 << 20;

fn error(e: impl std::fmt::Display) -> String {
    json!({ "error": e.to_string() }).to_string()
}

/// `𝒢(m)` with its branch and the cell or limit-word label behind it.
#[wasm_bindgen]
pub fn golden(m: &str) -> String {
    let m = match parse_rational(m) {
        Ok(q) => Bracket::from_rational(&q),
        Err(e) => return error(e),
    };
    match Evaluator::default().golden(m) {
        Ok(g) => json!({
            "value": g.value.to_f64(),
            "lo": g.value.lo().to_decimal(20),
            "hi": g.value.hi().to_decimal(20),
            "reduced": g.reduced.to_f64(),
            "branch": g.branch,
            "witness": witness_label(&g.witness),
        })
        .to_string(),
        Err(e) => error(e),
    }
}

/// The sampled graph as CSV with header `m,G,branch,sigma`.
#[wasm_bindgen]
pub fn graph(m_lo: f64, m_hi: f64, resolution: f64) -> String {
    if !(m_lo > 1.0 && m_lo < m_hi && m_hi <= 2.0 && resolution > 0.0) {
        return error(format!("need 1 < m_lo < m_hi <= 2 and a positive resolution, got {m_lo}, {m_hi}, {resolution}"));
    }
    match graph_sample(&Evaluator::default(), m_lo, m_hi, resolution) {
        Ok(rows) => graph_csv(&rows),
        Err(e) => error(e),
    }
}

/// Number of length-`depth` prefixes of expansions of `x` in base `beta`.
#[wasm_bindgen]
pub fn count_expansions(x: &str, beta: &str, alphabet: &str, depth: usize) -> String {
    let parsed = (|| -> Result<(Bracket, Bracket, Alphabet), String> {
        let x = parse_rational(x).map_err(|e| e.to_string())?;
        let beta = parse_rational(beta).map_err(|e| e.to_string())?;
        let a: Alphabet = alphabet.parse().map_err(|e: ggr_core::univoque::UnivoqueError| e.to_string())?;
        Ok((Bracket::from_rational(&x), Bracket::from_rational(&beta), a))
    })();
    let (x, beta, a) = match parsed {
        Ok(p) => p,
        Err(e) => return error(e),
    };
    if beta.lo().to_f64() <= 1.0 {
        return error("beta must exceed 1");
    }
    let opts = EnumerateOptions { max_nodes: COUNT_NODES, max_listed: 16 };
    match enumerate_expansions(x, beta, &a.to_brackets(), depth.min(64), opts) {
        Ok(r) => {
            let pinned: Vec<String> = r.pinned_words.iter().map(|w| a.format_word(w)).collect();
            let prefixes: Vec<Value> = r.prefixes.iter().map(|p| json!(p)).collect();
            json!({
                "aliveCount": r.alive_count,
                "truncated": r.truncated,
                "prefixes": prefixes,
                "pinnedWords": pinned,
            })
            .to_string()
        }
        Err(e) => error(e),
    }
}
