//! Adaptive sampling of `m ↦ 𝒢(m)` and its CSV form.

use serde::Serialize;

use super::{Evaluator, GValue, GoldenError, LocateResult};
use crate::numerics::Bracket;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphRow {
    pub m: f64,
    #[serde(rename = "G")]
    pub g: f64,
    pub branch: &'static str,
    pub sigma: String,
}

const INITIAL_POINTS: usize = 65;
const MAX_ROWS: usize = 200_000;
const MIN_STEP: f64 = 1e-9;

/// Short label for the cell or limit-word prefix behind a value.
pub fn witness_label(w: &LocateResult) -> String {
    match w {
        LocateResult::Cell { cell, .. } if cell.sigma.is_identity() => "id".to_string(),
        LocateResult::Cell { cell, .. } => cell.sigma.to_string(),
        LocateResult::SturmianPoint { prefix, .. } => {
            let parts: Vec<String> = prefix.iter().map(|h| h.to_string()).collect();
            format!("lim:{}", parts.join(","))
        }
    }
}

fn row(m: f64, g: &GValue) -> GraphRow {
    GraphRow { m, g: g.value.mid().to_f64(), branch: g.branch.as_str(), sigma: witness_label(&g.witness) }
}

fn eval(ev: &Evaluator, m: f64) -> Result<GraphRow, GoldenError> {
    match ev.golden(Bracket::from_f64(m)) {
        Ok(g) => Ok(row(m, &g)),
        // A point whose digits stay undecided; its neighbour one ulp away is as good a sample.
        Err(_) if m < 2.0 => {
            let m2 = f64::from_bits(m.to_bits() + 1);
            ev.golden(Bracket::from_f64(m2)).map(|g| row(m2, &g))
        }
        Err(e) => Err(e),
    }
}

/// Samples `𝒢` on `[m_lo, m_hi]`, bisecting until neighbouring values differ by
/// less than `resolution`. Rows are sorted by `m`.
pub fn graph_sample(ev: &Evaluator, m_lo: f64, m_hi: f64, resolution: f64) -> Result<Vec<GraphRow>, GoldenError> {
    if !(m_lo > 1.0 && m_lo < m_hi) {
        return Err(GoldenError::ParameterTooSmall(Bracket::from_f64(m_lo)));
    }
    let mut rows = Vec::with_capacity(INITIAL_POINTS);
    for i in 0..INITIAL_POINTS {
        let t = i as f64 / (INITIAL_POINTS - 1) as f64;
        let m = if i == INITIAL_POINTS - 1 { m_hi } else { m_lo + t * (m_hi - m_lo) };
        rows.push(eval(ev, m)?);
    }
    // The minima 𝒢 = 2 at 2^k/(2^k - 1) are single points that uniform seeds step over.
    for k in 1..=30 {
        let p = (1u64 << k) as f64;
        let m = p / (p - 1.0);
        if m > m_lo && m < m_hi {
            rows.push(eval(ev, m)?);
        }
    }
    rows.sort_by(|a, b| a.m.total_cmp(&b.m));
    rows.dedup_by(|a, b| a.m == b.m);
    loop {
        let mids: Vec<f64> = rows
            .windows(2)
            .filter(|p| (p[1].g - p[0].g).abs() > resolution && p[1].m - p[0].m > MIN_STEP)
            .map(|p| 0.5 * (p[0].m + p[1].m))
            .collect();
        if mids.is_empty() || rows.len() + mids.len() > MAX_ROWS {
            break;
        }
        for m in mids {
            rows.push(eval(ev, m)?);
        }
        rows.sort_by(|a, b| a.m.total_cmp(&b.m));
        rows.dedup_by(|a, b| a.m == b.m);
    }
    Ok(rows)
}

/// CSV with header `m,G,branch,sigma`.
pub fn graph_csv(rows: &[GraphRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
}
