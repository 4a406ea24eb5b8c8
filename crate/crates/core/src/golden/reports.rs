//! Summaries built on the evaluator: variation sums, the root law on
//! plateaus, membership in the set where `𝒢(m) = 1 + √m`, and prefix counts.

use serde::Serialize;

use super::{Evaluator, GoldenError, LocateError, LocateResult, Side};
use crate::numerics::{Bracket, SolveError};
use crate::words::{enumerate_prefixes, Sigma};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VariationReport {
    pub max_weight: u32,
    pub cells: usize,
    /// `Σ 𝒢(m_{σ(01̄)}) - 𝒢(μ_σ)` over the enumerated cells.
    pub f_side_sum: f64,
    /// `Σ 𝒢(m_{σ(1̄)}) - 𝒢(μ_σ)` over the enumerated cells other than the identity.
    pub g_side_sum: f64,
    /// `Σ μ_σ - m_{σ(01̄)}`.
    pub left_gap_sum: f64,
    /// `Σ m_{σ(1̄)} - μ_σ` over the enumerated cells other than the identity.
    pub right_gap_sum: f64,
    pub total_variation: f64,
}

/// Partial sums of the variation of `𝒢` over the cells of weight at most `max_weight`.
///
/// At the cell endpoints `𝒢 = 1 + √m`, and at the crossing point `𝒢 = β_σ`,
/// so no evaluation beyond the cell data is needed.
pub fn variation_report(ev: &Evaluator, max_weight: u32) -> Result<VariationReport, SolveError> {
    let sigmas = Sigma::enumerate(max_weight);
    let mut r = VariationReport {
        max_weight,
        cells: sigmas.len(),
        f_side_sum: 0.0,
        g_side_sum: 0.0,
        left_gap_sum: 0.0,
        right_gap_sum: 0.0,
        total_variation: 0.0,
    };
    let one = Bracket::from_f64(1.0);
    for s in &sigmas {
        let c = ev.cell(s)?;
        r.f_side_sum += (one + c.m_left.sqrt() - c.beta_sigma).to_f64();
        r.left_gap_sum += (c.mu - c.m_left).to_f64();
        if !s.is_identity() {
            r.g_side_sum += (one + c.m_right.sqrt() - c.beta_sigma).to_f64();
            r.right_gap_sum += (c.m_right - c.mu).to_f64();
        }
    }
    r.total_variation = r.f_side_sum + r.g_side_sum;
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootLawCheck {
    pub h: u32,
    pub m: Bracket,
    pub applicable: bool,
    pub lhs: Option<Bracket>,
    pub rhs: Option<Bracket>,
}

/// `𝒢(m) = m^{1/h}` whenever `2^h ≤ m ≤ (1 + √(m/(m-1)))^h`.
pub fn root_law_check(ev: &Evaluator, h: u32, m: Bracket) -> Result<RootLawCheck, GoldenError> {
    let one = Bracket::from_f64(1.0);
    if m.lo() <= one.hi() {
        return Err(GoldenError::ParameterTooSmall(m));
    }
    let lower = Bracket::from_f64(2.0).powi(h);
    let upper = (one + (m / (m - one)).sqrt()).powi(h);
    // Boundary cases such as m = 2^h are accepted when the comparison is undecided.
    let applicable = !m.certainly_lt(lower) && !m.certainly_gt(upper);
    if !applicable {
        return Ok(RootLawCheck { h, m, applicable, lhs: None, rhs: None });
    }
    let lhs = ev.golden(m)?.value;
    let rhs = m.nth_root(h);
    Ok(RootLawCheck { h, m, applicable, lhs: Some(lhs), rhs: Some(rhs) })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "camelCase")]
pub enum Membership {
    In,
    NotIn { sigma: Sigma },
    Undecided { reason: String },
}

/// Whether `𝒢(m) = 1 + √m`, decided from the location of `m`.
pub fn m_membership(ev: &Evaluator, m: Bracket) -> Membership {
    match ev.locate(m) {
        Ok(LocateResult::SturmianPoint { .. }) => Membership::In,
        Ok(LocateResult::Cell { cell, side }) => match side {
            Side::Boundary(super::BoundaryPoint::Left) | Side::Boundary(super::BoundaryPoint::Right) => Membership::In,
            _ => Membership::NotIn { sigma: cell.sigma },
        },
        Err(e @ LocateError::AmbiguousDigits { .. }) => Membership::Undecided { reason: e.to_string() },
        Err(e) => Membership::Undecided { reason: e.to_string() },
    }
}

/// `(n, #L_n)` for `n = 1..=n_max`.
pub fn ln_growth(n_max: usize) -> Vec<(usize, usize)> {
    (1..=n_max).map(|n| (n, enumerate_prefixes(n).len())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_gaps() {
        let ev = Evaluator::default();
        let id = ev.cell(&Sigma::identity()).unwrap();
        assert!(((id.mu - id.m_left).to_f64() - 0.24512).abs() < 5e-5);
        let t1 = ev.cell(&Sigma::tau(1)).unwrap();
        assert!(((t1.mu - t1.m_left).to_f64() - 0.05136).abs() < 5e-5);
    }

    #[test]
    fn variation_partial_sums() {
        let ev = Evaluator::default();
        let r = variation_report(&ev, 4).unwrap();
        assert!(r.left_gap_sum > 0.25);
        assert!(r.total_variation < 2.0);
        // the cells tile (1, 2]: total length of the listed pieces stays below 1
        assert!(r.left_gap_sum + r.right_gap_sum < 1.0);
    }

    #[test]
    fn root_law_examples() {
        let ev = Evaluator::default();
        for (h, m) in [(1, 2.1), (2, 4.0), (3, 8.0)] {
            let c = root_law_check(&ev, h, Bracket::from_f64(m)).unwrap();
            assert!(c.applicable);
            assert!(c.lhs.unwrap().within(c.rhs.unwrap(), 1e-9), "{c:?}");
        }
        assert!(!root_law_check(&ev, 2, Bracket::from_f64(3.0)).unwrap().applicable);
    }

    #[test]
    fn membership_examples() {
        let ev = Evaluator::default();
        assert!(matches!(m_membership(&ev, Bracket::from_f64(1.9)), Membership::NotIn { .. }));
        assert!(matches!(m_membership(&ev, Bracket::from_ratio(4, 3)), Membership::NotIn { .. }));
        let x2 = super::super::m_of_word(&"0(1)".parse().unwrap(), Default::default()).unwrap();
        assert_eq!(m_membership(&ev, x2), Membership::In);
    }

    #[test]
    fn prefix_counts_start() {
        assert_eq!(&ln_growth(3), &[(1, 2), (2, 3), (3, 5)]);
    }
}
