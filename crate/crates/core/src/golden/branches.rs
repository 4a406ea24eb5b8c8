//! The quantities attached to a binary word or a substitution composition:
//! `m_u`, the two branch functions `f_σ`, `g_σ`, and their crossing point.

use serde::Serialize;

use crate::numerics::{ep_series_value, solve_monotone, Bracket, Dd, SolveError, SolveOptions};
use crate::words::{limit_word_prefix, sigma_one_bar, sigma_zero_one_bar, EpWord, SAdicSpec, Sigma};

fn one() -> Bracket {
    Bracket::from_f64(1.0)
}

/// Series value at a point bracket; the base is always above 1 here.
fn series(u: &EpWord, k0: u32, x: Bracket) -> Bracket {
    ep_series_value(u, k0, x).expect("series base above 1")
}

/// Root of a monotone function of `x > 1`, widening the search interval until
/// the sign change is certified.
fn solve_expanding<F>(f: F, decreasing: bool, opts: SolveOptions) -> Result<Bracket, SolveError>
where
    F: Fn(Bracket) -> Bracket,
{
    use std::cmp::Ordering::{Greater, Less};
    let (below, above) = if decreasing { (Greater, Less) } else { (Less, Greater) };
    let mut lo = Dd::from_f64(1.5);
    let mut hi = Dd::from_f64(3.0);
    for _ in 0..80 {
        if f(Bracket::point(lo)).sign() == Some(below) {
            break;
        }
        lo = Dd::ONE + (lo - Dd::ONE) * Dd::from_f64(0.5);
    }
    for _ in 0..80 {
        if f(Bracket::point(hi)).sign() == Some(above) {
            break;
        }
        hi = hi * Dd::TWO;
    }
    solve_monotone(f, lo, hi, opts)
}

/// Solves at both ends of a parameter bracket and returns the hull.
fn over_param<F>(m: Bracket, solve: F) -> Result<Bracket, SolveError>
where
    F: Fn(Bracket) -> Result<Bracket, SolveError>,
{
    if m.is_point() {
        return solve(m);
    }
    let a = solve(Bracket::point(m.lo()))?;
    let b = solve(Bracket::point(m.hi()))?;
    Ok(a.hull(b))
}

/// `m_u`: the unique `m ≥ 1` with `m = 1 + Σ_{k≥0} u_k (1+√m)^{-k}`.
///
/// Solved in `β = 1 + √m`, where `(β-1)² - 1 - Σ u_k β^{-k}` is increasing.
pub fn m_of_word(u: &EpWord, opts: SolveOptions) -> Result<Bracket, SolveError> {
    if *u == EpWord::constant(0) {
        return Ok(one());
    }
    let h = |b: Bracket| (b - one()).square() - one() - series(u, 0, b);
    let beta = solve_monotone(h, Dd::from_f64(1.9), Dd::from_f64(2.7), opts)?;
    Ok((beta - one()).square())
}

/// `m_u` for the limit word of an S-adic sequence, enclosed between the
/// values of `p·0̄` and `p·1̄` for a long enough prefix `p`.
pub fn m_of_sadic(spec: &SAdicSpec, opts: SolveOptions) -> Result<Bracket, SolveError> {
    let mut n = 16;
    loop {
        let p = limit_word_prefix(spec, n);
        let lo = m_of_word(&EpWord::new(p.clone(), vec![0]), opts)?;
        let hi = m_of_word(&EpWord::new(p, vec![1]), opts)?;
        let b = lo.hull(hi);
        if b.width() <= opts.tol || n >= 400 {
            return Ok(b);
        }
        n += 16;
    }
}

/// `f_σ(m)`: the root `x > 1` of `1 + Σ_{k≥1} ũ_k x^{-k} = m`, `ũ = σ(01̄)`.
pub fn f_sigma(sigma: &Sigma, m: Bracket, opts: SolveOptions) -> Result<Bracket, SolveError> {
    let tail = sigma_zero_one_bar(sigma).tail(1);
    over_param(m, |m| {
        let h = |x: Bracket| one() + series(&tail, 1, x) - m;
        solve_expanding(h, true, opts)
    })
}

/// `g_σ(m)`: the root `x > 1` of `m/(x-1) = 1 + Σ_{k≥0} u_k x^{-k-1}`, `u = σ(1̄)`.
pub fn g_sigma(sigma: &Sigma, m: Bracket, opts: SolveOptions) -> Result<Bracket, SolveError> {
    let u = sigma_one_bar(sigma);
    over_param(m, |m| {
        let h = |x: Bracket| m / (x - one()) - one() - series(&u, 1, x);
        solve_expanding(h, true, opts)
    })
}

/// The crossing `f_σ(μ) = g_σ(μ) = β_σ`, solved directly in `β`.
pub fn mu_beta_sigma(sigma: &Sigma, opts: SolveOptions) -> Result<(Bracket, Bracket), SolveError> {
    let u = sigma_one_bar(sigma);
    let tail = sigma_zero_one_bar(sigma).tail(1);
    let h = |b: Bracket| (b - one()) * (one() + series(&u, 1, b)) - one() - series(&tail, 1, b);
    let beta = solve_monotone(h, Dd::from_f64(1.9), Dd::from_f64(2.7), opts)?;
    let mu = one() + series(&tail, 1, beta);
    Ok((mu, beta))
}

/// The interval `I_σ = [m_{σ(01̄)}, m_{σ(1̄)}]` with its crossing point.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SigmaCell {
    pub sigma: Sigma,
    pub m_left: Bracket,
    pub m_right: Bracket,
    pub mu: Bracket,
    pub beta_sigma: Bracket,
}

impl SigmaCell {
    pub fn new(sigma: &Sigma, opts: SolveOptions) -> Result<SigmaCell, SolveError> {
        let m_left = m_of_word(&sigma_zero_one_bar(sigma), opts)?;
        let m_right = m_of_word(&sigma_one_bar(sigma), opts)?;
        let (mu, beta_sigma) = mu_beta_sigma(sigma, opts)?;
        Ok(SigmaCell { sigma: sigma.clone(), m_left, m_right, mu, beta_sigma })
    }

    pub fn contains(&self, m: Bracket, slack: f64) -> bool {
        m.lo() >= self.m_left.lo().nudge(-slack) && m.hi() <= self.m_right.hi().nudge(slack)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SolveOptions {
        SolveOptions { tol: 1e-24, max_iter: 400 }
    }

    fn ep(s: &str) -> EpWord {
        s.parse().unwrap()
    }

    #[test]
    fn m_of_simple_words() {
        assert_eq!(m_of_word(&ep("(0)"), opts()).unwrap(), one());
        let x2 = m_of_word(&ep("0(1)"), opts()).unwrap();
        // x^3 = x + 1 with x = sqrt(m)
        let x = x2.sqrt();
        assert!((x * x * x - x - one()).within(Bracket::from_f64(0.0), 1e-20));
        let phi2 = m_of_word(&ep("(1)"), opts()).unwrap();
        let expected = (Bracket::from_f64(3.0) + Bracket::from_f64(5.0).sqrt()) / Bracket::from_f64(2.0);
        assert!(phi2.within(expected, 1e-20));
    }

    #[test]
    fn f_branch_closed_form_for_identity() {
        let id = Sigma::identity();
        let v = f_sigma(&id, Bracket::from_ratio(9, 5), opts()).unwrap();
        assert!(v.within(Bracket::from_f64(2.25), 1e-20));
        let v = f_sigma(&id, Bracket::from_f64(2.0), opts()).unwrap();
        assert!(v.within(Bracket::from_f64(2.0), 1e-20));
    }

    #[test]
    fn g_branch_examples() {
        let v = g_sigma(&Sigma::identity(), Bracket::from_f64(1.7), opts()).unwrap();
        assert!(v.within(Bracket::from_f64(1.7), 1e-20));
        let t1 = Sigma::tau(1);
        let v = g_sigma(&t1, Bracket::from_ratio(4, 3), opts()).unwrap();
        assert!(v.within(Bracket::from_f64(2.0), 1e-20));
        // β² - 1.5β - 1.5 = 0
        let expected = (Bracket::from_f64(1.5) + Bracket::from_f64(8.25).sqrt()) / Bracket::from_f64(2.0);
        let v = g_sigma(&t1, Bracket::from_f64(1.5), opts()).unwrap();
        assert!(v.within(expected, 1e-20));
    }

    #[test]
    fn crossing_points_of_single_substitutions() {
        for h in 0..=6u32 {
            let (mu, beta) = mu_beta_sigma(&Sigma::tau(h), opts()).unwrap();
            let p = (1u64 << (h + 1)) as i64;
            assert!(mu.within(Bracket::from_ratio(p, p - 1), 1e-20), "h={h} mu={mu}");
            assert!(beta.within(Bracket::from_f64(2.0), 1e-20));
        }
    }

    #[test]
    fn parametric_bracket_is_hull() {
        let m = Bracket::new(Dd::from_f64(1.79), Dd::from_f64(1.81));
        let v = f_sigma(&Sigma::identity(), m, opts()).unwrap();
        assert!(v.contains(Dd::from_f64(2.25)));
        assert!(v.width() > 0.02);
    }
}
