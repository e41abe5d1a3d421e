//! Finite-x evaluation of the sum chain behind the infinitude argument for
//! square-flanked primes.
//!
//! `S(x)` weights each prime `p < x` by `ln p` times the number of admissible
//! square divisors of `p + 2` and `p - 2`; the restricted sum keeps only odd
//! coprime pairs from the window and is a sum of Chebyshev `θ` values over
//! the CRT classes `a_{m,n}`. Every inequality in the chain is exposed as a
//! check rather than assumed.

use crate::arith::{
    euler_phi, primes_below, square_root_parts, theta_psi, ArithError, CompensatedSum,
};
use crate::search::{
    grh_interval, pairs_in, OpenLogInterval, PairCandidate, SearchError, GUARD_BAND,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("invalid exponents: {0}")]
    InvalidConfig(String),
    #[error("window too large at x = {x}: (ln x)^B >= sqrt(x - 2)")]
    WindowTooLarge { x: u64 },
    #[error("x = {x} is below the minimum {min}")]
    XTooSmall { x: u64, min: u64 },
    #[error("S < S_restricted at x = {x}")]
    ChainViolated { x: u64 },
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `(2 - ζ(2)) / 4` with `ζ(2) = π²/6`.
pub fn floor_constant() -> f64 {
    (2.0 - PI * PI / 6.0) / 4.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessConfig {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x_grid: Vec<u64>,
    /// Testing hook: replaces the `(ln x)`-window by a fixed pair set.
    pub forced_pairs: Option<Vec<PairCandidate>>,
}

impl HarnessConfig {
    /// `B` defaults to `1.5 A` and `C` to `7.5 A + 1`.
    pub fn new(
        a: f64,
        b: Option<f64>,
        c: Option<f64>,
        x_grid: Vec<u64>,
    ) -> Result<Self, AnalyticError> {
        let b = b.unwrap_or(1.5 * a);
        let c = c.unwrap_or(5.0 * a * 1.5 + 1.0);
        let bad = |s: &str| Err(AnalyticError::InvalidConfig(s.to_string()));
        if !(a > 0.0) {
            return bad("A > 0 violated");
        }
        if !(a < b) {
            return bad("A < B violated");
        }
        if !(b < 2.0 * a) {
            return bad("B < 2A violated");
        }
        if !(c > 4.0 * b) {
            return bad("C > 4B violated");
        }
        check_grid(&x_grid)?;
        Ok(Self {
            a,
            b,
            c,
            x_grid,
            forced_pairs: None,
        })
    }

    pub fn with_forced_window(mut self, pairs: &[(u64, u64)]) -> Result<Self, AnalyticError> {
        self.forced_pairs = Some(forced_candidates(pairs)?);
        Ok(self)
    }
}

fn check_grid(grid: &[u64]) -> Result<(), AnalyticError> {
    if grid.is_empty() {
        return Err(AnalyticError::InvalidConfig("empty grid".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(AnalyticError::InvalidConfig(
            "grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Odd coprime pairs only; anything else has no CRT class coprime to `m²n²`.
pub fn forced_candidates(pairs: &[(u64, u64)]) -> Result<Vec<PairCandidate>, AnalyticError> {
    pairs
        .iter()
        .map(|&(m, n)| {
            PairCandidate::new(m, n).ok_or_else(|| {
                AnalyticError::InvalidConfig(format!(
                    "forced pair ({m},{n}) must be odd and coprime"
                ))
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrhConfig {
    pub epsilon: f64,
    pub alpha: f64,
    pub x_grid: Vec<u64>,
}

impl GrhConfig {
    pub fn new(epsilon: f64, alpha: f64, x_grid: Vec<u64>) -> Result<Self, AnalyticError> {
        grh_interval(3, epsilon, alpha)?;
        check_grid(&x_grid)?;
        Ok(Self {
            epsilon,
            alpha,
            x_grid,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermBreakdown {
    pub x: u64,
    pub s: f64,
    pub s_restricted: f64,
    pub main_term: f64,
    pub asymptotic_floor: f64,
    pub error_budget: f64,
    pub log2_budget: f64,
    pub pair_count: usize,
    /// Pairs came from the testing hook; `S >= S_restricted` is not implied.
    pub forced: bool,
}

impl TermBreakdown {
    pub fn chain_holds(&self) -> bool {
        self.s + 1e-9 * self.s.abs().max(1.0) >= self.s_restricted
    }

    /// `main_term - log2_budget`.
    pub fn lower_bound_proxy(&self) -> f64 {
        self.main_term - self.log2_budget
    }

    /// `main_term / asymptotic_floor`; report only.
    pub fn floor_ratio(&self) -> f64 {
        self.main_term / self.asymptotic_floor
    }
}

fn count_divisors_above(root: u64, exceeds: impl Fn(u64) -> bool) -> u64 {
    let mut count = 0;
    let mut d = 1;
    while d * d <= root {
        if root % d == 0 {
            count += exceeds(d) as u64;
            if d * d != root {
                count += exceeds(root / d) as u64;
            }
        }
        d += 1;
    }
    count
}

/// `Σ ln p · #{m : m² | p+2, ln m > t(p)} · #{n : n² | p-2, ln n > t(p)}`
/// over primes `3 <= p < x`, for a log-threshold `t`.
fn weighted_sum_by(x: u64, ln_threshold: impl Fn(u64) -> f64 + Sync) -> f64 {
    let roots = square_root_parts(x + 1);
    let primes = primes_below(x);
    let terms: Vec<f64> = primes
        .par_iter()
        .filter(|&&p| p >= 3)
        .map(|&p| {
            let t = ln_threshold(p);
            let above = |m: u64| (m as f64).ln() - t > GUARD_BAND;
            let cm = count_divisors_above(roots[(p + 2) as usize] as u64, above);
            if cm == 0 {
                return 0.0;
            }
            let cn = count_divisors_above(roots[(p - 2) as usize] as u64, above);
            (p as f64).ln() * (cm * cn) as f64
        })
        .collect();
    terms.into_iter().collect::<CompensatedSum>().value()
}

pub fn weighted_sum(x: u64, a: f64) -> Result<f64, AnalyticError> {
    if x < 7 {
        return Err(AnalyticError::XTooSmall { x, min: 7 });
    }
    Ok(weighted_sum_by(x, |p| a * (p as f64).ln().ln()))
}

/// Same weights with thresholds `p^ε`.
pub fn grh_weighted_sum(x: u64, epsilon: f64) -> Result<f64, AnalyticError> {
    if x < 7 {
        return Err(AnalyticError::XTooSmall { x, min: 7 });
    }
    Ok(weighted_sum_by(x, |p| epsilon * (p as f64).ln()))
}

fn log_window(x: u64, a: f64, b: f64) -> Result<OpenLogInterval, AnalyticError> {
    if x < 3 {
        return Err(AnalyticError::XTooSmall { x, min: 3 });
    }
    let lnln = (x as f64).ln().ln();
    if b * lnln >= 0.5 * ((x - 2) as f64).ln() {
        return Err(AnalyticError::WindowTooLarge { x });
    }
    Ok(OpenLogInterval {
        ln_lo: a * lnln,
        ln_hi: b * lnln,
    })
}

/// Pairs of the `(ln x)^A, (ln x)^B` window.
pub fn window_pairs(x: u64, a: f64, b: f64) -> Result<Vec<PairCandidate>, AnalyticError> {
    Ok(pairs_in(&log_window(x, a, b)?))
}

/// `Σ θ(x; m²n², a_{m,n})` over the given pairs.
pub fn restricted_sum_for_pairs(x: u64, pairs: &[PairCandidate]) -> Result<f64, AnalyticError> {
    let thetas = pairs
        .par_iter()
        .map(|c| theta_psi(x, c.class).map(|t| t.theta))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(thetas.into_iter().collect::<CompensatedSum>().value())
}

pub fn restricted_sum(x: u64, a: f64, b: f64) -> Result<f64, AnalyticError> {
    restricted_sum_for_pairs(x, &window_pairs(x, a, b)?)
}

fn phi_square_product(c: &PairCandidate) -> u128 {
    // coprime: φ(m²n²) = m φ(m) · n φ(n)
    (c.m as u128 * euler_phi(c.m) as u128) * (c.n as u128 * euler_phi(c.n) as u128)
}

/// `Σ x / φ(m²n²)` accumulated exactly.
pub fn main_term_exact(x: u64, pairs: &[PairCandidate]) -> BigRational {
    pairs.iter().fold(BigRational::zero(), |acc, c| {
        acc + BigRational::new(BigInt::from(x), BigInt::from(phi_square_product(c)))
    })
}

pub fn main_term_float(x: u64, pairs: &[PairCandidate]) -> f64 {
    pairs
        .iter()
        .map(|c| x as f64 / phi_square_product(c) as f64)
        .collect::<CompensatedSum>()
        .value()
}

pub fn main_term_for_pairs(x: u64, pairs: &[PairCandidate]) -> f64 {
    main_term_exact(x, pairs).to_f64().unwrap_or(f64::NAN)
}

pub fn main_term(x: u64, a: f64, b: f64) -> Result<f64, AnalyticError> {
    Ok(main_term_for_pairs(x, &window_pairs(x, a, b)?))
}

/// `((2 - ζ(2))/4) · x / (ln x)^(2A)`.
pub fn asymptotic_floor(x: f64, a: f64) -> f64 {
    floor_constant() * x / x.ln().powf(2.0 * a)
}

/// `((2 - ζ(2))/4) · x^(1 - 2ε)`.
pub fn grh_asymptotic_floor(x: f64, epsilon: f64) -> f64 {
    floor_constant() * x.powf(1.0 - 2.0 * epsilon)
}

/// Checks `∫_a^{b+1} ≤ Σ_{n=a}^{b} 1/(2n+1)² ≤ ∫_a^b + 1/(2a+1)²` for
/// `dt/(2t+1)²`, with antiderivative `-1/(2(2t+1))`.
pub fn sandwich_check(a: u64, b: u64) -> bool {
    assert!(1 <= a && a <= b, "sandwich_check needs 1 <= a <= b");
    let prim = |t: f64| -1.0 / (2.0 * (2.0 * t + 1.0));
    let (af, bf) = (a as f64, b as f64);
    let lower = prim(bf + 1.0) - prim(af);
    let upper = prim(bf) - prim(af) + 1.0 / ((2.0 * af + 1.0) * (2.0 * af + 1.0));
    let sum = (a..=b)
        .map(|n| {
            let k = (2 * n + 1) as f64;
            1.0 / (k * k)
        })
        .collect::<CompensatedSum>()
        .value();
    let tol = 4.0 * f64::EPSILON * upper;
    lower <= sum + tol && sum <= upper + tol
}

/// `θ(x; m²n², a_{m,n}) - x/φ(m²n²)` for one pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDeviation {
    pub m: u64,
    pub n: u64,
    pub theta: f64,
    pub expected: f64,
    pub deviation: f64,
}

pub fn pair_deviations(
    x: u64,
    pairs: &[PairCandidate],
) -> Result<Vec<PairDeviation>, AnalyticError> {
    pairs
        .par_iter()
        .map(|c| {
            let theta = theta_psi(x, c.class)?.theta;
            let expected = x as f64 / phi_square_product(c) as f64;
            Ok(PairDeviation {
                m: c.m,
                n: c.n,
                theta,
                expected,
                deviation: theta - expected,
            })
        })
        .collect()
}

fn finish_row(
    x: u64,
    s: f64,
    pairs: &[PairCandidate],
    asymptotic_floor: f64,
    per_pair_budget: f64,
    forced: bool,
) -> Result<TermBreakdown, AnalyticError> {
    let row = TermBreakdown {
        x,
        s,
        s_restricted: restricted_sum_for_pairs(x, pairs)?,
        main_term: main_term_for_pairs(x, pairs),
        asymptotic_floor,
        error_budget: pairs.len() as f64 * per_pair_budget,
        log2_budget: pairs.len() as f64 * std::f64::consts::LN_2,
        pair_count: pairs.len(),
        forced,
    };
    if !forced && !row.chain_holds() {
        return Err(AnalyticError::ChainViolated { x });
    }
    Ok(row)
}

fn chain_row(cfg: &HarnessConfig, x: u64) -> Result<TermBreakdown, AnalyticError> {
    let pairs = match &cfg.forced_pairs {
        Some(p) => p.clone(),
        None => window_pairs(x, cfg.a, cfg.b)?,
    };
    let s = weighted_sum(x, cfg.a)?;
    let lnx = (x as f64).ln();
    finish_row(
        x,
        s,
        &pairs,
        asymptotic_floor(x as f64, cfg.a),
        x as f64 / lnx.powf(cfg.c),
        cfg.forced_pairs.is_some(),
    )
}

/// One row per grid point, in grid order; failures stay per-row.
pub fn chain_report(cfg: &HarnessConfig) -> Vec<Result<TermBreakdown, AnalyticError>> {
    cfg.x_grid.par_iter().map(|&x| chain_row(cfg, x)).collect()
}

fn grh_row(cfg: &GrhConfig, x: u64) -> Result<TermBreakdown, AnalyticError> {
    let pairs = pairs_in(&grh_interval(x, cfg.epsilon, cfg.alpha)?);
    let s = grh_weighted_sum(x, cfg.epsilon)?;
    let xf = x as f64;
    finish_row(
        x,
        s,
        &pairs,
        grh_asymptotic_floor(xf, cfg.epsilon),
        xf.sqrt() * xf.ln().powi(2),
        false,
    )
}

pub fn grh_chain_report(cfg: &GrhConfig) -> Vec<Result<TermBreakdown, AnalyticError>> {
    cfg.x_grid.par_iter().map(|&x| grh_row(cfg, x)).collect()
}

pub const CSV_HEADER: &str = "x,S,S_restricted,main_term,floor,error_budget,log2_budget,pair_count";

/// Twelve significant digits; plain notation for moderate magnitudes.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}

pub fn csv_row(row: &TermBreakdown) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        row.x,
        format_sig12(row.s),
        format_sig12(row.s_restricted),
        format_sig12(row.main_term),
        format_sig12(row.asymptotic_floor),
        format_sig12(row.error_budget),
        format_sig12(row.log2_budget),
        row.pair_count
    )
}

pub fn to_csv(rows: &[TermBreakdown]) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for r in rows {
        writeln!(out, "{}", csv_row(r)).unwrap();
    }
    out
}
