//! Constructive search for square-flanked primes.
//!
//! A prime `p` is square-flanked at level `A` when `p + 2` and `p - 2` both
//! have a square divisor whose root exceeds `(ln p)^A`. Two independent
//! routes find them: [`find_flanked_primes`] walks the CRT progressions
//! `p ≡ -2 (mod m²)`, `p ≡ 2 (mod n²)` for odd coprime `(m, n)` in a window,
//! and [`direct_scan`] factors the neighbours of every prime below a bound.

use crate::arith::{
    crt_pair, gcd, is_prime, primes_below, primes_in_ap, square_part, square_root_parts, Congruence,
};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Band used when comparing `(ln p)^A` or `x^ε` against integer witnesses.
/// Values inside the band count as ties and fail the strict inequality.
pub const GUARD_BAND: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("invalid search window: {0}")]
    InvalidWindow(String),
    #[error("invalid GRH exponents: {0}")]
    InvalidGrhExponents(String),
    #[error("malformed record: {0}")]
    MalformedRecord(String),
}

/// `ln m > ln_bound` with ties (within [`GUARD_BAND`]) excluded.
fn log_above(m: u64, ln_bound: f64) -> bool {
    (m as f64).ln() - ln_bound > GUARD_BAND
}

fn log_below(m: u64, ln_bound: f64) -> bool {
    ln_bound - (m as f64).ln() > GUARD_BAND
}

/// `(ln p)^a < m`, evaluated as `a · ln ln p < ln m`.
pub fn exceeds_log_power(m: u64, p: u64, a: f64) -> bool {
    p >= 3 && log_above(m, a * (p as f64).ln().ln())
}

/// The open interval `(exp(ln_lo), exp(ln_hi))`, kept in log space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpenLogInterval {
    pub ln_lo: f64,
    pub ln_hi: f64,
}

impl OpenLogInterval {
    pub fn lower(&self) -> f64 {
        self.ln_lo.exp()
    }

    pub fn upper(&self) -> f64 {
        self.ln_hi.exp()
    }

    pub fn contains(&self, m: u64) -> bool {
        m >= 1 && log_above(m, self.ln_lo) && log_below(m, self.ln_hi)
    }

    /// Odd integers strictly inside the interval, increasing.
    pub fn odd_members(&self) -> Vec<u64> {
        if self.ln_hi <= self.ln_lo || self.ln_hi <= 0.0 {
            return Vec::new();
        }
        let lo = self.lower().floor().max(1.0) as u64;
        let hi = self.upper().ceil() as u64;
        (lo..=hi)
            .filter(|m| m % 2 == 1 && self.contains(*m))
            .collect()
    }
}

/// Search parameters: threshold exponent `A`, upper exponent `B`, bound `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchWindow {
    a: f64,
    b: f64,
    x: u64,
}

impl SearchWindow {
    /// Requires `0 < A < B < 2A` and `(ln x)^B < sqrt(x - 2)`.
    pub fn new(a: f64, b: f64, x: u64) -> Result<Self, SearchError> {
        if !(a.is_finite() && a > 0.0) {
            return Err(SearchError::InvalidWindow("A > 0 violated".into()));
        }
        if !(b > a) {
            return Err(SearchError::InvalidWindow("A < B violated".into()));
        }
        if !(b < 2.0 * a) {
            return Err(SearchError::InvalidWindow("B < 2A violated".into()));
        }
        if x < 3 {
            return Err(SearchError::InvalidWindow("x >= 3 violated".into()));
        }
        let w = SearchWindow { a, b, x };
        if !(b * (x as f64).ln().ln() < 0.5 * ((x - 2) as f64).ln()) {
            return Err(SearchError::InvalidWindow(
                "(ln x)^B < sqrt(x - 2) violated".into(),
            ));
        }
        Ok(w)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    /// `((ln x)^A, (ln x)^B)` in log space.
    pub fn interval(&self) -> OpenLogInterval {
        let lnln = (self.x as f64).ln().ln();
        OpenLogInterval {
            ln_lo: self.a * lnln,
            ln_hi: self.b * lnln,
        }
    }
}

/// An odd coprime pair together with its CRT class `a_{m,n} mod m²n²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairCandidate {
    pub m: u64,
    pub n: u64,
    pub class: Congruence,
}

impl PairCandidate {
    /// The class `≡ -2 mod m²`, `≡ 2 mod n²`. `None` unless `m`, `n` are odd
    /// and coprime (the overflow case is also `None`).
    pub fn new(m: u64, n: u64) -> Option<Self> {
        if m % 2 == 0 || n % 2 == 0 || gcd(m, n) != 1 {
            return None;
        }
        let m2 = m.checked_mul(m)?;
        let n2 = n.checked_mul(n)?;
        let class = crt_pair(Congruence::new(-2, m2).ok()?, Congruence::new(2, n2).ok()?).ok()?;
        Some(PairCandidate { m, n, class })
    }
}

/// Odd coprime pairs with both coordinates in `interval`, lexicographic.
pub fn pairs_in(interval: &OpenLogInterval) -> Vec<PairCandidate> {
    let members = interval.odd_members();
    members
        .iter()
        .flat_map(|&m| members.iter().map(move |&n| (m, n)))
        .filter_map(|(m, n)| PairCandidate::new(m, n))
        .collect()
}

pub fn enumerate_pairs(window: &SearchWindow) -> Vec<PairCandidate> {
    pairs_in(&window.interval())
}

/// Summary of a window, printed by the CLI when a search comes back empty.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowDiagnostic {
    pub lower: f64,
    pub upper: f64,
    pub odd_values: Vec<u64>,
    pub pair_count: usize,
}

impl WindowDiagnostic {
    pub fn of(interval: &OpenLogInterval) -> Self {
        WindowDiagnostic {
            lower: interval.lower(),
            upper: interval.upper(),
            odd_values: interval.odd_members(),
            pair_count: pairs_in(interval).len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pair_count == 0
    }
}

impl fmt::Display for WindowDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "window ({:.6}, {:.6}): odd values {:?}, {} coprime pair(s)",
            self.lower, self.upper, self.odd_values, self.pair_count
        )?;
        if self.is_empty() {
            write!(f, " [EMPTY WINDOW]")?;
        }
        Ok(())
    }
}

/// A prime with square witnesses on both sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareFlankedPrime {
    pub p: u64,
    /// `m_witness² | p + 2`
    pub m_witness: u64,
    /// `n_witness² | p - 2`
    pub n_witness: u64,
    pub threshold_exponent: f64,
}

impl SquareFlankedPrime {
    /// Recomputes primality, both divisibilities and both thresholds.
    pub fn is_sound(&self) -> bool {
        let (p, m, n) = (self.p, self.m_witness, self.n_witness);
        p >= 3
            && is_prime(p)
            && m.checked_mul(m).is_some_and(|m2| (p + 2) % m2 == 0)
            && n.checked_mul(n).is_some_and(|n2| (p - 2) % n2 == 0)
            && exceeds_log_power(m, p, self.threshold_exponent)
            && exceeds_log_power(n, p, self.threshold_exponent)
    }
}

impl fmt::Display for SquareFlankedPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.p, self.m_witness, self.n_witness, self.threshold_exponent
        )
    }
}

impl FromStr for SquareFlankedPrime {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SearchError::MalformedRecord(s.to_string());
        let fields: Vec<&str> = s.trim().split(',').collect();
        if fields.len() != 4 {
            return Err(bad());
        }
        Ok(SquareFlankedPrime {
            p: fields[0].parse().map_err(|_| bad())?,
            m_witness: fields[1].parse().map_err(|_| bad())?,
            n_witness: fields[2].parse().map_err(|_| bad())?,
            threshold_exponent: fields[3].parse().map_err(|_| bad())?,
        })
    }
}

/// Walks the CRT progression of every candidate pair and collects primes
/// `p < x`, reporting the full square parts of `p ± 2` as witnesses.
pub fn flanked_primes_for_pairs(
    pairs: &[PairCandidate],
    x: u64,
    a: f64,
) -> Vec<SquareFlankedPrime> {
    let found: Vec<SquareFlankedPrime> = pairs
        .par_iter()
        .flat_map_iter(|pair| {
            primes_in_ap(x, pair.class).map(move |p| SquareFlankedPrime {
                p,
                m_witness: square_part(p + 2).square_root_part,
                n_witness: square_part(p - 2).square_root_part,
                threshold_exponent: a,
            })
        })
        .collect();
    let mut best: BTreeMap<u64, SquareFlankedPrime> = BTreeMap::new();
    for rec in found {
        best.entry(rec.p)
            .and_modify(|cur| {
                if (rec.m_witness, rec.n_witness) > (cur.m_witness, cur.n_witness) {
                    *cur = rec;
                }
            })
            .or_insert(rec);
    }
    best.into_values().collect()
}

pub fn find_flanked_primes(window: &SearchWindow) -> Vec<SquareFlankedPrime> {
    flanked_primes_for_pairs(&enumerate_pairs(window), window.x, window.a)
}

/// Brute-force reference: every prime `3 <= p <= limit` whose neighbours'
/// square parts both exceed `(ln p)^A`.
pub fn direct_scan(limit: u64, a: f64) -> Vec<SquareFlankedPrime> {
    if limit < 3 {
        return Vec::new();
    }
    let roots = square_root_parts(limit + 2);
    primes_below(limit + 1)
        .into_iter()
        .filter(|&p| p >= 3)
        .filter_map(|p| {
            let m = roots[(p + 2) as usize] as u64;
            let n = roots[(p - 2) as usize] as u64;
            (exceeds_log_power(m, p, a) && exceeds_log_power(n, p, a)).then_some(
                SquareFlankedPrime {
                    p,
                    m_witness: m,
                    n_witness: n,
                    threshold_exponent: a,
                },
            )
        })
        .collect()
}

/// The window `(x^ε, x^α)`; requires `0 < ε < 1/8` and `ε < α < 1/4 - ε`.
pub fn grh_interval(x: u64, epsilon: f64, alpha: f64) -> Result<OpenLogInterval, SearchError> {
    if !(epsilon > 0.0) {
        return Err(SearchError::InvalidGrhExponents("ε > 0 violated".into()));
    }
    if !(epsilon < 0.125) {
        return Err(SearchError::InvalidGrhExponents("ε < 1/8 violated".into()));
    }
    if !(alpha > epsilon) {
        return Err(SearchError::InvalidGrhExponents("ε < α violated".into()));
    }
    if !(alpha < 0.25 - epsilon) {
        return Err(SearchError::InvalidGrhExponents(
            "α < 1/4 - ε violated".into(),
        ));
    }
    let lnx = (x as f64).ln();
    Ok(OpenLogInterval {
        ln_lo: epsilon * lnx,
        ln_hi: alpha * lnx,
    })
}

pub fn grh_window_pairs(
    x: u64,
    epsilon: f64,
    alpha: f64,
) -> Result<Vec<PairCandidate>, SearchError> {
    Ok(pairs_in(&grh_interval(x, epsilon, alpha)?))
}
