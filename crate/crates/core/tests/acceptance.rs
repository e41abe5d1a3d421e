//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use num_traits::ToPrimitive;
use prational::analytic::{
    asymptotic_floor, chain_report, forced_candidates, main_term_exact, main_term_float,
    restricted_sum_for_pairs, sandwich_check, window_pairs, HarnessConfig,
};
use prational::arith::{euler_phi, is_prime, theta_psi, Congruence};
use prational::certify::{certify_triquadratic, verify_certificate};
use prational::quad::{
    class_number_imaginary, class_number_imaginary_oracle, descriptor, explicit_unit_family,
    explicit_units, is_fundamental, louboutin_bound, p_rationality, printed_louboutin_bound,
    ClassNumberEvidence, UnitRelation, VerdictStatus, EULER_GAMMA,
};
use prational::search::{direct_scan, find_flanked_primes, SearchWindow};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || {
        format!(
            "{what} took {:.2}s (limit {limit_s}s)",
            elapsed.as_secs_f64()
        )
    })
}

fn sieve(limit: usize) -> Vec<bool> {
    let mut is = vec![true; limit];
    is[0] = false;
    is[1] = false;
    let mut i = 2;
    while i * i < limit {
        if is[i] {
            for j in (i * i..limit).step_by(i) {
                is[j] = false;
            }
        }
        i += 1;
    }
    is
}

fn square_root_part_by_trial(n: u64) -> u64 {
    (1..)
        .take_while(|m| m * m <= n)
        .filter(|m| n % (m * m) == 0)
        .last()
        .unwrap_or(1)
}

fn c1_counterexample() -> Outcome {
    let start = Instant::now();
    let status = |d: i64| -> Result<VerdictStatus, String> {
        let f = descriptor(d).map_err(|e| e.to_string())?;
        Ok(p_rationality(&f, 5).map_err(|e| e.to_string())?.status)
    };
    let got = [status(2)?, status(19)?, status(38)?];
    let elapsed = start.elapsed();
    let want = [
        VerdictStatus::Proved,
        VerdictStatus::Proved,
        VerdictStatus::Refuted,
    ];
    ensure(got == want, || format!("verdicts {got:?}"))?;
    within(elapsed, 1.0, "verdicts")?;
    Ok(format!(
        "Q(√2), Q(√19), Q(√38) at p=5: {}, {}, {} in {:.3}s",
        got[0],
        got[1],
        got[2],
        elapsed.as_secs_f64()
    ))
}

fn c2_search() -> Outcome {
    let small = direct_scan(1000, 0.5);
    let has = |p, m, n| {
        small
            .iter()
            .any(|r| r.p == p && r.m_witness == m && r.n_witness == n)
    };
    ensure(has(277, 3, 5), || "277 (3,5) missing".into())?;
    ensure(has(727, 27, 5), || "727 (27,5) missing".into())?;
    // independent witnesses by trial division
    for (p, m, n) in [(277u64, 3u64, 5u64), (727, 27, 5)] {
        ensure(
            square_root_part_by_trial(p + 2) == m && square_root_part_by_trial(p - 2) == n,
            || format!("trial division disagrees at {p}"),
        )?;
    }
    let window = SearchWindow::new(0.5, 0.9, 1000).map_err(|e| e.to_string())?;
    let crt = find_flanked_primes(&window);
    ensure(crt.iter().any(|r| r.p == 277), || {
        "CRT window misses 277".into()
    })?;

    let mut counts = Vec::new();
    let mut t_big = Duration::ZERO;
    for x in [1_000u64, 10_000, 100_000] {
        let start = Instant::now();
        counts.push(direct_scan(x, 0.5).len());
        t_big = start.elapsed();
    }
    ensure(counts.windows(2).all(|w| w[0] < w[1]), || {
        format!("counts {counts:?}")
    })?;
    within(t_big, 10.0, "direct_scan(10^5)")?;
    Ok(format!(
        "277 and 727 found, CRT window (0.5,0.9,1000) returns 277, counts {counts:?}, 10^5 scan {:.3}s",
        t_big.as_secs_f64()
    ))
}

fn c3_class_number_oracles() -> Outcome {
    let start = Instant::now();
    let ds: Vec<i64> = (-9_999i64..0).filter(|&d| is_fundamental(d)).collect();
    let mismatches: Vec<i64> = ds
        .par_iter()
        .filter(|&&d| class_number_imaginary(d).ok() != class_number_imaginary_oracle(d).ok())
        .copied()
        .collect();
    let elapsed = start.elapsed();
    ensure(mismatches.is_empty(), || {
        format!("mismatches at {:?}", &mismatches[..mismatches.len().min(5)])
    })?;
    within(elapsed, 60.0, "oracle sweep")?;
    Ok(format!(
        "{} fundamental D in (-10^4, 0), 0 mismatches, {:.2}s",
        ds.len(),
        elapsed.as_secs_f64()
    ))
}

/// The bound as stated, `(w√d/4π)(ln d + 1 + γ − ln π)`, does not dominate
/// h everywhere; this reports every violation and checks that the corrected
/// constant `2 + γ − ln π` does.
fn c4_louboutin() -> Outcome {
    let ds: Vec<i64> = (-99_999i64..0).filter(|&d| is_fundamental(d)).collect();
    let hs: Vec<(i64, u64)> = ds
        .par_iter()
        .map(|&d| (d, class_number_imaginary(d).expect("fundamental")))
        .collect();
    let printed: Vec<(i64, u64)> = hs
        .iter()
        .filter(|&&(d, h)| printed_louboutin_bound(d) < h as f64)
        .copied()
        .collect();
    let corrected = hs
        .iter()
        .filter(|&&(d, h)| louboutin_bound(d) < h as f64)
        .count();
    let c = 1.0 + EULER_GAMMA - std::f64::consts::PI.ln();
    ensure(c <= 0.5, || format!("1 + γ - ln π = {c}"))?;
    ensure(corrected == 0, || {
        format!("corrected bound below h at {corrected} discriminants")
    })?;
    let summary = format!(
        "1 + γ - ln π = {c:.9} ≤ 1/2; bound with 2 + γ - ln π dominates all {} fundamental D in (-10^5, 0)",
        ds.len()
    );
    if printed.is_empty() {
        return Ok(summary);
    }
    let worst = printed
        .iter()
        .map(|&(d, h)| (d, h, h as f64 / printed_louboutin_bound(d)))
        .max_by(|x, y| x.2.total_cmp(&y.2))
        .unwrap();
    Err(format!(
        "stated bound below h at {} of {} fundamental D, e.g. {:?}; worst D = {} (h = {}, ratio {:.4}); {summary}",
        printed.len(),
        ds.len(),
        printed.iter().take(6).map(|&(d, h)| (d, h)).collect::<Vec<_>>(),
        worst.0,
        worst.1,
        worst.2
    ))
}

fn c5_units() -> Outcome {
    let primes: Vec<u64> = (5u64..=10_000).filter(|&p| is_prime(p)).collect();
    for &p in &primes {
        let units = explicit_units(p).map_err(|e| format!("p {p}: {e}"))?;
        for (d, u) in &units {
            // exact recomputation of u² - k v² = denom² over the integers
            let k = num_bigint::BigInt::from(u.kernel);
            let lhs = &u.u * &u.u - k * &u.v * &u.v;
            let rhs = num_bigint::BigInt::from(u.denom * u.denom);
            ensure(lhs == rhs && u.norm == 1, || {
                format!("p {p}, d {d}: norm not 1")
            })?;
        }
    }
    let mut compared = 0;
    for p in (5u64..=100).filter(|&p| is_prime(p)) {
        for r in explicit_unit_family(p).map_err(|e| e.to_string())? {
            if r.d_is_squarefree {
                compared += 1;
                ensure(r.relation == UnitRelation::Equal, || {
                    format!(
                        "p {p}, d {}: {} vs fundamental {}",
                        r.d, r.claimed, r.fundamental
                    )
                })?;
            }
        }
    }
    Ok(format!(
        "{} primes × 3 units of norm 1; {compared} squarefree cases (p ≤ 100) equal the fundamental unit",
        primes.len()
    ))
}

fn c6_certification() -> Outcome {
    let c5 = certify_triquadratic(5).map_err(|e| e.to_string())?;
    ensure(
        c5.subfields
            .iter()
            .all(|v| v.status == VerdictStatus::Proved),
        || "p=5: not all seven verdicts proved".into(),
    )?;
    ensure(verify_certificate(&c5), || {
        "p=5: verification failed".into()
    })?;
    let start = Instant::now();
    let c277 = certify_triquadratic(277).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        c277.subfields
            .iter()
            .all(|v| matches!(v.class_number, ClassNumberEvidence::Exact { .. })),
        || "p=277: some class number not exact".into(),
    )?;
    ensure(verify_certificate(&c277), || {
        "p=277: verification failed".into()
    })?;
    Ok(format!(
        "p=5 {} (7/7 proved, verified); p=277 {} with exact class numbers, verified, {:.3}s",
        c5.conclusion,
        c277.conclusion,
        elapsed.as_secs_f64()
    ))
}

fn c7_theta() -> Outcome {
    const X: u64 = 1_000_000;
    let is = sieve(X as usize);
    let mut worst: (f64, u64, u64) = (0.0, 0, 0);
    let mut classes = 0;
    for q in 1..=30u64 {
        let expected = X as f64 / euler_phi(q) as f64;
        for a in 0..q {
            if num_integer::gcd(a, q) != 1 {
                continue;
            }
            classes += 1;
            let t = theta_psi(X, Congruence::new(a as i128, q).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?
                .theta;
            let rel = (t - expected).abs() / expected;
            if rel > worst.0 {
                worst = (rel, q, a);
            }
            if q == 30 || q == 7 {
                let naive: f64 = (a..X)
                    .step_by(q as usize)
                    .filter(|&n| is[n as usize])
                    .map(|n| (n as f64).ln())
                    .sum();
                ensure((naive - t).abs() < 1e-9 * naive, || {
                    format!("θ mismatch at {a} mod {q}")
                })?;
            }
        }
    }
    ensure(worst.0 < 0.02, || {
        format!(
            "relative error {:.4} at {} mod {}",
            worst.0, worst.2, worst.1
        )
    })?;
    Ok(format!(
        "{classes} classes, q ≤ 30: max relative error {:.5} ({} mod {})",
        worst.0, worst.2, worst.1
    ))
}

fn c8_sum_chain() -> Outcome {
    let mut rows = 0;
    for (a, b) in [(0.5, 0.9), (0.75, 1.4), (1.0, 1.5), (1.0, 1.9)] {
        let cfg = HarnessConfig::new(a, Some(b), None, vec![1_000, 10_000, 100_000, 1_000_000])
            .map_err(|e| e.to_string())?;
        for row in chain_report(&cfg) {
            match row {
                Ok(r) => {
                    ensure(r.s >= r.s_restricted, || {
                        format!("S < S_r at A {a}, x {}", r.x)
                    })?;
                    rows += 1;
                }
                Err(prational::analytic::AnalyticError::WindowTooLarge { .. }) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }

    let mut rng = rand::rngs::StdRng::seed_from_u64(8);
    for _ in 0..10_000 {
        let a = rng.gen_range(1..1_000_000u64);
        let b = a + rng.gen_range(0..1_000u64);
        ensure(sandwich_check(a, b), || {
            format!("sandwich fails at ({a}, {b})")
        })?;
    }

    let mut worst_rel: f64 = 0.0;
    for x in [10_000u64, 1_000_000, 100_000_000] {
        let pairs = window_pairs(x, 0.5, 0.9).map_err(|e| e.to_string())?;
        let exact = main_term_exact(x, &pairs).to_f64().unwrap_or(f64::NAN);
        let float = main_term_float(x, &pairs);
        if exact != 0.0 {
            worst_rel = worst_rel.max((exact - float).abs() / exact);
        }
    }
    ensure(worst_rel <= 1e-9, || {
        format!("main term rel. diff {worst_rel:e}")
    })?;

    // forced window against a double loop over primes and pairs
    let forced = [(3u64, 5u64), (5, 3), (3, 7), (7, 3)];
    let cands = forced_candidates(&forced).map_err(|e| e.to_string())?;
    let x = 100_000u64;
    let is = sieve(x as usize);
    let mut oracle = 0.0;
    for p in (2..x).filter(|&p| is[p as usize]) {
        for &(m, n) in &forced {
            if (p + 2) % (m * m) == 0 && (p - 2) % (n * n) == 0 {
                oracle += (p as f64).ln();
            }
        }
    }
    let got = restricted_sum_for_pairs(x, &cands).map_err(|e| e.to_string())?;
    ensure((got - oracle).abs() <= 1e-9 * oracle, || {
        format!("forced window {got} vs oracle {oracle}")
    })?;
    Ok(format!(
        "{rows} grid rows with S ≥ S_r; 10^4 sandwiches; main term rel. diff {worst_rel:.1e}; forced window = oracle ({got:.6})"
    ))
}

fn c9_asymptotic_report() -> Outcome {
    let grid = vec![10_000u64, 100_000, 1_000_000, 10_000_000];
    let a2 =
        HarnessConfig::new(2.0, Some(2.2), Some(9.0), grid.clone()).map_err(|e| e.to_string())?;
    let mut a2_rows = Vec::new();
    for row in chain_report(&a2) {
        match row {
            Ok(r) => a2_rows.push(r),
            Err(prational::analytic::AnalyticError::WindowTooLarge { .. }) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    ensure(a2_rows.iter().all(|r| r.s_restricted == 0.0), || {
        "A = 2 window populated at desk scale".into()
    })?;
    let a1 = HarnessConfig::new(1.0, None, None, grid.clone()).map_err(|e| e.to_string())?;
    let ratios: Vec<String> = chain_report(&a1)
        .into_iter()
        .filter_map(Result::ok)
        .map(|r| format!("{:.2}", r.floor_ratio()))
        .collect();
    let forced = HarnessConfig::new(1.0, None, None, grid)
        .and_then(|c| c.with_forced_window(&[(3, 5), (5, 3)]))
        .map_err(|e| e.to_string())?;
    let forced_ratios: Vec<String> = chain_report(&forced)
        .into_iter()
        .filter_map(Result::ok)
        .map(|r| format!("{:.1}", r.main_term / asymptotic_floor(r.x as f64, 1.0)))
        .collect();
    Ok(format!(
        "not reproducible at desk scale (report only): A=2 restricted sum 0 on all {} reachable rows; \
         A=1 main/floor {ratios:?}; forced-window main/floor {forced_ratios:?}; covered by criterion 8",
        a2_rows.len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("compositum counterexample at p = 5", c1_counterexample),
        ("flanked-prime search", c2_search),
        ("class-number oracle equivalence", c3_class_number_oracles),
        ("Louboutin dominance", c4_louboutin),
        ("explicit unit family", c5_units),
        ("triquadratic certification", c6_certification),
        ("θ accuracy at x = 10^6", c7_theta),
        ("sum-chain property suite", c8_sum_chain),
        ("asymptotic statements acknowledged", c9_asymptotic_report),
    ];
    // criteria that cannot hold as stated; see README
    const KNOWN_UNATTAINABLE: [usize; 1] = [4];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed.push(i + 1);
                println!("criterion {}: FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    let unexpected: Vec<usize> = failed
        .iter()
        .copied()
        .filter(|c| !KNOWN_UNATTAINABLE.contains(c))
        .collect();
    println!(
        "acceptance: {}/{} passed; failed {:?} (known unattainable {:?})",
        criteria.len() - failed.len(),
        criteria.len(),
        failed,
        KNOWN_UNATTAINABLE
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
