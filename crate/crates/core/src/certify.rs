//! Seven-subfield certificates for `K = Q(sqrt(p(p+2)), sqrt(p(p-2)), i)`.
//!
//! `[K:Q] = 8` is prime to `p`, so `K` is p-rational exactly when each of its
//! seven quadratic subfields is. A certificate stores one verdict per
//! subfield, with the evidence behind it, in a stable `cert-v1` text form.

use crate::arith::{is_prime, square_part};
use crate::quad::{
    descriptor, louboutin_bound, p_rationality_with, ClassNumberEvidence, ClassNumberMethod,
    FundamentalUnit, LocalPowerReport, PRationalityVerdict, QuadError, QuadFieldDescriptor,
    Signature, Splitting, UnitEvidence, VerdictOptions, VerdictStatus,
};
use crate::search::exceeds_log_power;
use num_bigint::BigInt;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::{self, Write};
use thiserror::Error;

pub const SCHEMA: &str = "cert-v1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("p = {0} is not a supported prime (need a prime >= 5)")]
    UnsupportedPrime(u64),
    #[error("p = {p} is not flanked at level A = {a} by the given witnesses")]
    NotFlanked { p: u64, a: f64 },
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("malformed certificate: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conclusion {
    Certified,
    Failed,
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::Certified => "certified",
            Conclusion::Failed => "failed",
            Conclusion::Inconclusive => "inconclusive",
        })
    }
}

impl Conclusion {
    fn from_verdicts<'a>(verdicts: impl IntoIterator<Item = &'a PRationalityVerdict>) -> Self {
        let mut out = Conclusion::Certified;
        for v in verdicts {
            match v.status {
                VerdictStatus::Refuted => return Conclusion::Failed,
                VerdictStatus::Inconclusive => out = Conclusion::Inconclusive,
                VerdictStatus::Proved => {}
            }
        }
        out
    }

    fn reduction_text(&self) -> &'static str {
        match self {
            Conclusion::Certified => {
                "all seven quadratic subfields are p-rational and p does not divide [K:Q] = 8, hence K is p-rational"
            }
            Conclusion::Failed => {
                "a quadratic subfield is not p-rational, hence K is not p-rational"
            }
            Conclusion::Inconclusive => {
                "at least one quadratic subfield is undecided; no conclusion for K"
            }
        }
    }
}

/// `|D(K_i)| <= bound` for one imaginary subfield.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantCheck {
    pub label: String,
    pub abs_discriminant: u64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantChecks {
    pub a: f64,
    pub m_witness: u64,
    pub n_witness: u64,
    /// K5, K6, K7
    pub checks: Vec<DiscriminantCheck>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriquadraticCertificate {
    pub p: u64,
    /// K1..K7 in order
    pub subfields: Vec<PRationalityVerdict>,
    pub discriminant_checks: Option<DiscriminantChecks>,
    pub conclusion: Conclusion,
}

/// The radicands `p(p+2), p(p-2), (p+2)(p-2), -1, -p(p+2), -p(p-2), -(p+2)(p-2)`.
pub fn subfield_radicands(p: u64) -> Result<[i64; 7], CertifyError> {
    let pi = i64::try_from(p).map_err(|_| CertifyError::UnsupportedPrime(p))?;
    let mul = |a: i64, b: i64| a.checked_mul(b).ok_or(CertifyError::UnsupportedPrime(p));
    let k1 = mul(pi, pi + 2)?;
    let k2 = mul(pi, pi - 2)?;
    let k3 = mul(pi + 2, pi - 2)?;
    Ok([k1, k2, k3, -1, -k1, -k2, -k3])
}

fn require_prime(p: u64) -> Result<(), CertifyError> {
    if p < 5 || !is_prime(p) {
        Err(CertifyError::UnsupportedPrime(p))
    } else {
        Ok(())
    }
}

pub fn certify_triquadratic(p: u64) -> Result<TriquadraticCertificate, CertifyError> {
    certify_triquadratic_with(p, VerdictOptions::default())
}

pub fn certify_triquadratic_with(
    p: u64,
    opts: VerdictOptions<'_>,
) -> Result<TriquadraticCertificate, CertifyError> {
    require_prime(p)?;
    let radicands = subfield_radicands(p)?;
    let subfields = radicands
        .par_iter()
        .map(|&d| -> Result<PRationalityVerdict, CertifyError> {
            Ok(p_rationality_with(&descriptor(d)?, p, opts)?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion = Conclusion::from_verdicts(&subfields);
    Ok(TriquadraticCertificate {
        p,
        subfields,
        discriminant_checks: None,
        conclusion,
    })
}

/// Discriminant bounds for K5, K6, K7 using the full square parts of `p ± 2`
/// as witnesses.
pub fn discriminant_bound_check(p: u64, a: f64) -> Result<DiscriminantChecks, CertifyError> {
    require_prime(p)?;
    let m = square_part(p + 2).square_root_part;
    let n = square_part(p - 2).square_root_part;
    discriminant_bound_check_with_witnesses(p, m, n, a)
}

/// `|D(K5)| <= 4p(p+2)/(ln p)^(2A)`, `|D(K6)| <= 4p(p-2)/(ln p)^(2A)` and
/// `|D(K7)| <= 4(p+2)(p-2)/(ln p)^(4A)`, given `m² | p+2`, `n² | p-2` and
/// `m, n > (ln p)^A`.
pub fn discriminant_bound_check_with_witnesses(
    p: u64,
    m: u64,
    n: u64,
    a: f64,
) -> Result<DiscriminantChecks, CertifyError> {
    require_prime(p)?;
    let divides = |w: u64, x: u64| w.checked_mul(w).is_some_and(|w2| x % w2 == 0);
    if !(divides(m, p + 2)
        && divides(n, p - 2)
        && exceeds_log_power(m, p, a)
        && exceeds_log_power(n, p, a))
    {
        return Err(CertifyError::NotFlanked { p, a });
    }
    let r = subfield_radicands(p)?;
    let lnp = (p as f64).ln();
    let pf = p as f64;
    let specs = [
        ("K5", r[4], 4.0 * pf * (pf + 2.0) / lnp.powf(2.0 * a)),
        ("K6", r[5], 4.0 * pf * (pf - 2.0) / lnp.powf(2.0 * a)),
        (
            "K7",
            r[6],
            4.0 * (pf + 2.0) * (pf - 2.0) / lnp.powf(4.0 * a),
        ),
    ];
    let checks = specs
        .iter()
        .map(
            |&(label, d, bound)| -> Result<DiscriminantCheck, CertifyError> {
                let abs_discriminant = descriptor(d)?.discriminant.unsigned_abs();
                Ok(DiscriminantCheck {
                    label: label.to_string(),
                    abs_discriminant,
                    bound,
                    holds: (abs_discriminant as f64) <= bound,
                })
            },
        )
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DiscriminantChecks {
        a,
        m_witness: m,
        n_witness: n,
        checks,
    })
}

/// Recomputes every evidence item with the Dirichlet backend for imaginary
/// class numbers and lists every disagreement. Empty means valid.
pub fn certificate_problems(cert: &TriquadraticCertificate) -> Vec<String> {
    let mut problems = Vec::new();
    if cert.p < 5 || !is_prime(cert.p) {
        problems.push(format!("p = {} is not a prime >= 5", cert.p));
        return problems;
    }
    if cert.subfields.len() != 7 {
        problems.push(format!(
            "expected 7 subfields, found {}",
            cert.subfields.len()
        ));
        return problems;
    }
    let radicands = match subfield_radicands(cert.p) {
        Ok(r) => r,
        Err(e) => {
            problems.push(e.to_string());
            return problems;
        }
    };
    let opts = VerdictOptions {
        imaginary_method: ClassNumberMethod::Dirichlet,
        store: None,
    };
    let rechecked: Vec<Result<PRationalityVerdict, String>> = radicands
        .par_iter()
        .map(|&d| {
            descriptor(d)
                .and_then(|f| p_rationality_with(&f, cert.p, opts))
                .map_err(|e| e.to_string())
        })
        .collect();
    for (i, (stored, fresh)) in cert.subfields.iter().zip(rechecked).enumerate() {
        let label = format!("K{}", i + 1);
        let fresh = match fresh {
            Ok(v) => v,
            Err(e) => {
                problems.push(format!("{label}: {e}"));
                continue;
            }
        };
        if stored.field != fresh.field {
            problems.push(format!("{label}: field descriptor mismatch"));
        }
        if stored.p != cert.p {
            problems.push(format!("{label}: verdict for a different prime"));
        }
        if stored.status != fresh.status {
            problems.push(format!(
                "{label}: status {} but recomputed {}",
                stored.status, fresh.status
            ));
        }
        match (&stored.class_number, &fresh.class_number) {
            (ClassNumberEvidence::Exact { h: a, .. }, ClassNumberEvidence::Exact { h: b, .. }) => {
                if a != b {
                    problems.push(format!("{label}: class number {a} but recomputed {b}"));
                }
            }
            (ClassNumberEvidence::Bound { bound: a }, ClassNumberEvidence::Bound { bound: b }) => {
                if (a - b).abs() > 1e-9 * b.abs().max(1.0) {
                    problems.push(format!("{label}: bound {a} but recomputed {b}"));
                }
            }
            (ClassNumberEvidence::Unavailable, ClassNumberEvidence::Unavailable) => {}
            _ => problems.push(format!("{label}: class number evidence of the wrong kind")),
        }
        if stored.unit != fresh.unit {
            problems.push(format!("{label}: unit evidence mismatch"));
        }
        if let Some(u) = &stored.unit {
            if !u.unit.satisfies_norm_equation() {
                problems.push(format!("{label}: unit fails its norm equation"));
            }
        }
        // the stored status must follow from the stored evidence
        if let Some(expected) = status_from_evidence(stored) {
            if expected != stored.status {
                problems.push(format!("{label}: status does not follow from its evidence"));
            }
        }
    }
    if Conclusion::from_verdicts(&cert.subfields) != cert.conclusion {
        problems.push("conclusion does not match the subfield verdicts".into());
    }
    if let Some(dc) = &cert.discriminant_checks {
        match discriminant_bound_check_with_witnesses(cert.p, dc.m_witness, dc.n_witness, dc.a) {
            Ok(fresh) => {
                if fresh.checks.len() != dc.checks.len()
                    || fresh.checks.iter().zip(&dc.checks).any(|(f, s)| {
                        f.label != s.label
                            || f.abs_discriminant != s.abs_discriminant
                            || f.holds != s.holds
                            || (f.bound - s.bound).abs() > 1e-9 * f.bound.abs().max(1.0)
                    })
                {
                    problems.push("discriminant checks do not re-validate".into());
                }
            }
            Err(e) => problems.push(format!("discriminant checks: {e}")),
        }
    }
    problems
}

fn status_from_evidence(v: &PRationalityVerdict) -> Option<VerdictStatus> {
    let p = v.p;
    Some(match (v.field.signature, &v.class_number) {
        (Signature::Imaginary, ClassNumberEvidence::Exact { h, .. }) => {
            if h % p != 0 {
                VerdictStatus::Proved
            } else {
                VerdictStatus::Inconclusive
            }
        }
        (Signature::Imaginary, ClassNumberEvidence::Bound { bound }) => {
            if *bound < p as f64 {
                VerdictStatus::Proved
            } else {
                VerdictStatus::Inconclusive
            }
        }
        (Signature::Real, ClassNumberEvidence::Exact { h, .. }) => {
            let unit = v.unit.as_ref()?;
            if h % p != 0 && unit.local.some_place_not_pth_power() {
                VerdictStatus::Proved
            } else {
                VerdictStatus::Refuted
            }
        }
        (_, ClassNumberEvidence::Unavailable) => VerdictStatus::Inconclusive,
        _ => return None,
    })
}

pub fn verify_certificate(cert: &TriquadraticCertificate) -> bool {
    certificate_problems(cert).is_empty()
}

impl TriquadraticCertificate {
    /// The `cert-v1` document: `key: value` lines in a fixed order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn fmt::Display| {
            writeln!(out, "{k}: {v}").unwrap();
        };
        kv("schema", &SCHEMA);
        kv("p", &self.p);
        kv("subfields", &self.subfields.len());
        for (i, v) in self.subfields.iter().enumerate() {
            let l = format!("K{}", i + 1);
            kv(&format!("{l}.d"), &v.field.d_input);
            kv(&format!("{l}.kernel"), &v.field.kernel);
            kv(&format!("{l}.discriminant"), &v.field.discriminant);
            kv(&format!("{l}.signature"), &v.field.signature);
            kv(&format!("{l}.status"), &v.status);
            match &v.class_number {
                ClassNumberEvidence::Exact { h, method } => {
                    kv(&format!("{l}.class_number"), h);
                    kv(&format!("{l}.class_number_method"), method);
                }
                ClassNumberEvidence::Bound { bound } => {
                    kv(&format!("{l}.class_number_bound"), bound);
                    kv(
                        &format!("{l}.class_number_method"),
                        &ClassNumberMethod::BoundOnly,
                    );
                }
                ClassNumberEvidence::Unavailable => {
                    kv(&format!("{l}.class_number_method"), &"unavailable");
                }
            }
            if let Some(u) = &v.unit {
                kv(&format!("{l}.unit.u"), &u.unit.u);
                kv(&format!("{l}.unit.v"), &u.unit.v);
                kv(&format!("{l}.unit.denom"), &u.unit.denom);
                kv(&format!("{l}.unit.norm"), &u.unit.norm);
                kv(&format!("{l}.unit.splitting"), &u.local.splitting);
                let places: Vec<&str> = u
                    .local
                    .is_pth_power
                    .iter()
                    .map(|&b| if b { "pth-power" } else { "not-pth-power" })
                    .collect();
                kv(&format!("{l}.unit.places"), &places.join(" "));
            }
        }
        if let Some(dc) = &self.discriminant_checks {
            kv("discriminant.A", &dc.a);
            kv("discriminant.m", &dc.m_witness);
            kv("discriminant.n", &dc.n_witness);
            for c in &dc.checks {
                kv(
                    &format!("discriminant.{}.abs_discriminant", c.label),
                    &c.abs_discriminant,
                );
                kv(&format!("discriminant.{}.bound", c.label), &c.bound);
                kv(&format!("discriminant.{}.holds", c.label), &c.holds);
            }
        }
        kv("conclusion", &self.conclusion);
        kv("reduction", &self.conclusion.reduction_text());
        out
    }

    pub fn from_text(text: &str) -> Result<Self, CertifyError> {
        let mut map = BTreeMap::new();
        for (no, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line.split_once(": ").ok_or_else(|| {
                CertifyError::Parse(format!("line {}: expected `key: value`", no + 1))
            })?;
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(CertifyError::Parse(format!("duplicate key {k}")));
            }
        }
        let get = |k: &str| -> Result<&str, CertifyError> {
            map.get(k)
                .map(String::as_str)
                .ok_or_else(|| CertifyError::Parse(format!("missing key {k}")))
        };
        fn num<T: std::str::FromStr>(k: &str, v: &str) -> Result<T, CertifyError> {
            v.parse()
                .map_err(|_| CertifyError::Parse(format!("bad value for {k}: {v:?}")))
        }
        if get("schema")? != SCHEMA {
            return Err(CertifyError::Parse("unsupported schema".into()));
        }
        let p: u64 = num("p", get("p")?)?;
        let count: usize = num("subfields", get("subfields")?)?;
        let mut subfields = Vec::with_capacity(count);
        for i in 1..=count {
            let l = format!("K{i}");
            let key = |s: &str| format!("{l}.{s}");
            let field = QuadFieldDescriptor {
                d_input: num(&key("d"), get(&key("d"))?)?,
                kernel: num(&key("kernel"), get(&key("kernel"))?)?,
                discriminant: num(&key("discriminant"), get(&key("discriminant"))?)?,
                signature: match get(&key("signature"))? {
                    "real" => Signature::Real,
                    "imaginary" => Signature::Imaginary,
                    other => return Err(CertifyError::Parse(format!("bad signature {other:?}"))),
                },
            };
            let status: VerdictStatus =
                get(&key("status"))?.parse().map_err(CertifyError::Parse)?;
            let class_number = match get(&key("class_number_method"))? {
                "unavailable" => ClassNumberEvidence::Unavailable,
                "bound-only" => ClassNumberEvidence::Bound {
                    bound: num(&key("class_number_bound"), get(&key("class_number_bound"))?)?,
                },
                m => ClassNumberEvidence::Exact {
                    h: num(&key("class_number"), get(&key("class_number"))?)?,
                    method: m.parse().map_err(CertifyError::Parse)?,
                },
            };
            let unit = if map.contains_key(&key("unit.u")) {
                let unit = FundamentalUnit {
                    kernel: field.kernel,
                    u: num::<BigInt>(&key("unit.u"), get(&key("unit.u"))?)?,
                    v: num::<BigInt>(&key("unit.v"), get(&key("unit.v"))?)?,
                    denom: num(&key("unit.denom"), get(&key("unit.denom"))?)?,
                    norm: num(&key("unit.norm"), get(&key("unit.norm"))?)?,
                };
                let splitting = match get(&key("unit.splitting"))? {
                    "split" => Splitting::Split,
                    "inert" => Splitting::Inert,
                    "ramified" => Splitting::Ramified,
                    other => return Err(CertifyError::Parse(format!("bad splitting {other:?}"))),
                };
                let is_pth_power = get(&key("unit.places"))?
                    .split(' ')
                    .map(|s| match s {
                        "pth-power" => Ok(true),
                        "not-pth-power" => Ok(false),
                        other => Err(CertifyError::Parse(format!("bad place flag {other:?}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(UnitEvidence {
                    unit,
                    local: LocalPowerReport {
                        splitting,
                        is_pth_power,
                    },
                })
            } else {
                None
            };
            subfields.push(PRationalityVerdict {
                field,
                p,
                status,
                class_number,
                unit,
            });
        }
        let discriminant_checks = if map.contains_key("discriminant.A") {
            let checks = ["K5", "K6", "K7"]
                .iter()
                .map(|l| -> Result<DiscriminantCheck, CertifyError> {
                    let key = |s: &str| format!("discriminant.{l}.{s}");
                    Ok(DiscriminantCheck {
                        label: l.to_string(),
                        abs_discriminant: num(
                            &key("abs_discriminant"),
                            get(&key("abs_discriminant"))?,
                        )?,
                        bound: num(&key("bound"), get(&key("bound"))?)?,
                        holds: num(&key("holds"), get(&key("holds"))?)?,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Some(DiscriminantChecks {
                a: num("discriminant.A", get("discriminant.A")?)?,
                m_witness: num("discriminant.m", get("discriminant.m")?)?,
                n_witness: num("discriminant.n", get("discriminant.n")?)?,
                checks,
            })
        } else {
            None
        };
        let conclusion = match get("conclusion")? {
            "certified" => Conclusion::Certified,
            "failed" => Conclusion::Failed,
            "inconclusive" => Conclusion::Inconclusive,
            other => return Err(CertifyError::Parse(format!("bad conclusion {other:?}"))),
        };
        Ok(TriquadraticCertificate {
            p,
            subfields,
            discriminant_checks,
            conclusion,
        })
    }
}

/// Louboutin bounds for K5, K6, K7 as used by the large-p route.
pub fn imaginary_bounds(p: u64) -> Result<[f64; 3], CertifyError> {
    let r = subfield_radicands(p)?;
    let b =
        |d: i64| -> Result<f64, CertifyError> { Ok(louboutin_bound(descriptor(d)?.discriminant)) };
    Ok([b(r[4])?, b(r[5])?, b(r[6])?])
}
