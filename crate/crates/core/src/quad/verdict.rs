use super::{
    class_number_imaginary, class_number_imaginary_oracle, class_number_real, fundamental_unit,
    louboutin_bound, unit_is_pth_power_locally, FundamentalUnit, LocalPowerReport, QuadError,
    QuadFieldDescriptor, Signature,
};
use crate::arith::is_prime;
use std::fmt;
use std::str::FromStr;

/// Largest `|D|` for which imaginary class numbers are computed exactly.
pub const EXACT_IMAGINARY_LIMIT: u64 = 10_000_000;
/// Largest `D` for which real class numbers and units are computed.
pub const EXACT_REAL_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassNumberMethod {
    /// reduced binary quadratic forms
    Forms,
    /// Dirichlet's class number formula (finite character sum)
    Dirichlet,
    /// only the analytic upper bound is known
    BoundOnly,
}

impl fmt::Display for ClassNumberMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassNumberMethod::Forms => "forms",
            ClassNumberMethod::Dirichlet => "dirichlet",
            ClassNumberMethod::BoundOnly => "bound-only",
        })
    }
}

impl FromStr for ClassNumberMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "forms" => Ok(ClassNumberMethod::Forms),
            "dirichlet" => Ok(ClassNumberMethod::Dirichlet),
            "bound-only" => Ok(ClassNumberMethod::BoundOnly),
            other => Err(format!("unknown class number method {other:?}")),
        }
    }
}

/// Memo of class numbers keyed by discriminant and method.
pub trait ClassNumberStore: Sync {
    fn lookup(&self, discriminant: i64, method: ClassNumberMethod) -> Option<u64>;
    fn record(&self, discriminant: i64, h: u64, method: ClassNumberMethod);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictStatus {
    Proved,
    Refuted,
    Inconclusive,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Proved => "proved",
            VerdictStatus::Refuted => "refuted",
            VerdictStatus::Inconclusive => "inconclusive",
        })
    }
}

impl FromStr for VerdictStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "proved" => Ok(VerdictStatus::Proved),
            "refuted" => Ok(VerdictStatus::Refuted),
            "inconclusive" => Ok(VerdictStatus::Inconclusive),
            other => Err(format!("unknown status {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClassNumberEvidence {
    Exact {
        h: u64,
        method: ClassNumberMethod,
    },
    /// `h <= bound`, from the analytic upper bound
    Bound {
        bound: f64,
    },
    /// discriminant beyond every supported route
    Unavailable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitEvidence {
    pub unit: FundamentalUnit,
    pub local: LocalPowerReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PRationalityVerdict {
    pub field: QuadFieldDescriptor,
    pub p: u64,
    pub status: VerdictStatus,
    pub class_number: ClassNumberEvidence,
    pub unit: Option<UnitEvidence>,
}

#[derive(Clone, Copy)]
pub struct VerdictOptions<'a> {
    /// backend for exact imaginary class numbers
    pub imaginary_method: ClassNumberMethod,
    pub store: Option<&'a dyn ClassNumberStore>,
}

impl Default for VerdictOptions<'_> {
    fn default() -> Self {
        VerdictOptions {
            imaginary_method: ClassNumberMethod::Forms,
            store: None,
        }
    }
}

impl VerdictOptions<'_> {
    fn memo(
        &self,
        disc: i64,
        method: ClassNumberMethod,
        compute: impl FnOnce() -> Result<u64, QuadError>,
    ) -> Result<u64, QuadError> {
        if let Some(h) = self.store.and_then(|s| s.lookup(disc, method)) {
            return Ok(h);
        }
        let h = compute()?;
        if let Some(s) = self.store {
            s.record(disc, h, method);
        }
        Ok(h)
    }
}

pub fn p_rationality(
    field: &QuadFieldDescriptor,
    p: u64,
) -> Result<PRationalityVerdict, QuadError> {
    p_rationality_with(field, p, VerdictOptions::default())
}

pub fn p_rationality_with(
    field: &QuadFieldDescriptor,
    p: u64,
    opts: VerdictOptions<'_>,
) -> Result<PRationalityVerdict, QuadError> {
    if p < 5 || !is_prime(p) {
        return Err(QuadError::UnsupportedPrime(p));
    }
    let disc = field.discriminant;
    match field.signature {
        Signature::Imaginary => {
            let (status, class_number) = if disc.unsigned_abs() <= EXACT_IMAGINARY_LIMIT {
                let method = match opts.imaginary_method {
                    ClassNumberMethod::Dirichlet => ClassNumberMethod::Dirichlet,
                    _ => ClassNumberMethod::Forms,
                };
                let h = opts.memo(disc, method, || match method {
                    ClassNumberMethod::Dirichlet => class_number_imaginary_oracle(disc),
                    _ => class_number_imaginary(disc),
                })?;
                let status = if h % p != 0 {
                    VerdictStatus::Proved
                } else {
                    VerdictStatus::Inconclusive
                };
                (status, ClassNumberEvidence::Exact { h, method })
            } else {
                let bound = louboutin_bound(disc);
                let status = if bound < p as f64 {
                    VerdictStatus::Proved
                } else {
                    VerdictStatus::Inconclusive
                };
                (status, ClassNumberEvidence::Bound { bound })
            };
            Ok(PRationalityVerdict {
                field: *field,
                p,
                status,
                class_number,
                unit: None,
            })
        }
        Signature::Real => {
            if disc as u64 > EXACT_REAL_LIMIT {
                return Ok(PRationalityVerdict {
                    field: *field,
                    p,
                    status: VerdictStatus::Inconclusive,
                    class_number: ClassNumberEvidence::Unavailable,
                    unit: None,
                });
            }
            let unit = fundamental_unit(field.kernel)?;
            let h = opts.memo(disc, ClassNumberMethod::Dirichlet, || {
                class_number_real(disc, &unit)
            })?;
            let local = unit_is_pth_power_locally(field.kernel, &unit, p)?;
            let status = if h % p != 0 && local.some_place_not_pth_power() {
                VerdictStatus::Proved
            } else {
                VerdictStatus::Refuted
            };
            Ok(PRationalityVerdict {
                field: *field,
                p,
                status,
                class_number: ClassNumberEvidence::Exact {
                    h,
                    method: ClassNumberMethod::Dirichlet,
                },
                unit: Some(UnitEvidence { unit, local }),
            })
        }
    }
}
