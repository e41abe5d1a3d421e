//! Quadratic fields `Q(sqrt(d))`: discriminants, class numbers, fundamental
//! units and the per-field p-rationality criteria.
//!
//! Imaginary fields are proved p-rational when `p ∤ h`; fields with `p | h`
//! are reported inconclusive, never refuted. Real fields need `p ∤ h` and a
//! place above `p` where the fundamental unit is not a local p-th power.

mod classnum;
mod kronecker;
mod local;
mod unit;
mod verdict;

pub use classnum::{
    class_number_imaginary, class_number_imaginary_oracle, class_number_real, louboutin_bound,
    louboutin_constant, printed_louboutin_bound, printed_louboutin_constant, roots_of_unity,
    EULER_GAMMA,
};
pub use kronecker::kronecker_chi;
pub use local::{unit_is_pth_power_locally, LocalPowerReport, Splitting};
pub use unit::{
    explicit_unit_family, explicit_units, fundamental_unit, ExplicitUnitRecord, FundamentalUnit,
    UnitRelation,
};
pub use verdict::{
    p_rationality, p_rationality_with, ClassNumberEvidence, ClassNumberMethod, ClassNumberStore,
    PRationalityVerdict, UnitEvidence, VerdictOptions, VerdictStatus, EXACT_IMAGINARY_LIMIT,
    EXACT_REAL_LIMIT,
};

use crate::arith::square_part;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("{0} is a perfect square")]
    PerfectSquareInput(i64),
    #[error("{0} is not a fundamental discriminant of the required sign")]
    NotFundamental(i64),
    #[error("{0} is not a squarefree integer greater than 1")]
    NotSquarefree(i64),
    #[error("class number for D = {discriminant} not near an integer (raw value {raw})")]
    PrecisionFailure { discriminant: i64, raw: f64 },
    #[error("p = {0} must be an odd prime >= 5")]
    EvenOrSmallPrime(u64),
    #[error("p = {0} is not a supported prime (need a prime >= 5)")]
    UnsupportedPrime(u64),
    #[error("unit does not satisfy its norm equation for kernel {0}")]
    NormMismatch(i64),
    #[error("integer overflow for input {0}")]
    Overflow(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signature {
    Real,
    Imaginary,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Signature::Real => "real",
            Signature::Imaginary => "imaginary",
        })
    }
}

/// `Q(sqrt(d_input))` with its squarefree kernel and fundamental discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadFieldDescriptor {
    pub d_input: i64,
    pub kernel: i64,
    pub discriminant: i64,
    pub signature: Signature,
}

impl QuadFieldDescriptor {
    pub fn is_real(&self) -> bool {
        self.signature == Signature::Real
    }
}

pub fn descriptor(d: i64) -> Result<QuadFieldDescriptor, QuadError> {
    if d == 0 {
        return Err(QuadError::PerfectSquareInput(0));
    }
    let free = square_part(d.unsigned_abs()).squarefree_part as i64;
    let kernel = if d < 0 { -free } else { free };
    if kernel == 1 {
        return Err(QuadError::PerfectSquareInput(d));
    }
    let discriminant = if kernel.rem_euclid(4) == 1 {
        kernel
    } else {
        kernel.checked_mul(4).ok_or(QuadError::Overflow(d))?
    };
    Ok(QuadFieldDescriptor {
        d_input: d,
        kernel,
        discriminant,
        signature: if kernel < 0 {
            Signature::Imaginary
        } else {
            Signature::Real
        },
    })
}

/// True when `disc` is the discriminant of a quadratic field.
pub fn is_fundamental(disc: i64) -> bool {
    if disc == 0 || disc == 1 {
        return false;
    }
    let sqf = |k: i64| k != 0 && square_part(k.unsigned_abs()).square_root_part == 1;
    match disc.rem_euclid(4) {
        1 => sqf(disc),
        0 => {
            let k = disc / 4;
            matches!(k.rem_euclid(4), 2 | 3) && sqf(k)
        }
        _ => false,
    }
}
