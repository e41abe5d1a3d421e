use super::{descriptor, QuadError};
use crate::arith::is_squarefree;
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// A unit `(u + v·sqrt(kernel)) / denom` of a real quadratic field, with
/// `u² - kernel·v² = denom²·norm`.
///
/// [`fundamental_unit`] returns the fundamental one; [`FundamentalUnit::pow`]
/// and [`FundamentalUnit::mul`] produce other units in the same shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FundamentalUnit {
    pub kernel: i64,
    pub u: BigInt,
    pub v: BigInt,
    /// 1 or 2
    pub denom: u32,
    /// +1 or -1
    pub norm: i8,
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().unwrap().ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

impl FundamentalUnit {
    pub fn new(kernel: i64, u: BigInt, v: BigInt, denom: u32) -> Result<Self, QuadError> {
        let lhs = &u * &u - BigInt::from(kernel) * &v * &v;
        let d2 = BigInt::from(denom * denom);
        let norm = if lhs == d2 {
            1
        } else if lhs == -d2 {
            -1
        } else {
            return Err(QuadError::NormMismatch(kernel));
        };
        Ok(FundamentalUnit {
            kernel,
            u,
            v,
            denom,
            norm,
        }
        .reduced())
    }

    fn reduced(mut self) -> Self {
        let two = BigInt::from(2);
        while self.denom > 1 && (&self.u % &two).is_zero() && (&self.v % &two).is_zero() {
            self.u /= &two;
            self.v /= &two;
            self.denom /= 2;
        }
        self
    }

    pub fn satisfies_norm_equation(&self) -> bool {
        let lhs = &self.u * &self.u - BigInt::from(self.kernel) * &self.v * &self.v;
        lhs == BigInt::from(self.denom * self.denom) * BigInt::from(self.norm)
    }

    /// Natural log of the unit as a real number (assumes `u, v > 0`).
    pub fn ln(&self) -> f64 {
        let ln_u = ln_big(&self.u);
        let ln_vs = ln_big(&self.v) + 0.5 * (self.kernel as f64).ln();
        let (hi, lo) = if ln_u >= ln_vs {
            (ln_u, ln_vs)
        } else {
            (ln_vs, ln_u)
        };
        hi + (lo - hi).exp().ln_1p() - (self.denom as f64).ln()
    }

    pub fn mul(&self, other: &FundamentalUnit) -> FundamentalUnit {
        assert_eq!(self.kernel, other.kernel);
        let k = BigInt::from(self.kernel);
        FundamentalUnit {
            kernel: self.kernel,
            u: &self.u * &other.u + k * &self.v * &other.v,
            v: &self.u * &other.v + &self.v * &other.u,
            denom: self.denom * other.denom,
            norm: self.norm * other.norm,
        }
        .reduced()
    }

    pub fn pow(&self, e: u32) -> FundamentalUnit {
        let mut acc = FundamentalUnit {
            kernel: self.kernel,
            u: BigInt::one(),
            v: BigInt::zero(),
            denom: 1,
            norm: 1,
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for FundamentalUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{} + {}*sqrt({})", self.u, self.v, self.kernel)
        } else {
            write!(
                f,
                "({} + {}*sqrt({}))/{}",
                self.u, self.v, self.kernel, self.denom
            )
        }
    }
}

/// Fundamental unit of the maximal order of `Q(sqrt(kernel))`.
///
/// Expands the reduced quadratic irrational `ξ = (P₀ + sqrt(k)) / Q₀` that
/// generates the maximal order (`Q₀ = 2` when `k ≡ 1 mod 4`) until the state
/// `(P, Q)` returns; with period `ℓ`, `ε₀ = q_{ℓ-1} ξ + q_{ℓ-2}` and
/// `N(ε₀) = (-1)^ℓ`.
pub fn fundamental_unit(kernel: i64) -> Result<FundamentalUnit, QuadError> {
    if kernel <= 1 || !is_squarefree(kernel as u64) {
        return Err(QuadError::NotSquarefree(kernel));
    }
    let s = kernel.sqrt();
    let (p0, q0) = if kernel % 4 == 1 {
        (if s % 2 == 1 { s } else { s - 1 }, 2i64)
    } else {
        (s, 1i64)
    };
    let (mut p, mut q) = (p0, q0);
    let (mut q_prev2, mut q_prev1) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (p + s) / q;
        let q_next = BigInt::from(a) * &q_prev1 + &q_prev2;
        q_prev2 = std::mem::replace(&mut q_prev1, q_next);
        p = a * q - p;
        q = (kernel - p * p) / q;
        if (p, q) == (p0, q0) {
            break;
        }
    }
    let u = &q_prev1 * p0 + &q_prev2 * q0;
    FundamentalUnit::new(kernel, u, q_prev1, q0 as u32)
}

/// How a claimed unit relates to the fundamental unit of its kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitRelation {
    Equal,
    /// claimed = ε₀^j with j > 1
    Power(u32),
    /// no positive power of ε₀ matched
    Unrelated,
}

impl fmt::Display for UnitRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitRelation::Equal => write!(f, "equal"),
            UnitRelation::Power(j) => write!(f, "power {j}"),
            UnitRelation::Unrelated => write!(f, "unrelated"),
        }
    }
}

/// One of the closed-form units attached to a prime `p >= 5`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitUnitRecord {
    /// `p(p+2)`, `p(p-2)` or `p² - 4`
    pub d: i64,
    pub kernel: i64,
    pub d_is_squarefree: bool,
    /// the claimed unit rewritten over `sqrt(kernel)`
    pub claimed: FundamentalUnit,
    pub fundamental: FundamentalUnit,
    pub relation: UnitRelation,
}

fn relate(claimed: &FundamentalUnit, fundamental: &FundamentalUnit) -> UnitRelation {
    let mut power = fundamental.clone();
    let mut j = 1;
    while power.v.abs() * claimed.denom <= claimed.v.abs() * power.denom {
        if power.u == claimed.u && power.v == claimed.v && power.denom == claimed.denom {
            return if j == 1 {
                UnitRelation::Equal
            } else {
                UnitRelation::Power(j)
            };
        }
        power = power.mul(fundamental);
        j += 1;
    }
    UnitRelation::Unrelated
}

/// The units `(p+1) + sqrt(p(p+2))`, `(p-1) + sqrt(p(p-2))` and
/// `(p + sqrt(p²-4)) / 2`, each rewritten over the kernel of its radicand,
/// paired with that radicand. Fails if any has norm other than 1.
pub fn explicit_units(p: u64) -> Result<[(i64, FundamentalUnit); 3], QuadError> {
    if p < 5 || !crate::arith::is_prime(p) {
        return Err(QuadError::UnsupportedPrime(p));
    }
    let pi = i64::try_from(p).map_err(|_| QuadError::Overflow(i64::MAX))?;
    let build = |d: i64, u: i64, denom: u32| -> Result<(i64, FundamentalUnit), QuadError> {
        let field = descriptor(d)?;
        let f = ((d / field.kernel) as u64).sqrt() as i64;
        debug_assert_eq!(f * f * field.kernel, d);
        let unit = FundamentalUnit::new(field.kernel, BigInt::from(u), BigInt::from(f), denom)?;
        if unit.norm != 1 {
            return Err(QuadError::NormMismatch(field.kernel));
        }
        Ok((d, unit))
    };
    let mul = |a: i64, b: i64| a.checked_mul(b).ok_or(QuadError::Overflow(pi));
    Ok([
        build(mul(pi, pi + 2)?, pi + 1, 1)?,
        build(mul(pi, pi - 2)?, pi - 1, 1)?,
        build(mul(pi - 2, pi + 2)?, pi, 2)?,
    ])
}

/// [`explicit_units`] compared with the continued-fraction fundamental unit
/// of each kernel.
pub fn explicit_unit_family(p: u64) -> Result<[ExplicitUnitRecord; 3], QuadError> {
    let units = explicit_units(p)?;
    let record = |(d, claimed): &(i64, FundamentalUnit)| -> Result<ExplicitUnitRecord, QuadError> {
        let fundamental = fundamental_unit(claimed.kernel)?;
        let relation = relate(claimed, &fundamental);
        Ok(ExplicitUnitRecord {
            d: *d,
            kernel: claimed.kernel,
            d_is_squarefree: *d == claimed.kernel,
            claimed: claimed.clone(),
            fundamental,
            relation,
        })
    };
    Ok([record(&units[0])?, record(&units[1])?, record(&units[2])?])
}
