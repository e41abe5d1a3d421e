use super::{gcd, inv_mod, ArithError};
use std::fmt;

/// A residue class `residue mod modulus`, stored in canonical form
/// `0 <= residue < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    residue: u64,
    modulus: u64,
}

impl Congruence {
    /// Builds the class of `residue` (any sign) modulo `modulus`.
    pub fn new(residue: i128, modulus: u64) -> Result<Self, ArithError> {
        if modulus == 0 {
            return Err(ArithError::ZeroModulus);
        }
        let residue = residue.rem_euclid(modulus as i128) as u64;
        Ok(Congruence { residue, modulus })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, n: u64) -> bool {
        n % self.modulus == self.residue
    }

    /// gcd(residue, modulus) = 1, with gcd(0, 1) = 1.
    pub fn is_reduced(&self) -> bool {
        gcd(self.residue, self.modulus) == 1
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

/// Combines two congruences with coprime moduli into one modulo their product.
pub fn crt_pair(c1: Congruence, c2: Congruence) -> Result<Congruence, ArithError> {
    let (m1, m2) = (c1.modulus, c2.modulus);
    if gcd(m1, m2) != 1 {
        return Err(ArithError::NonCoprimeModuli(m1, m2));
    }
    let modulus = m1.checked_mul(m2).ok_or(ArithError::Overflow)?;
    // x = r1 + m1 * t with t = (r2 - r1) / m1 mod m2
    let inv = inv_mod(m1 % m2, m2).expect("coprime moduli have an inverse");
    let diff = (c2.residue as i128 - c1.residue as i128).rem_euclid(m2 as i128) as u128;
    let t = diff * inv as u128 % m2 as u128;
    let x = c1.residue as u128 + m1 as u128 * t;
    Congruence::new(x as i128, modulus)
}
