use super::{mul_mod, pow_mod};
use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

/// Witness set that makes Miller-Rabin exact for every 64-bit input.
const WITNESSES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Random rounds used above 2^64; error probability at most 4^-64 = 2^-128.
pub const BIG_ROUNDS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimalityMode {
    Deterministic,
    Probabilistic { rounds: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Composite,
    Prime(PrimalityMode),
}

impl Primality {
    pub fn is_prime(&self) -> bool {
        matches!(self, Primality::Prime(_))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in WITNESSES_U64 {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES_U64 {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary size: exact below 2^64, otherwise
/// [`BIG_ROUNDS`] Miller-Rabin rounds with random bases.
pub fn primality_big<R: Rng + ?Sized>(n: &BigUint, rng: &mut R) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime(small) {
            Primality::Prime(PrimalityMode::Deterministic)
        } else {
            Primality::Composite
        };
    }
    if !n.bit(0) {
        return Primality::Composite;
    }
    for p in WITNESSES_U64 {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let two = BigUint::from(2u32);
    'round: for _ in 0..BIG_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n_minus_one);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'round;
            }
        }
        return Primality::Composite;
    }
    Primality::Prime(PrimalityMode::Probabilistic { rounds: BIG_ROUNDS })
}
