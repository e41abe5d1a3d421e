use super::{kronecker_chi, FundamentalUnit, QuadError};
use crate::arith::{inv_mod, is_prime, mul_mod, pow_mod, sqrt_mod_prime};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::fmt;

/// How `p` decomposes in `Q(sqrt(kernel))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitting::Split => "split",
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
        })
    }
}

/// One flag per place `v | p`: is the unit a p-th power in `K_v`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalPowerReport {
    pub splitting: Splitting,
    pub is_pth_power: Vec<bool>,
}

impl LocalPowerReport {
    /// The real-field criterion needs at least one place where the unit is
    /// not a p-th power.
    pub fn some_place_not_pth_power(&self) -> bool {
        self.is_pth_power.iter().any(|&b| !b)
    }
}

/// `a + b·t` with `t² = kernel`, coefficients modulo `modulus`.
#[derive(Debug, Clone, Copy)]
struct Pair {
    a: u64,
    b: u64,
}

struct PairRing {
    modulus: u64,
    kernel: u64,
}

impl PairRing {
    fn mul(&self, x: Pair, y: Pair) -> Pair {
        let m = self.modulus;
        let kb = mul_mod(self.kernel, mul_mod(x.b, y.b, m), m);
        Pair {
            a: (mul_mod(x.a, y.a, m) + kb) % m,
            b: (mul_mod(x.a, y.b, m) + mul_mod(x.b, y.a, m)) % m,
        }
    }

    fn pow(&self, mut base: Pair, mut e: u64) -> Pair {
        let mut acc = Pair {
            a: 1 % self.modulus,
            b: 0,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn reduce(x: &BigInt, m: u64) -> u64 {
    let r = x % BigInt::from(m);
    let r = r.to_i128().unwrap();
    r.rem_euclid(m as i128) as u64
}

/// Local p-th power test for a unit `(u + v·sqrt(k)) / denom` at every place
/// above `p`.
///
/// * split: embed through both square roots `±r` of `k` mod `p²` and test
///   `z^(p-1) ≡ 1 (mod p²)`;
/// * inert: test `z^(p²-1) ≡ 1` in `(Z/p²)[t]/(t² - k)`;
/// * ramified: with `z^(p-1) = a + b·t`, the unit is a p-th power iff
///   `a ≡ 1 (mod p²)` and `b ≡ 0 (mod p)`.
pub fn unit_is_pth_power_locally(
    kernel: i64,
    unit: &FundamentalUnit,
    p: u64,
) -> Result<LocalPowerReport, QuadError> {
    if p < 5 || !is_prime(p) || p > u32::MAX as u64 {
        return Err(QuadError::EvenOrSmallPrime(p));
    }
    let m = p * p;
    let k = kernel.rem_euclid(m as i64) as u64;
    let denom_inv = inv_mod(unit.denom as u64, m).expect("p is odd");
    let z = Pair {
        a: mul_mod(reduce(&unit.u, m), denom_inv, m),
        b: mul_mod(reduce(&unit.v, m), denom_inv, m),
    };
    let ring = PairRing {
        modulus: m,
        kernel: k,
    };
    let report = match kronecker_chi(kernel, p as i64) {
        1 => {
            let r = sqrt_mod_prime(k % p, p).expect("kernel is a residue");
            // Hensel: r <- r - (r² - k) / (2r)  mod p²
            let f = (mul_mod(r, r, m) + m - k) % m;
            let inv2r = inv_mod(2 * r % m, m).expect("2r is a unit");
            let root = (r + m - mul_mod(f, inv2r, m)) % m;
            let places = [root, (m - root) % m]
                .iter()
                .map(|&s| {
                    let embedded = (z.a + mul_mod(z.b, s, m)) % m;
                    pow_mod(embedded, p - 1, m) == 1
                })
                .collect();
            LocalPowerReport {
                splitting: Splitting::Split,
                is_pth_power: places,
            }
        }
        -1 => {
            let w = ring.pow(z, m - 1);
            LocalPowerReport {
                splitting: Splitting::Inert,
                is_pth_power: vec![w.a == 1 && w.b == 0],
            }
        }
        _ => {
            let w = ring.pow(z, p - 1);
            LocalPowerReport {
                splitting: Splitting::Ramified,
                is_pth_power: vec![w.a == 1 && w.b % p == 0],
            }
        }
    };
    Ok(report)
}
