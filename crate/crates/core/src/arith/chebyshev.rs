use super::{primes_below, primes_in_ap, ArithError, Congruence};
use num_integer::Roots;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Chebyshev sums restricted to one residue class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaTally {
    pub x: u64,
    pub modulus: u64,
    pub residue: u64,
    /// sum of `ln p` over primes `p < x` in the class
    pub theta: f64,
    /// sum of von Mangoldt `Λ(n)` over `n < x` in the class
    pub psi: f64,
    /// number of primes contributing to `theta`
    pub count: u64,
}

pub fn theta_psi(x: u64, class: Congruence) -> Result<ThetaTally, ArithError> {
    if !class.is_reduced() {
        return Err(ArithError::ResidueNotCoprime {
            residue: class.residue(),
            modulus: class.modulus(),
        });
    }
    let mut theta = CompensatedSum::new();
    let mut count = 0u64;
    for p in primes_in_ap(x, class) {
        theta.add((p as f64).ln());
        count += 1;
    }
    let mut psi = theta;
    if x > 4 {
        for p in primes_below((x - 1).sqrt() + 1) {
            let lp = (p as f64).ln();
            let mut pk = p as u128 * p as u128;
            while pk < x as u128 {
                if class.contains(pk as u64) {
                    psi.add(lp);
                }
                pk *= p as u128;
            }
        }
    }
    Ok(ThetaTally {
        x,
        modulus: class.modulus(),
        residue: class.residue(),
        theta: theta.value(),
        psi: psi.value(),
        count,
    })
}
