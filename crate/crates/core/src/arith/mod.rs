//! Exact integer arithmetic shared by the search, field and harness modules.
//!
//! Everything here is a pure function over value types. Sieve segments are
//! built independently and never share mutable state.

mod chebyshev;
mod congruence;
mod factor;
mod modular;
mod primality;
mod sieve;

pub use chebyshev::{theta_psi, CompensatedSum, ThetaTally};
pub use congruence::{crt_pair, Congruence};
pub use factor::{euler_phi, factorize, is_squarefree, square_part, SquareDecomposition};
pub use modular::{gcd, inv_mod, mul_mod, pow_mod, sqrt_mod_prime};
pub use primality::{is_prime, primality_big, Primality, PrimalityMode, BIG_ROUNDS};
pub use sieve::{primes_below, primes_in_ap, square_root_parts, ProgressionPrimes};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(u64, u64),
    #[error("residue {residue} is not coprime to modulus {modulus}")]
    ResidueNotCoprime { residue: u64, modulus: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("integer overflow while combining moduli")]
    Overflow,
}
