//! Computational toolkit around p-rational triquadratic fields
//! `Q(sqrt(p(p+2)), sqrt(p(p-2)), i)`.
//!
//! * [`arith`]: congruences, primality, sieves, square parts, Chebyshev sums.
//! * [`search`]: primes `p` with large square factors in both `p + 2` and `p - 2`.
//! * [`quad`]: quadratic fields, class numbers, fundamental units, local
//!   p-th power tests and per-field p-rationality verdicts.
//! * [`certify`]: seven-subfield certificates for the triquadratic field.
//! * [`analytic`]: finite-x evaluation of the lower-bound sum chain.
//! * [`cache`] and [`cli`]: persistence and the `prational` command line.

pub mod analytic;
pub mod arith;
pub mod cache;
pub mod certify;
pub mod cli;
pub mod quad;
pub mod search;
