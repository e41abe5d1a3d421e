use super::{gcd, inv_mod, is_prime, Congruence};
use num_integer::Roots;

/// All primes `p < limit`, by a plain sieve of Eratosthenes over odd numbers.
pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit <= 2 {
        return Vec::new();
    }
    let half = (limit / 2) as usize; // index i stands for 2i+1
    let mut composite = vec![false; half];
    composite[0] = true;
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) < limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2];
    out.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| 2 * i as u64 + 1)
            .filter(|&p| p < limit),
    );
    out
}

/// `roots[n]` is the largest `m` with `m^2 | n`, for `0 < n <= limit`
/// (`roots[0]` is unused and set to 0).
pub fn square_root_parts(limit: u64) -> Vec<u32> {
    let len = limit as usize + 1;
    let mut roots = vec![1u32; len];
    roots[0] = 0;
    let mut d = 2usize;
    while d * d < len {
        let step = d * d;
        let mut k = step;
        while k < len {
            roots[k] = d as u32;
            k += step;
        }
        d += 1;
    }
    roots
}

const SEGMENT_LEN: u64 = 1 << 15;

/// Lazily yields the primes `p < limit` with `p` in a residue class, in
/// increasing order.
///
/// The progression `a, a+q, a+2q, ...` is sieved one segment of indices at a
/// time by every prime up to `sqrt(limit)` that does not divide `q`; each
/// survivor is then confirmed with [`is_prime`].
pub fn primes_in_ap(limit: u64, class: Congruence) -> ProgressionPrimes {
    ProgressionPrimes::new(limit, class)
}

pub struct ProgressionPrimes {
    class: Congruence,
    /// `(ell, first index k with ell | a + k q)`
    sieving: Vec<(u64, u64)>,
    next_index: u64,
    index_end: u64,
    buffer: std::vec::IntoIter<u64>,
}

impl ProgressionPrimes {
    fn new(limit: u64, class: Congruence) -> Self {
        let (a, q) = (class.residue(), class.modulus());
        let index_end = if a < limit {
            (limit - 1 - a) / q + 1
        } else {
            0
        };
        let mut it = ProgressionPrimes {
            class,
            sieving: Vec::new(),
            next_index: 0,
            index_end,
            buffer: Vec::new().into_iter(),
        };
        if index_end == 0 {
            return it;
        }
        if gcd(a, q) != 1 {
            // every member shares a factor with q: only the first two members
            // can be that factor itself
            let found: Vec<u64> = (0..index_end.min(2))
                .map(|k| a + k * q)
                .filter(|&n| is_prime(n))
                .collect();
            it.buffer = found.into_iter();
            it.index_end = 0;
            return it;
        }
        let bound = (limit - 1).sqrt();
        it.sieving = primes_below(bound + 1)
            .into_iter()
            .filter(|ell| q % ell != 0)
            .map(|ell| {
                // a + k q = 0 mod ell  <=>  k = -a q^{-1} mod ell
                let inv = inv_mod(q % ell, ell).unwrap();
                let start = (ell - a % ell) % ell * inv % ell;
                (ell, start)
            })
            .collect();
        it
    }

    fn fill_segment(&mut self) -> Vec<u64> {
        let (a, q) = (self.class.residue(), self.class.modulus());
        let k0 = self.next_index;
        let k1 = (k0 + SEGMENT_LEN).min(self.index_end);
        self.next_index = k1;
        let len = (k1 - k0) as usize;
        let mut composite = vec![false; len];
        for &(ell, start) in &self.sieving {
            let mut k = if start >= k0 {
                start
            } else {
                start + (k0 - start).div_ceil(ell) * ell
            };
            while k < k1 {
                if a + k * q != ell {
                    composite[(k - k0) as usize] = true;
                }
                k += ell;
            }
        }
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| a + (k0 + i as u64) * q)
            .filter(|&n| is_prime(n))
            .collect()
    }
}

impl Iterator for ProgressionPrimes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if let Some(p) = self.buffer.next() {
                return Some(p);
            }
            if self.next_index >= self.index_end {
                return None;
            }
            self.buffer = self.fill_segment().into_iter();
        }
    }
}
