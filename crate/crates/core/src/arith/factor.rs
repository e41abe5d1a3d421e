use super::{gcd, is_prime, mul_mod};
use num_integer::Roots;

/// `n = square_root_part^2 * squarefree_part` with `squarefree_part` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareDecomposition {
    pub square_root_part: u64,
    pub squarefree_part: u64,
}

/// Largest `m` with `m^2 | n`.
///
/// Trial division runs only while `d^3` stays below the unfactored remainder;
/// what is left then has at most two prime factors, so a perfect-square test
/// settles it.
pub fn square_part(n: u64) -> SquareDecomposition {
    assert!(n >= 1, "square_part of zero");
    let mut rem = n;
    let mut root = 1u64;
    let mut free = 1u64;
    let mut absorb = |rem: &mut u64, d: u64| {
        let mut e = 0;
        while *rem % d == 0 {
            *rem /= d;
            e += 1;
        }
        root *= d.pow(e / 2);
        if e % 2 == 1 {
            free *= d;
        }
    };
    absorb(&mut rem, 2);
    let mut d = 3u64;
    while (d as u128).pow(3) <= rem as u128 {
        if rem % d == 0 {
            absorb(&mut rem, d);
        }
        d += 2;
    }
    if rem > 1 {
        let s = rem.sqrt();
        if s * s == rem {
            root *= s;
        } else {
            free *= rem;
        }
    }
    SquareDecomposition {
        square_root_part: root,
        squarefree_part: free,
    }
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && square_part(n).square_root_part == 1
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize of zero");
    let mut primes = Vec::new();
    let mut rem = n;
    for d in [2u64, 3, 5] {
        while rem % d == 0 {
            primes.push(d);
            rem /= d;
        }
    }
    let mut d = 7u64;
    let mut step = [4u64, 2, 4, 2, 4, 6, 2, 6].iter().cycle();
    while d <= 1 << 16 && d * d <= rem {
        while rem % d == 0 {
            primes.push(d);
            rem /= d;
        }
        d += step.next().unwrap();
    }
    if rem > 1 {
        split_large(rem, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let s = n.sqrt();
    if s * s == n {
        split_large(s, out);
        split_large(s, out);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Nontrivial divisor of an odd composite `n` with no factor below 2^16.
fn pollard_brent(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_part_examples() {
        let sd = |n| {
            let s = square_part(n);
            (s.square_root_part, s.squarefree_part)
        };
        assert_eq!(sd(279), (3, 31));
        assert_eq!(sd(1), (1, 1));
        assert_eq!(sd(275), (5, 11));
        assert_eq!(sd(729), (27, 1));
        assert_eq!(sd(4 * 1_000_003 * 1_000_003), (2 * 1_000_003, 1));
        assert_eq!(sd(999_983 * 1_000_003), (1, 999_983 * 1_000_003));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(225), 120);
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(50625), 27000);
        for n in 1..300u64 {
            let brute = (1..=n).filter(|k| gcd(*k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute);
        }
    }

    #[test]
    fn factorize_large_semiprime() {
        let p = 4_294_967_291u64; // 2^32 - 5
        let q = 4_294_967_279u64;
        assert_eq!(factorize(p * q), vec![(q, 1), (p, 1)]);
        assert_eq!(factorize(720), vec![(2, 4), (3, 2), (5, 1)]);
    }
}
