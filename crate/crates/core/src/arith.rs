//! Rational-integer helpers: primality, factorization, sieving and
//! modular arithmetic on machine words.

use num_integer::Integer;

/// Inputs above this are refused by the counting routines unless the caller
/// raises the limit explicitly.
pub const DEFAULT_FACTOR_LIMIT: u64 = 1_000_000_000_000;

pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for every `u64`: the first twelve prime bases are a
/// complete strong-pseudoprime witness set below 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, ascending primes with exponents.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if m < 2 {
        return out;
    }
    let mut push = |p: u64, m: &mut u64| {
        let mut e = 0;
        while *m % p == 0 {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut m);
    push(3, &mut m);
    let mut p = 5;
    while p * p <= m {
        push(p, &mut m);
        push(p + 2, &mut m);
        p += 6;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Smallest `d >= 1` with `a^d = 1 (mod n)`; requires `gcd(a, n) = 1`.
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    debug_assert_eq!(a.gcd(&n), 1);
    if n == 1 {
        return 1;
    }
    let mut d = 1;
    let mut x = a % n;
    while x != 1 {
        x = mod_mul(x, a, n);
        d += 1;
    }
    d
}

/// Split `n = p^r * n1` with `p` not dividing `n1`.
pub fn strip_prime(n: u64, p: u64) -> (u32, u64) {
    let mut r = 0;
    let mut n1 = n;
    while n1 % p == 0 {
        n1 /= p;
        r += 1;
    }
    (r, n1)
}

pub fn is_quadratic_residue(a: u64, p: u64) -> bool {
    let a = a % p;
    a != 0 && mod_pow(a, (p - 1) / 2, p) == 1
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_against_sieve() {
        let sieve = primes_up_to(10_000);
        let by_test: Vec<u64> = (0..=10_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, by_test);
    }

    #[test]
    fn large_primes_and_pseudoprimes() {
        assert!(is_prime(1_000_000_007));
        assert!(is_prime(18_446_744_073_709_551_557));
        // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
    }

    #[test]
    fn factorization_roundtrip() {
        for m in 1..5000u64 {
            let f = factorize(m);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, m);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
        assert_eq!(factorize(362_797_056), vec![(2, 11), (3, 11)]);
    }

    #[test]
    fn orders_and_phi() {
        assert_eq!(multiplicative_order(2, 5), 4);
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(euler_phi(84), 24);
        assert_eq!(euler_phi(23), 22);
        assert_eq!(strip_prime(12, 2), (2, 3));
    }
}
