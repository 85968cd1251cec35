//! How rational primes factor in the n-th cyclotomic field `K` and its
//! maximal real subfield `L`, and which of them produce coincidence
//! rotations.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, is_prime, multiplicative_order, primes_up_to, strip_prime};
use crate::error::{Error, Result};

/// The values of `n` (odd or divisible by 4) whose cyclotomic field has
/// class number one. Masley and Montgomery's classification; 29 entries.
pub const CN1_ORDERS: [u64; 29] = [
    3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16, 17, 19, 20, 21, 24, 25, 27, 28, 32, 33, 35, 36, 40,
    44, 45, 48, 60, 84,
];

/// A symmetry order in canonical form: `n` odd or divisible by 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetryOrder {
    n: u64,
    big_n: u64,
    degree: u64,
    cn1: bool,
}

impl SymmetryOrder {
    /// Canonicalizes a requested rotational order. An `n`-module with `n`
    /// odd has `2n`-fold symmetry, so `2n` with `n` odd maps to `n`.
    pub fn normalize(requested: u64) -> Result<Self> {
        if requested < 3 {
            return Err(Error::InvalidOrder(requested));
        }
        let n = if requested % 4 == 2 { requested / 2 } else { requested };
        let big_n = if n % 2 == 1 { 2 * n } else { n };
        Ok(SymmetryOrder {
            n,
            big_n,
            degree: euler_phi(n),
            cn1: is_cn1(n),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Order of the rotation symmetry group, `lcm(n, 2)`.
    pub fn big_n(&self) -> u64 {
        self.big_n
    }

    /// `[K : Q] = phi(n)`.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_cn1(&self) -> bool {
        self.cn1
    }

    /// True when `requested` was changed by normalization.
    pub fn was_normalized_from(&self, requested: u64) -> bool {
        self.n != requested
    }
}

pub fn is_cn1(n: u64) -> bool {
    CN1_ORDERS.binary_search(&n).is_ok()
}

/// Factorization type of a rational prime in `K` and `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSplitting {
    pub p: u64,
    pub residue: u64,
    pub ramified: bool,
    pub deg_k: u64,
    pub deg_l: u64,
    pub splitting: bool,
    /// Number of complex-conjugate pairs of prime factors; 0 when not splitting.
    pub pairs: u64,
    /// `p^deg_k` for complex splitting primes.
    pub basic_index: Option<BigUint>,
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Residue class degree of `p` in `K`. For ramified `p` with
/// `n = p^r n1` this is the degree in the `n1`-th cyclotomic field, and 1
/// when `n` is a pure power of `p`.
pub fn deg_k(order: &SymmetryOrder, p: u64) -> Result<u64> {
    require_prime(p)?;
    let (_, n1) = strip_prime(order.n, p);
    if n1 <= 2 {
        return Ok(1);
    }
    Ok(multiplicative_order(p % n1, n1))
}

fn real_degree(n: u64, p: u64) -> u64 {
    let mut d = 1;
    let mut x = p % n;
    while x != 1 && x != n - 1 {
        x = crate::arith::mod_mul(x, p, n);
        d += 1;
    }
    d
}

/// Residue class degree of an unramified prime in `L`: the smallest `d`
/// with `p^d = +-1 (mod n)`.
pub fn deg_l(order: &SymmetryOrder, p: u64) -> Result<u64> {
    require_prime(p)?;
    if order.n % p == 0 {
        return Err(Error::RamifiedUnsupported { n: order.n, p });
    }
    Ok(real_degree(order.n, p))
}

pub fn classify_prime(order: &SymmetryOrder, p: u64) -> Result<PrimeSplitting> {
    require_prime(p)?;
    let n = order.n;
    let ramified = n % p == 0;
    // Ramified primes behave as in the n1-th cyclotomic field.
    let (_, field) = if ramified { strip_prime(n, p) } else { (0, n) };
    let (dk, dl, splitting) = if field <= 2 {
        (1, 1, false)
    } else {
        let dk = multiplicative_order(p % field, field);
        let dl = real_degree(field, p);
        (dk, dl, dk == dl)
    };
    let pairs = if splitting { euler_phi(field) / (2 * dk) } else { 0 };
    let basic_index = splitting.then(|| BigUint::from(p).pow(dk as u32));
    Ok(PrimeSplitting {
        p,
        residue: p % n,
        ramified,
        deg_k: dk,
        deg_l: dl,
        splitting,
        pairs,
        basic_index,
    })
}

/// One column of the residue-class table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueEntry {
    /// Residue class mod n; ramified classes are labelled by their prime.
    pub residue: u64,
    pub representative: u64,
    pub deg_k: u64,
    pub deg_l: u64,
    pub splitting: bool,
}

/// The degree table over residue classes mod `n` that contain primes.
pub fn residue_table(order: &SymmetryOrder) -> Vec<ResidueEntry> {
    let n = order.n;
    let mut entries = Vec::new();
    for r in 1..=n {
        let representative = if num_integer::Integer::gcd(&r, &n) == 1 {
            let mut q = r;
            while !is_prime(q) {
                q += n;
            }
            q
        } else if is_prime(r) && n % r == 0 {
            r
        } else {
            continue;
        };
        let s = classify_prime(order, representative).expect("representative is prime");
        entries.push(ResidueEntry {
            residue: r,
            representative,
            deg_k: s.deg_k,
            deg_l: s.deg_l,
            splitting: s.splitting,
        });
    }
    entries
}

/// All basic indices `p^d <= bound`, ascending.
pub fn basic_indices(order: &SymmetryOrder, bound: u64) -> Vec<u64> {
    splitting_primes(order, bound)
        .into_iter()
        .map(|(_, index, _)| index)
        .collect()
}

/// Complex splitting primes whose basic index is at most `bound`, as
/// `(p, p^d, pairs)` sorted by basic index.
pub fn splitting_primes(order: &SymmetryOrder, bound: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for p in primes_up_to(bound) {
        let s = classify_prime(order, p).expect("sieved value is prime");
        if !s.splitting {
            continue;
        }
        if let Some(index) = p.checked_pow(s.deg_k as u32) {
            if index <= bound {
                out.push((p, index, s.pairs));
            }
        }
    }
    out.sort_by_key(|&(_, index, _)| index);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: u64) -> SymmetryOrder {
        SymmetryOrder::normalize(n).unwrap()
    }

    #[test]
    fn normalization() {
        let o = ord(10);
        assert_eq!((o.n(), o.big_n(), o.degree()), (5, 10, 4));
        let o = ord(8);
        assert_eq!((o.n(), o.big_n()), (8, 8));
        let o = ord(6);
        assert_eq!((o.n(), o.big_n()), (3, 6));
        assert_eq!(SymmetryOrder::normalize(2), Err(Error::InvalidOrder(2)));
        assert_eq!(ord(46).n(), 23);
        assert!(!ord(46).is_cn1());
    }

    #[test]
    fn cn1_list() {
        assert_eq!(CN1_ORDERS.len(), 29);
        assert!(CN1_ORDERS.windows(2).all(|w| w[0] < w[1]));
        assert!(CN1_ORDERS.iter().all(|&n| n % 4 != 2));
        assert!(is_cn1(12) && is_cn1(84));
        assert!(!is_cn1(23));
        for n in [3, 4, 5, 7, 8, 12] {
            assert!(is_cn1(n));
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(deg_k(&ord(5), 2).unwrap(), 4);
        assert_eq!(deg_k(&ord(4), 2).unwrap(), 1);
        assert_eq!(deg_k(&ord(7), 29).unwrap(), 1);
        assert_eq!(deg_l(&ord(8), 7).unwrap(), 1);
        assert_eq!(deg_l(&ord(5), 2).unwrap(), 2);
        assert_eq!(deg_l(&ord(4), 3).unwrap(), 1);
        assert!(matches!(
            deg_l(&ord(8), 2),
            Err(Error::RamifiedUnsupported { .. })
        ));
        assert_eq!(deg_k(&ord(5), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn classification_examples() {
        let s = classify_prime(&ord(5), 11).unwrap();
        assert!(s.splitting);
        assert_eq!((s.deg_k, s.pairs), (1, 2));
        assert_eq!(s.basic_index, Some(BigUint::from(11u32)));

        let s = classify_prime(&ord(7), 2).unwrap();
        assert!(s.splitting);
        assert_eq!((s.deg_k, s.pairs), (3, 1));
        assert_eq!(s.basic_index, Some(BigUint::from(8u32)));

        let s = classify_prime(&ord(5), 19).unwrap();
        assert!(!s.splitting);
        assert_eq!(s.deg_k, 2);

        let s = classify_prime(&ord(12), 2).unwrap();
        assert!(!s.splitting && s.ramified);
        assert_eq!(s.deg_k, 2);
        let s = classify_prime(&ord(12), 3).unwrap();
        assert!(!s.splitting && s.ramified);
        assert_eq!(s.deg_k, 2);
    }

    #[test]
    fn ramified_pure_power() {
        for (n, p) in [(4, 2), (8, 2), (16, 2), (3, 3), (9, 3), (25, 5), (27, 3)] {
            let s = classify_prime(&ord(n), p).unwrap();
            assert!(s.ramified && !s.splitting);
            assert_eq!(s.deg_k, 1);
        }
    }

    #[test]
    fn ramified_splitting_takes_pairs_from_reduced_field() {
        // n = 20 = 5 * 4 and 5 = 1 mod 4: splits as in Q(i).
        let s = classify_prime(&ord(20), 5).unwrap();
        assert!(s.ramified && s.splitting);
        assert_eq!((s.deg_k, s.pairs), (1, 1));
    }

    #[test]
    fn large_power_no_overflow() {
        let s = classify_prime(&ord(23), 9_973).unwrap();
        if let Some(b) = s.basic_index {
            assert_eq!(b, BigUint::from(9_973u32).pow(s.deg_k as u32));
        }
        let s = classify_prime(&ord(23), 2).unwrap();
        assert_eq!(s.deg_k, 11);
        assert_eq!(s.basic_index, Some(BigUint::from(2048u32)));
    }

    fn row(n: u64) -> Vec<(u64, u64, u64, bool)> {
        residue_table(&ord(n))
            .into_iter()
            .map(|e| (e.residue, e.deg_k, e.deg_l, e.splitting))
            .collect()
    }

    #[test]
    fn residue_tables() {
        let deg_k_row = |n| {
            row(n)
                .into_iter()
                .map(|(r, k, _, s)| (r, k, s))
                .collect::<Vec<_>>()
        };
        assert_eq!(
            deg_k_row(3),
            vec![(1, 1, true), (2, 2, false), (3, 1, false)]
        );
        assert_eq!(
            row(4),
            vec![(1, 1, 1, true), (2, 1, 1, false), (3, 2, 1, false)]
        );
        assert_eq!(
            deg_k_row(5),
            vec![(1, 1, true), (2, 4, false), (3, 4, false), (4, 2, false), (5, 1, false)]
        );
        assert_eq!(
            deg_k_row(7),
            vec![
                (1, 1, true),
                (2, 3, true),
                (3, 6, false),
                (4, 3, true),
                (5, 6, false),
                (6, 2, false),
                (7, 1, false)
            ]
        );
        assert_eq!(
            row(8),
            vec![
                (1, 1, 1, true),
                (2, 1, 1, false),
                (3, 2, 2, true),
                (5, 2, 2, true),
                (7, 2, 1, false)
            ]
        );
        assert_eq!(
            row(12),
            vec![
                (1, 1, 1, true),
                (2, 2, 1, false),
                (3, 2, 1, false),
                (5, 2, 2, true),
                (7, 2, 2, true),
                (11, 2, 1, false)
            ]
        );
    }

    #[test]
    fn basic_index_lists() {
        assert_eq!(basic_indices(&ord(4), 30), vec![5, 13, 17, 29]);
        assert_eq!(basic_indices(&ord(7), 30), vec![8, 29]);
        assert!(basic_indices(&ord(7), 1).is_empty());
        assert_eq!(basic_indices(&ord(12), 50), vec![13, 25, 37, 49]);
    }
}
