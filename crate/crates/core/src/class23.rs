//! The 46-fold case (`n = 23`), where the class group of `K` is cyclic of
//! order 3 and coincidences must be counted at the level of ideals.
//!
//! Complex splitting primes fall into `P1` (prime ideals principal) and
//! `P2` (prime ideals in the classes `C`, `C^2`). Writing an ideal of norm
//! `m` as `prod q_k^{n_k}` over oriented pairs of `P2` ideals (`q_k` in
//! `C`), it is principal iff `sum n_k = 0 (mod 3)`. That constraint drives
//! every count here.

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, is_quadratic_residue, isqrt, DEFAULT_FACTOR_LIMIT};
use crate::counting::{euler_coeff, DirichletTable};
use crate::error::{Error, Result};
use crate::splitting::{deg_k, SymmetryOrder};

/// Order of the rotation group for `n = 23`.
pub const BIG_N_23: u64 = 46;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind23 {
    P1,
    P2,
    NonSplitting,
    Ramified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeClass23 {
    pub p: u64,
    pub kind: Kind23,
    /// Residue class degree of `p` in `K` (1 or 11 for splitting primes).
    pub d: u64,
    /// Conjugate pairs of prime ideals above `p`; 0 unless splitting.
    pub pairs: u64,
}

impl PrimeClass23 {
    pub fn is_splitting(&self) -> bool {
        matches!(self.kind, Kind23::P1 | Kind23::P2)
    }
}

fn order23() -> SymmetryOrder {
    SymmetryOrder::normalize(23).expect("23 is a valid order")
}

/// Whether `6x^2 + xy + y^2 = p` is soluble, i.e. `p` splits into
/// principal primes of `Q(sqrt(-23))`. The form is positive definite with
/// discriminant -23, so `|x| <= sqrt(4p/23)` and `|y| <= 2 sqrt(p)` suffice.
fn principal_form_represents(p: u64) -> bool {
    let bx = isqrt(p / 5) as i64 + 1;
    let by = 2 * isqrt(p) as i64 + 2;
    let p = p as i128;
    for x in -bx..=bx {
        for y in -by..=by {
            let (x, y) = (x as i128, y as i128);
            if 6 * x * x + x * y + y * y == p {
                return true;
            }
        }
    }
    false
}

pub fn classify_p23(p: u64) -> Result<PrimeClass23> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 23 {
        return Err(Error::Ramified23);
    }
    let d = deg_k(&order23(), p)?;
    if !is_quadratic_residue(p, 23) {
        return Ok(PrimeClass23 {
            p,
            kind: Kind23::NonSplitting,
            d,
            pairs: 0,
        });
    }
    let kind = if principal_form_represents(p) {
        Kind23::P1
    } else {
        Kind23::P2
    };
    Ok(PrimeClass23 {
        p,
        kind,
        d,
        pairs: 22 / (2 * d),
    })
}

/// `m` split into its `P1` and `P2` prime powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexFactorization23 {
    pub factors: Vec<(u64, u32)>,
    pub p1_part: Vec<(u64, u32)>,
    pub p2_part: Vec<(u64, u32)>,
}

impl IndexFactorization23 {
    pub fn product(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product()
    }
}

/// Factorization of `m` if every prime power is a power of a basic
/// index (`p` with `p = 1 mod 23`, or `p^11` otherwise).
pub fn factor_index_23(m: u64) -> Result<Option<IndexFactorization23>> {
    if m > DEFAULT_FACTOR_LIMIT {
        return Err(Error::TooLarge {
            value: m,
            limit: DEFAULT_FACTOR_LIMIT,
        });
    }
    let factors = factorize(m);
    let mut p1_part = Vec::new();
    let mut p2_part = Vec::new();
    for &(p, e) in &factors {
        if p == 23 {
            return Ok(None);
        }
        let c = classify_p23(p)?;
        if !c.is_splitting() || e as u64 % c.d != 0 {
            return Ok(None);
        }
        match c.kind {
            Kind23::P1 => p1_part.push((p, e)),
            _ => p2_part.push((p, e)),
        }
    }
    Ok(Some(IndexFactorization23 {
        factors,
        p1_part,
        p2_part,
    }))
}

/// The closed-form index condition: with `a_k` the exponents of `P2`
/// basic indices, degree-1 primes contribute `a_k` and degree-11 primes
/// contribute 0 or 1 according to whether `3 | a_k`; `m` is an index iff
/// the total is not 1.
pub fn is_index_23(m: u64) -> Result<bool> {
    let Some(fac) = factor_index_23(m)? else {
        return Ok(false);
    };
    let mut total = 0u64;
    for &(p, e) in &fac.p2_part {
        let c = classify_p23(p)?;
        let a = e as u64 / c.d;
        total += if c.d == 1 { a } else { (a % 3 != 0) as u64 };
    }
    Ok(total != 1)
}

/// Residue distribution (mod 3) of the signed exponent sum over `pairs`
/// oriented pairs whose absolute exponents total `k`.
fn residue_counts(pairs: u64, k: u64) -> [u64; 3] {
    // dp[j][r]: ways to spend total j with sum = r (mod 3)
    let k = k as usize;
    let mut dp = vec![[0u64; 3]; k + 1];
    dp[0][0] = 1;
    for _ in 0..pairs {
        let mut next = vec![[0u64; 3]; k + 1];
        for used in 0..=k {
            for r in 0..3 {
                let ways = dp[used][r];
                if ways == 0 {
                    continue;
                }
                next[used][r] += ways;
                for j in 1..=(k - used) {
                    let j3 = j % 3;
                    next[used + j][(r + j3) % 3] += ways;
                    next[used + j][(r + 3 - j3) % 3] += ways;
                }
            }
        }
        dp = next;
    }
    dp[k]
}

/// Ideals `x` (coprime to their conjugate, `x conj(x) = (m)`) counted by
/// the class of `x`: entry `r` is the number in class `C^r`.
pub fn class_distribution_23(m: u64) -> Result<[u64; 3]> {
    if m == 0 {
        return Ok([0; 3]);
    }
    let Some(fac) = factor_index_23(m)? else {
        return Ok([0; 3]);
    };
    let mut acc = [1u64, 0, 0];
    for &(p, e) in &fac.factors {
        let c = classify_p23(p)?;
        let k = e as u64 / c.d;
        let local = if c.kind == Kind23::P1 {
            [euler_coeff(c.pairs, k), 0, 0]
        } else {
            residue_counts(c.pairs, k)
        };
        let mut next = [0u64; 3];
        for (a, &x) in acc.iter().enumerate() {
            for (b, &y) in local.iter().enumerate() {
                next[(a + b) % 3] += x * y;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Number of coincidence site modules of index `m` (the same for all
/// three module classes).
pub fn f_23(m: u64) -> Result<u64> {
    Ok(class_distribution_23(m)?[0])
}

/// Number of coincidence rotations of index `m`: `46 * f_23(m)`.
pub fn fhat_23(m: u64) -> Result<u64> {
    Ok(BIG_N_23 * f_23(m)?)
}

/// Number of coincidence reflections of index `m` on a non-principal
/// module, up to the 46 symmetry rotations.
pub fn reflection_count_23(m: u64) -> Result<u64> {
    Ok(class_distribution_23(m)?[1])
}

/// First `count` nonzero terms of `sum f_23(m) m^-s`.
pub fn series_23(count: usize) -> Result<DirichletTable> {
    let mut terms = Vec::with_capacity(count);
    let mut m = 1;
    while terms.len() < count {
        let c = f_23(m)?;
        if c > 0 {
            terms.push((m, c));
        }
        m += 1;
    }
    let bound = terms.last().map_or(0, |&(m, _)| m);
    Ok(DirichletTable {
        entries: terms,
        bound,
    })
}

/// Index of the reflection `x -> gamma conj(x)` on a prime ideal `p`,
/// given `norm(num(gamma))`, `norm(p)` and whether `p | num(gamma)`.
pub fn reflection_index_23(num_norm: u64, p_norm: u64, divides: bool) -> Result<u64> {
    if divides {
        if p_norm == 0 || num_norm % p_norm != 0 {
            return Err(Error::DivisibilityViolation { num_norm, p_norm });
        }
        Ok(num_norm / p_norm)
    } else {
        num_norm
            .checked_mul(p_norm)
            .ok_or(Error::TooLarge {
                value: num_norm,
                limit: u64::MAX / p_norm.max(1),
            })
    }
}

/// Smallest reflection index on a non-principal module and the number of
/// reflections attaining it.
///
/// For the module `p` (a prime ideal in class `C`), take
/// `gamma = p a / conj(p a)` with `a` of least norm in `C^2`. The least
/// such norm is the smallest `P2` basic index `q`, `p | num(gamma)`, and
/// there is one choice of `a` per prime pair above `q`.
pub fn min_reflection_index_nonprincipal() -> Result<(u64, u64)> {
    let mut p = 2;
    loop {
        if is_prime(p) && p != 23 {
            let c = classify_p23(p)?;
            if c.kind == Kind23::P2 && c.d == 1 {
                // module p above q itself: num(gamma) = p * a, norm q^2
                let index = reflection_index_23(p * p, p, true)?;
                return Ok((index, c.pairs));
            }
        }
        p += 1;
    }
}

/// First `k` reflection indices of a non-principal module.
pub fn reflection_indices_23(k: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(k);
    let mut m = 1;
    while out.len() < k {
        if reflection_count_23(m)? > 0 {
            out.push(m);
        }
        m += 1;
    }
    Ok(out)
}
