//! The counting function `f(m)` (number of coincidence site modules of
//! index `m`), its Euler-factor coefficients and Dirichlet series, the
//! square-lattice representation counts, and the tabulated asymptotic
//! averages.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, DEFAULT_FACTOR_LIMIT};
use crate::error::{Error, Result};
use crate::splitting::{classify_prime, splitting_primes, SymmetryOrder};

/// Coefficient of `t^j` in `((1 + t) / (1 - t))^r`.
///
/// Each factor `(1 + t)/(1 - t) = 1 + 2t + 2t^2 + ...` is the two-sided sum
/// over one conjugate pair's exponent; the product is expanded exactly.
pub fn euler_coeff(pairs: u64, j: u64) -> u64 {
    let len = j as usize + 1;
    let mut poly = vec![0u64; len];
    poly[0] = 1;
    for _ in 0..pairs {
        // multiply by 1 + 2t + 2t^2 + ... truncated at degree j
        let mut next = vec![0u64; len];
        let mut running = 0u64;
        for k in 0..len {
            // next[k] = poly[k] + 2 * sum_{i<k} poly[i]
            next[k] = poly[k]
                .checked_add(running.checked_mul(2).expect("euler coefficient overflow"))
                .expect("euler coefficient overflow");
            running = running
                .checked_add(poly[k])
                .expect("euler coefficient overflow");
        }
        poly = next;
    }
    poly[j as usize]
}

fn require_cn1(order: &SymmetryOrder) -> Result<()> {
    if order.is_cn1() {
        Ok(())
    } else {
        Err(Error::DelegatedToClassNumber(order.n()))
    }
}

fn checked_factor(m: u64, limit: u64) -> Result<Vec<(u64, u32)>> {
    if m > limit {
        return Err(Error::TooLarge { value: m, limit });
    }
    Ok(factorize(m))
}

/// Per-prime data for a coincidence index: `(pairs, e_p / deg_k)` for each
/// prime power, or `None` if `m` is not a product of basic indices.
fn index_profile(order: &SymmetryOrder, m: u64, limit: u64) -> Result<Option<Vec<(u64, u64)>>> {
    require_cn1(order)?;
    let mut profile = Vec::new();
    for (p, e) in checked_factor(m, limit)? {
        let s = classify_prime(order, p)?;
        if !s.splitting || e as u64 % s.deg_k != 0 {
            return Ok(None);
        }
        profile.push((s.pairs, e as u64 / s.deg_k));
    }
    Ok(Some(profile))
}

pub fn is_coincidence_index(order: &SymmetryOrder, m: u64) -> Result<bool> {
    is_coincidence_index_with_limit(order, m, DEFAULT_FACTOR_LIMIT)
}

pub fn is_coincidence_index_with_limit(order: &SymmetryOrder, m: u64, limit: u64) -> Result<bool> {
    if m == 0 {
        return Ok(false);
    }
    Ok(index_profile(order, m, limit)?.is_some())
}

/// Number of coincidence site modules of index `m`.
pub fn f(order: &SymmetryOrder, m: u64) -> Result<u64> {
    f_with_limit(order, m, DEFAULT_FACTOR_LIMIT)
}

pub fn f_with_limit(order: &SymmetryOrder, m: u64, limit: u64) -> Result<u64> {
    if m == 0 {
        return Ok(0);
    }
    Ok(match index_profile(order, m, limit)? {
        None => 0,
        Some(profile) => profile
            .into_iter()
            .map(|(pairs, k)| euler_coeff(pairs, k))
            .product(),
    })
}

/// Number of coincidence rotations of index `m`: `N * f(m)`.
pub fn fhat(order: &SymmetryOrder, m: u64) -> Result<u64> {
    Ok(order.big_n() * f(order, m)?)
}

/// Sparse Dirichlet-series coefficients, complete for every `m <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletTable {
    pub entries: Vec<(u64, u64)>,
    pub bound: u64,
}

impl DirichletTable {
    pub fn coeff(&self, m: u64) -> u64 {
        self.entries
            .binary_search_by_key(&m, |&(k, _)| k)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps the first `count` terms and shrinks `bound` accordingly.
    pub fn truncate(&mut self, count: usize) {
        if self.entries.len() > count {
            self.entries.truncate(count);
            self.bound = self.entries.last().map_or(0, |&(m, _)| m);
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,f\n");
        for (m, c) in &self.entries {
            out.push_str(&format!("{m},{c}\n"));
        }
        out
    }

    /// JSON array of `[m, f]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|&(m, c)| serde_json::json!([m, c]))
                .collect(),
        )
    }

    /// Plain rendering in the style `1 + 2/9^s + 4/17^s + ...`.
    pub fn to_series_string(&self) -> String {
        self.entries
            .iter()
            .map(|&(m, c)| if m == 1 { c.to_string() } else { format!("{c}/{m}^s") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// All nonzero `(m, f(m))` with `m <= bound`, built by multiplying
/// powers of basic indices.
pub fn dirichlet_table_up_to(order: &SymmetryOrder, bound: u64) -> Result<DirichletTable> {
    require_cn1(order)?;
    let gens = splitting_primes(order, bound);
    let mut entries = Vec::new();
    products(&gens, 0, 1, 1, bound, &mut entries);
    entries.sort_unstable();
    Ok(DirichletTable { entries, bound })
}

fn products(
    gens: &[(u64, u64, u64)],
    start: usize,
    m: u64,
    coeff: u64,
    bound: u64,
    out: &mut Vec<(u64, u64)>,
) {
    out.push((m, coeff));
    for (i, &(_, index, pairs)) in gens.iter().enumerate().skip(start) {
        if m.saturating_mul(index) > bound {
            break;
        }
        let mut power = m * index;
        let mut k = 1;
        loop {
            products(gens, i + 1, power, coeff * euler_coeff(pairs, k), bound, out);
            match power.checked_mul(index) {
                Some(next) if next <= bound => {
                    power = next;
                    k += 1;
                }
                _ => break,
            }
        }
    }
}

/// The first `count` nonzero terms of the Dirichlet series of `f`.
pub fn dirichlet_terms(order: &SymmetryOrder, count: usize) -> Result<DirichletTable> {
    require_cn1(order)?;
    let mut bound = 64u64;
    loop {
        let mut table = dirichlet_table_up_to(order, bound)?;
        if table.len() >= count {
            table.truncate(count);
            return Ok(table);
        }
        bound = bound.checked_mul(2).ok_or(Error::TooLarge {
            value: bound,
            limit: u64::MAX / 2,
        })?;
    }
}

/// Number of squarefree divisors of `m`.
pub fn d_star(m: u64) -> u64 {
    1u64 << factorize(m).len()
}

/// Number of integer solutions of `a^2 + b^2 = M`, as `4 (d_1(M) - d_3(M))`
/// where `d_k` counts divisors congruent to `k` mod 4.
pub fn r_of(big_m: u64) -> u64 {
    let mut d1 = 0i64;
    let mut d3 = 0i64;
    for d in divisors(big_m) {
        match d % 4 {
            1 => d1 += 1,
            3 => d3 += 1,
            _ => {}
        }
    }
    (4 * (d1 - d3)) as u64
}

/// `r(M)` via the classes of its prime factors: `4 d(M_1)` if the part
/// made of primes `3 mod 4` is a square, else 0.
pub fn r_of_by_classes(big_m: u64) -> u64 {
    let mut count = 4;
    for (p, e) in factorize(big_m) {
        match p % 4 {
            1 => count *= e as u64 + 1,
            3 if e % 2 == 1 => return 0,
            _ => {}
        }
    }
    count
}

fn divisors(m: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(m) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs
}

/// Primitive solutions of `a^2 + b^2 = m^2`, by inclusion-exclusion over
/// the distinct prime factors of `m`.
pub fn r_star(m: u64) -> u64 {
    let primes: Vec<u64> = factorize(m).into_iter().map(|(p, _)| p).collect();
    let mut total = 0i64;
    for mask in 0u32..(1 << primes.len()) {
        let d: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p)
            .product();
        let q = m / d;
        let term = r_of(q * q) as i64;
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u64
}

/// Asymptotic average of `f(m)`: the residue of its Dirichlet series at 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageConstant {
    pub n: u64,
    pub value: f64,
    pub closed_form: String,
}

/// Only the six fields with a known closed form are tabulated.
pub fn average_csm(order: &SymmetryOrder) -> Result<AverageConstant> {
    let sqrt2 = 2f64.sqrt();
    let sqrt3 = 3f64.sqrt();
    let (value, closed_form) = match order.n() {
        3 => (sqrt3 / (2.0 * PI), "sqrt(3)/(2 pi)"),
        4 => (1.0 / PI, "1/pi"),
        5 => {
            let tau = (1.0 + 5f64.sqrt()) / 2.0;
            (5.0 * tau.ln() / (PI * PI), "5 log(tau)/pi^2")
        }
        7 => (
            21.0 * 7f64.sqrt() * regulator_7() / (16.0 * PI.powi(3)),
            "21 sqrt(7) R/(16 pi^3), R the regulator of Q(zeta_7)",
        ),
        8 => (
            2.0 * sqrt2 * (1.0 + sqrt2).ln() / (PI * PI),
            "2 sqrt(2) log(1 + sqrt(2))/pi^2",
        ),
        12 => (
            sqrt3 * (2.0 + sqrt3).ln() / (PI * PI),
            "sqrt(3) log(2 + sqrt(3))/pi^2",
        ),
        n => return Err(Error::NotTabulated(n)),
    };
    Ok(AverageConstant {
        n: order.n(),
        value,
        closed_form: closed_form.to_string(),
    })
}

/// Regulator of the 7th cyclotomic field.
pub fn regulator_7() -> f64 {
    let c = |k: f64| (2.0 * (k * PI / 7.0).cos()).ln();
    4.0 * (c(2.0).powi(2) - c(1.0) * c(3.0))
}
