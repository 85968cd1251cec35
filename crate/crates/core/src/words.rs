//! Coincidence rotations as words in conjugate prime pairs.
//!
//! Every coincidence isometry of the principal module is
//! `x -> gamma * x` or `x -> gamma * conj(x)` with
//! `gamma = zeta^u * prod_k g_k^{e_k}`, where each `g_k = zeta^{j_k} w_k / conj(w_k)`
//! is the canonical generator attached to one conjugate pair of prime
//! elements above a complex splitting prime. A [`RotationWord`] stores
//! `u`, the exponents `e_k` and the reflection flag; the prime elements
//! themselves live in an [`OmegaStore`].

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, isqrt};
use crate::cyclotomic::{CycInt, CyclotomicField};
use crate::error::{Error, Result};
use crate::splitting::{classify_prime, splitting_primes, SymmetryOrder};

/// A conjugate pair of prime elements: `(p, pair id)`.
pub type PairLabel = (u64, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotationWord {
    n: u64,
    unit_exp: i64,
    exponents: BTreeMap<PairLabel, i64>,
    conjugated: bool,
}

impl RotationWord {
    pub fn identity(order: &SymmetryOrder) -> Self {
        RotationWord {
            n: order.n(),
            unit_exp: 0,
            exponents: BTreeMap::new(),
            conjugated: false,
        }
    }

    pub fn new(
        order: &SymmetryOrder,
        unit_exp: i64,
        exponents: impl IntoIterator<Item = (PairLabel, i64)>,
        conjugated: bool,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (label, e) in exponents {
            *map.entry(label).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        RotationWord {
            n: order.n(),
            unit_exp: unit_exp.rem_euclid(order.big_n() as i64),
            exponents: map,
            conjugated,
        }
    }

    /// The generator of a single pair, `g_k`.
    pub fn generator(order: &SymmetryOrder, p: u64, pair: usize) -> Self {
        Self::new(order, 0, [((p, pair), 1)], false)
    }

    /// Rotation through `2 pi j / N`.
    pub fn unit(order: &SymmetryOrder, j: i64) -> Self {
        Self::new(order, j, [], false)
    }

    /// Reflection in the real axis.
    pub fn reflection(order: &SymmetryOrder) -> Self {
        Self::new(order, 0, [], true)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> SymmetryOrder {
        SymmetryOrder::normalize(self.n).expect("canonical order")
    }

    pub fn unit_exp(&self) -> i64 {
        self.unit_exp
    }

    pub fn exponents(&self) -> &BTreeMap<PairLabel, i64> {
        &self.exponents
    }

    pub fn is_conjugated(&self) -> bool {
        self.conjugated
    }

    pub fn is_identity(&self) -> bool {
        self.unit_exp == 0 && self.exponents.is_empty() && !self.conjugated
    }

    /// Group inverse in `SOC x| <conj>`.
    pub fn inverse(&self) -> Self {
        let order = self.order();
        if self.conjugated {
            // (gamma conj)^2 = gamma * conj(gamma) = 1
            self.clone()
        } else {
            Self::new(
                &order,
                -self.unit_exp,
                self.exponents.iter().map(|(&l, &e)| (l, -e)),
                false,
            )
        }
    }

    pub fn to_json(&self) -> WordJson {
        WordJson {
            n: self.n,
            unit_exp: self.unit_exp,
            conjugated: self.conjugated,
            exponents: self
                .exponents
                .iter()
                .map(|(&(p, pair), &e)| ExponentJson { p, pair, e })
                .collect(),
        }
    }

    pub fn from_json(json: &WordJson) -> Result<Self> {
        let order = SymmetryOrder::normalize(json.n).map_err(|e| Error::InvalidWord(e.to_string()))?;
        for x in &json.exponents {
            let s = classify_prime(&order, x.p).map_err(|e| Error::InvalidWord(e.to_string()))?;
            if !s.splitting {
                return Err(Error::InvalidWord(format!("{} is not a complex splitting prime", x.p)));
            }
            if x.pair as u64 >= s.pairs {
                return Err(Error::InvalidWord(format!(
                    "pair {} out of range for p = {} ({} pairs)",
                    x.pair, x.p, s.pairs
                )));
            }
        }
        Ok(Self::new(
            &order,
            json.unit_exp,
            json.exponents.iter().map(|x| ((x.p, x.pair), x.e)),
            json.conjugated,
        ))
    }
}

/// Serialized form of a word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub n: u64,
    pub unit_exp: i64,
    pub conjugated: bool,
    pub exponents: Vec<ExponentJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentJson {
    pub p: u64,
    pub pair: usize,
    pub e: i64,
}

/// Composition `w1 o w2` (apply `w2` first). Conjugation inverts the
/// rotation it is pushed through.
pub fn compose(w1: &RotationWord, w2: &RotationWord) -> Result<RotationWord> {
    if w1.n != w2.n {
        return Err(Error::MismatchedOrder(w1.n, w2.n));
    }
    let order = w1.order();
    let sign = if w1.conjugated { -1 } else { 1 };
    let exps = w1
        .exponents
        .iter()
        .map(|(&l, &e)| (l, e))
        .chain(w2.exponents.iter().map(|(&l, &e)| (l, sign * e)));
    Ok(RotationWord::new(
        &order,
        w1.unit_exp + sign * w2.unit_exp,
        exps,
        w1.conjugated ^ w2.conjugated,
    ))
}

/// Coincidence index: `prod (p^d)^{|e|}`. Reflections have the index of
/// their rotation part.
pub fn sigma(w: &RotationWord) -> Result<BigUint> {
    let order = w.order();
    let mut acc = BigUint::one();
    for (&(p, pair), &e) in &w.exponents {
        let s = classify_prime(&order, p)?;
        if !s.splitting || pair as u64 >= s.pairs {
            return Err(Error::InvalidWord(format!("no pair {pair} above {p}")));
        }
        acc *= s.basic_index.expect("splitting").pow(e.unsigned_abs() as u32);
    }
    Ok(acc)
}

/// One conjugate pair `{w, conj(w)}` with the unit shift `j` that puts the
/// angle of `zeta^j w / conj(w)` into `(0, pi/N)`.
#[derive(Debug, Clone)]
pub struct PairGenerator {
    pub omega: CycInt,
    pub omega_bar: CycInt,
    pub unit_shift: i64,
}

impl PairGenerator {
    /// Angle of `zeta^j w / conj(w)` in radians.
    pub fn angle(&self) -> f64 {
        let big_n = self.omega.field().order().big_n() as f64;
        2.0 * self.omega.embed().arg() + 2.0 * PI * self.unit_shift as f64 / big_n
    }

    /// Orients `omega` (swapping with its conjugate if needed) and picks
    /// the unit shift.
    pub fn normalized(omega: CycInt) -> Self {
        let big_n = omega.field().order().big_n() as f64;
        let step = 2.0 * PI / big_n;
        let theta = 2.0 * omega.embed().arg();
        let theta0 = theta.rem_euclid(step);
        let (omega, theta) = if theta0 > step / 2.0 {
            (omega.conj(), -theta)
        } else {
            (omega, theta)
        };
        let unit_shift = -(theta / step).floor() as i64;
        let omega_bar = omega.conj();
        PairGenerator {
            omega,
            omega_bar,
            unit_shift,
        }
    }
}

/// `w` with `|norm| = p` for `n = 4` (Gaussian integers) or `n = 3`
/// (Eisenstein integers), oriented so that its pair generator has angle
/// in `(0, pi/N)`.
pub fn split_prime_quadratic(order: &SymmetryOrder, p: u64) -> Result<PairGenerator> {
    let n = order.n();
    if n != 3 && n != 4 {
        return Err(Error::UnsupportedCase(n));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % n != 1 {
        return Err(Error::NotSplitting { n, p });
    }
    let field = CyclotomicField::new(*order);
    // a^2 - ab + b^2 >= (a^2 + b^2) / 2, so both coordinates are below sqrt(2p)
    let r = isqrt(2 * p) as i64 + 1;
    let p = p as i64;
    for a in 0..=r {
        for b in 1..=r {
            // n = 4: N(a + b i) = a^2 + b^2; n = 3: N(a + b xi) = a^2 - ab + b^2
            let norm = if n == 4 { a * a + b * b } else { a * a - a * b + b * b };
            if norm == p {
                let w = CycInt::from_coeffs(&field, vec![a, b]);
                return Ok(PairGenerator::normalized(w));
            }
        }
    }
    unreachable!("a prime = 1 mod n is a norm from the quadratic field")
}

/// Exhaustive search for a prime element above the splitting prime `p`:
/// the lexicographically first coefficient vector in
/// `[-bound, bound]^phi(n)` with `|norm| = p^d` that is not associate to
/// its conjugate.
pub fn find_prime_general(order: &SymmetryOrder, p: u64, coeff_bound: i64) -> Result<CycInt> {
    let s = classify_prime(order, p)?;
    if !s.splitting {
        return Err(Error::NotSplitting { n: order.n(), p });
    }
    let field = CyclotomicField::new(*order);
    let target = BigInt::from(p).pow(s.deg_k as u32);
    let target_f = target.to_f64().unwrap();
    let deg = field.degree();
    // half of the embeddings; |norm| = prod |sigma(x)|^2 over them
    let roots: Vec<Vec<num_complex::Complex64>> = field
        .galois_exponents()
        .into_iter()
        .filter(|&a| 2 * a < field.n())
        .map(|a| {
            let z = field.embedding_root(a);
            (0..deg).map(|k| z.powi(k as i32)).collect()
        })
        .collect();
    let mut v = vec![-coeff_bound; deg];
    loop {
        if v.iter().any(|&x| x != 0) {
            let approx: f64 = roots
                .iter()
                .map(|pw| {
                    pw.iter()
                        .zip(&v)
                        .map(|(z, &c)| z * c as f64)
                        .sum::<num_complex::Complex64>()
                        .norm_sqr()
                })
                .product();
            if (approx - target_f).abs() < 0.5 {
                let w = CycInt::from_coeffs(&field, v.clone());
                if w.norm().abs() == target && !w.is_associate(&w.conj()) {
                    return Ok(w);
                }
            }
        }
        // next vector in lexicographic order
        let mut i = deg;
        loop {
            if i == 0 {
                return Err(Error::SearchExhausted {
                    p,
                    d: s.deg_k as u32,
                    bound: coeff_bound,
                });
            }
            i -= 1;
            if v[i] < coeff_bound {
                v[i] += 1;
                for x in v.iter_mut().skip(i + 1) {
                    *x = -coeff_bound;
                }
                break;
            }
        }
    }
}

/// Search bound schedule for prime elements.
const SEARCH_BOUNDS: [i64; 4] = [2, 4, 8, 16];

/// Canonical prime elements for the splitting primes of one field.
#[derive(Debug, Clone)]
pub struct OmegaStore {
    field: Arc<CyclotomicField>,
    primes: BTreeMap<u64, Vec<PairGenerator>>,
}

impl OmegaStore {
    pub fn new(order: &SymmetryOrder) -> Self {
        OmegaStore {
            field: CyclotomicField::new(*order),
            primes: BTreeMap::new(),
        }
    }

    /// Store with every splitting prime of basic index `<= max_index`.
    pub fn build(order: &SymmetryOrder, max_index: u64) -> Result<Self> {
        let mut store = Self::new(order);
        for (p, _, _) in splitting_primes(order, max_index) {
            store.insert_prime(p)?;
        }
        Ok(store)
    }

    /// Store with exactly the given primes.
    pub fn for_primes(order: &SymmetryOrder, primes: &[u64]) -> Result<Self> {
        let mut store = Self::new(order);
        for &p in primes {
            store.insert_prime(p)?;
        }
        Ok(store)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> &SymmetryOrder {
        self.field.order()
    }

    pub fn pairs(&self, p: u64) -> Option<&[PairGenerator]> {
        self.primes.get(&p).map(Vec::as_slice)
    }

    pub fn pair(&self, p: u64, pair: usize) -> Result<&PairGenerator> {
        self.primes
            .get(&p)
            .and_then(|v| v.get(pair))
            .ok_or(Error::MissingOmega { p, pair })
    }

    /// Finds one prime element above `p`, spreads it over the Galois orbit
    /// and assigns pair ids in order of each pair's lexicographically least
    /// representative.
    pub fn insert_prime(&mut self, p: u64) -> Result<()> {
        if self.primes.contains_key(&p) {
            return Ok(());
        }
        let order = *self.order();
        let s = classify_prime(&order, p)?;
        if !s.splitting {
            return Err(Error::NotSplitting { n: order.n(), p });
        }
        let seed = if order.n() == 3 || order.n() == 4 {
            split_prime_quadratic(&order, p)?.omega
        } else {
            let mut found = None;
            for bound in SEARCH_BOUNDS {
                match find_prime_general(&order, p, bound) {
                    Ok(w) => {
                        found = Some(w);
                        break;
                    }
                    Err(Error::SearchExhausted { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            found.ok_or(Error::SearchExhausted {
                p,
                d: s.deg_k as u32,
                bound: SEARCH_BOUNDS[SEARCH_BOUNDS.len() - 1],
            })?
        };

        // group the Galois orbit into conjugate pairs of prime ideals
        let mut reps: Vec<CycInt> = Vec::new();
        for a in self.field.galois_exponents() {
            let b = seed.galois(a);
            let known = reps
                .iter()
                .any(|r| r.is_associate(&b) || r.conj().is_associate(&b));
            if !known {
                reps.push(b);
            }
        }
        if reps.len() as u64 != s.pairs {
            return Err(Error::InvalidWord(format!(
                "found {} pairs above {p}, expected {}",
                reps.len(),
                s.pairs
            )));
        }
        let big_n = order.big_n() as i64;
        let mut keyed: Vec<(Vec<BigInt>, CycInt)> = reps
            .into_iter()
            .map(|r| {
                let mut best: Option<CycInt> = None;
                for j in 0..big_n {
                    let unit = CycInt::root_of_unity(&self.field, j);
                    for cand in [r.mul(&unit), r.conj().mul(&unit)] {
                        if best.as_ref().is_none_or(|b| cand.coeffs() < b.coeffs()) {
                            best = Some(cand);
                        }
                    }
                }
                let best = best.expect("nonempty");
                (best.coeffs().to_vec(), best)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let gens = keyed
            .into_iter()
            .map(|(_, w)| PairGenerator::normalized(w))
            .collect();
        self.primes.insert(p, gens);
        Ok(())
    }
}

/// The field element of a word: `gamma = num / den`.
#[derive(Debug, Clone)]
pub struct Gamma {
    pub num: CycInt,
    pub den: CycInt,
    /// Argument of `num/den` under `xi -> e^{2 pi i / n}`.
    pub angle: f64,
    pub conjugated: bool,
}

pub fn word_to_gamma(store: &OmegaStore, w: &RotationWord) -> Result<Gamma> {
    if w.n() != store.order().n() {
        return Err(Error::MismatchedOrder(w.n(), store.order().n()));
    }
    let field = store.field();
    let mut num = CycInt::one(field);
    let mut den = CycInt::one(field);
    let mut unit = w.unit_exp();
    for (&(p, pair), &e) in w.exponents() {
        let g = store.pair(p, pair)?;
        let k = e.unsigned_abs() as u32;
        unit += g.unit_shift * e;
        if e > 0 {
            num = num.mul(&g.omega.pow(k));
            den = den.mul(&g.omega_bar.pow(k));
        } else {
            num = num.mul(&g.omega_bar.pow(k));
            den = den.mul(&g.omega.pow(k));
        }
    }
    num = num.mul(&CycInt::root_of_unity(field, unit));
    let angle = (num.embed() / den.embed()).arg();
    Ok(Gamma {
        num,
        den,
        angle,
        conjugated: w.is_conjugated(),
    })
}

/// Machine-readable summary of one rotation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RotationReport {
    pub word: WordJson,
    pub sigma: String,
    pub angle_radians: f64,
    pub numerator_coeffs: Vec<String>,
    pub denominator_coeffs: Vec<String>,
}

pub fn rotation_report(store: &OmegaStore, w: &RotationWord) -> Result<RotationReport> {
    let g = word_to_gamma(store, w)?;
    Ok(RotationReport {
        word: w.to_json(),
        sigma: sigma(w)?.to_string(),
        angle_radians: g.angle,
        numerator_coeffs: g.num.coeffs_string(),
        denominator_coeffs: g.den.coeffs_string(),
    })
}

/// One representative word (no unit, no reflection) for every coincidence
/// site module of index `<= bound`, ordered by index and then exponents.
pub fn enumerate_rotations(order: &SymmetryOrder, bound: u64) -> Result<Vec<RotationWord>> {
    if !order.is_cn1() {
        return Err(Error::DelegatedToClassNumber(order.n()));
    }
    let gens: Vec<(PairLabel, u64)> = splitting_primes(order, bound)
        .into_iter()
        .flat_map(|(p, index, pairs)| (0..pairs as usize).map(move |k| ((p, k), index)))
        .collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    walk(order, &gens, 0, 1, bound, &mut stack, &mut out);
    let mut keyed: Vec<(u64, RotationWord)> = out;
    keyed.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            let ea: Vec<_> = a.1.exponents.iter().collect();
            let eb: Vec<_> = b.1.exponents.iter().collect();
            ea.cmp(&eb)
        })
    });
    Ok(keyed.into_iter().map(|(_, w)| w).collect())
}

fn walk(
    order: &SymmetryOrder,
    gens: &[(PairLabel, u64)],
    start: usize,
    m: u64,
    bound: u64,
    stack: &mut Vec<(PairLabel, i64)>,
    out: &mut Vec<(u64, RotationWord)>,
) {
    out.push((m, RotationWord::new(order, 0, stack.iter().copied(), false)));
    for (i, &(label, index)) in gens.iter().enumerate().skip(start) {
        if m.saturating_mul(index) > bound {
            break;
        }
        let mut power = m * index;
        let mut k = 1i64;
        loop {
            for sign in [1, -1] {
                stack.push((label, sign * k));
                walk(order, gens, i + 1, power, bound, stack, out);
                stack.pop();
            }
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

/// Index of a word as `u64`, for callers that know it fits.
pub fn sigma_u64(w: &RotationWord) -> Result<u64> {
    sigma(w)?
        .to_u64()
        .ok_or(Error::InvalidWord("index exceeds u64".into()))
}

/// Whether a word's embedded `gamma` has modulus one (it always should).
pub fn unit_modulus_error(g: &Gamma) -> f64 {
    ((g.num.embed() / g.den.embed()).norm() - 1.0).abs()
}

/// Magnitude of the largest numerator coefficient, for diagnostics.
pub fn max_coeff(x: &CycInt) -> BigInt {
    x.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{d_star, f};

    fn ord(n: u64) -> SymmetryOrder {
        SymmetryOrder::normalize(n).unwrap()
    }

    #[test]
    fn gaussian_generators_match_pythagorean_list() {
        let o = ord(4);
        let expected = [
            (5, 4.0, 3.0),
            (13, 12.0, 5.0),
            (17, 15.0, 8.0),
            (29, 21.0, 20.0),
            (37, 35.0, 12.0),
            (41, 40.0, 9.0),
        ];
        let store = OmegaStore::build(&o, 41).unwrap();
        for (p, c, s) in expected {
            let g = split_prime_quadratic(&o, p).unwrap();
            let want = (s / p as f64).atan2(c / p as f64);
            assert!((g.angle() - want).abs() < 1e-12, "p={p}");
            assert!(g.angle() > 0.0 && g.angle() < PI / 4.0);
            let gamma = word_to_gamma(&store, &RotationWord::generator(&o, p, 0)).unwrap();
            assert!((gamma.angle - want).abs() < 1e-12);
        }
    }

    #[test]
    fn eisenstein_split() {
        let o = ord(3);
        let g = split_prime_quadratic(&o, 7).unwrap();
        assert_eq!(g.omega.norm(), BigInt::from(7));
        assert!(g.angle() > 0.0 && g.angle() < PI / 6.0);
        assert!(matches!(
            split_prime_quadratic(&o, 5),
            Err(Error::NotSplitting { .. })
        ));
        assert!(matches!(
            split_prime_quadratic(&ord(4), 7),
            Err(Error::NotSplitting { .. })
        ));
    }

    #[test]
    fn general_prime_search() {
        for (n, p, norm) in [(5, 11, 11), (8, 17, 17), (8, 3, 9), (12, 13, 13), (7, 2, 8)] {
            let o = ord(n);
            let w = find_prime_general(&o, p, 2).unwrap();
            assert_eq!(w.norm().abs(), BigInt::from(norm), "n={n} p={p}");
            let ratio_unit = (0..o.big_n() as i64).any(|j| {
                w.mul(&CycInt::root_of_unity(w.field(), j)) == w.conj()
            });
            assert!(!ratio_unit);
        }
        assert!(matches!(
            find_prime_general(&ord(5), 19, 2),
            Err(Error::NotSplitting { .. })
        ));
    }

    #[test]
    fn store_pairs_and_orientation() {
        let o = ord(5);
        let store = OmegaStore::build(&o, 61).unwrap();
        for p in [11, 31, 41, 61] {
            let pairs = store.pairs(p).unwrap();
            assert_eq!(pairs.len(), 2);
            for g in pairs {
                assert_eq!(g.omega.norm(), BigInt::from(p));
                assert!(g.angle() > 0.0 && g.angle() < PI / 10.0, "p={p}");
            }
            assert!(!pairs[0].omega.is_associate(&pairs[1].omega));
            assert!(!pairs[0].omega.is_associate(&pairs[1].omega_bar));
        }
    }

    #[test]
    fn gamma_examples() {
        let o = ord(4);
        let store = OmegaStore::build(&o, 13).unwrap();
        let id = word_to_gamma(&store, &RotationWord::identity(&o)).unwrap();
        assert!(id.num.is_one() && id.den.is_one() && id.angle == 0.0);
        let g = word_to_gamma(&store, &RotationWord::generator(&o, 5, 0)).unwrap();
        assert!((g.angle - 0.6435011087932844).abs() < 1e-12);
        assert_eq!(g.num.norm(), BigInt::from(5));
        let inv = RotationWord::new(&o, 0, [((5, 0), -1)], false);
        let g = word_to_gamma(&store, &inv).unwrap();
        assert!((g.angle + 0.6435011087932844).abs() < 1e-12);
        assert!(matches!(
            word_to_gamma(&store, &RotationWord::generator(&o, 17, 0)),
            Err(Error::MissingOmega { p: 17, pair: 0 })
        ));
    }

    #[test]
    fn sigma_examples() {
        let o = ord(4);
        assert_eq!(sigma(&RotationWord::identity(&o)).unwrap(), BigUint::one());
        assert_eq!(
            sigma(&RotationWord::generator(&o, 5, 0)).unwrap(),
            BigUint::from(5u32)
        );
        let w = RotationWord::new(&o, 3, [((5, 0), 1), ((13, 0), -2)], true);
        assert_eq!(sigma(&w).unwrap(), BigUint::from(845u32));
    }

    #[test]
    fn enumeration_examples() {
        let words = enumerate_rotations(&ord(4), 5).unwrap();
        assert_eq!(words.len(), 3);
        assert!(words[0].is_identity());
        assert_eq!(enumerate_rotations(&ord(4), 4).unwrap().len(), 1);
        assert_eq!(enumerate_rotations(&ord(5), 11).unwrap().len(), 5);
    }

    #[test]
    fn enumeration_counts_match_f() {
        for n in [3, 4, 5, 7, 8, 12] {
            let o = ord(n);
            let words = enumerate_rotations(&o, 1500).unwrap();
            let mut counts = BTreeMap::new();
            for w in &words {
                *counts.entry(sigma_u64(w).unwrap()).or_insert(0u64) += 1;
            }
            for m in 1..=1500 {
                assert_eq!(
                    counts.get(&m).copied().unwrap_or(0),
                    f(&o, m).unwrap(),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn square_lattice_words_count_squarefree_divisors() {
        let o = ord(4);
        let words = enumerate_rotations(&o, 2000).unwrap();
        let mut counts = BTreeMap::new();
        for w in &words {
            *counts.entry(sigma_u64(w).unwrap()).or_insert(0u64) += 1;
        }
        for (m, c) in counts {
            assert_eq!(c, d_star(m));
        }
    }

    #[test]
    fn compose_examples() {
        let o = ord(4);
        let w = RotationWord::new(&o, 1, [((5, 0), 2), ((13, 0), -1)], false);
        assert!(compose(&w, &w.inverse()).unwrap().is_identity());
        let r = RotationWord::reflection(&o);
        let rr = compose(&r, &r).unwrap();
        assert!(!rr.is_conjugated() && rr.is_identity());
        let a = RotationWord::new(&o, 0, [((5, 0), 1)], true);
        let b = RotationWord::new(&o, 0, [((5, 0), 1)], false);
        let ab = compose(&a, &b).unwrap();
        assert!(ab.is_conjugated());
        assert!(ab.exponents().is_empty());
        let ba = compose(&b, &a).unwrap();
        assert_eq!(ba.exponents().get(&(5, 0)), Some(&2));
        assert!(matches!(
            compose(&w, &RotationWord::identity(&ord(3))),
            Err(Error::MismatchedOrder(4, 3))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let o = ord(8);
        let w = RotationWord::new(&o, 5, [((17, 1), -2), ((3, 0), 1)], true);
        let text = serde_json::to_string(&w.to_json()).unwrap();
        let back: WordJson = serde_json::from_str(&text).unwrap();
        assert_eq!(RotationWord::from_json(&back).unwrap(), w);
        let bad = WordJson {
            n: 8,
            unit_exp: 0,
            conjugated: false,
            exponents: vec![ExponentJson { p: 7, pair: 0, e: 1 }],
        };
        assert!(RotationWord::from_json(&bad).is_err());
    }
}
