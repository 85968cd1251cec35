//! Integers of the n-th cyclotomic field `K = Q(xi)`, stored as coefficient
//! vectors over the power basis `1, xi, ..., xi^(phi(n)-1)`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{determinant, solve_rational, to_rational, IntMatrix};
use crate::splitting::SymmetryOrder;

/// Arithmetic context for one cyclotomic field.
#[derive(Debug)]
pub struct CyclotomicField {
    order: SymmetryOrder,
    /// Coefficients of the n-th cyclotomic polynomial, constant term first.
    modulus: Vec<i64>,
    /// `xi^k` reduced to the power basis, for `k = 0 .. n-1`.
    powers: Vec<Vec<i64>>,
}

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d for proper divisors d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

impl CyclotomicField {
    pub fn new(order: SymmetryOrder) -> Arc<Self> {
        let n = order.n() as usize;
        let modulus = cyclotomic_polynomial(order.n());
        let deg = modulus.len() - 1;
        let mut powers = Vec::with_capacity(n);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by xi
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1] - top * modulus[i];
            }
            cur[0] = -top * modulus[0];
        }
        Arc::new(CyclotomicField {
            order,
            modulus,
            powers,
        })
    }

    pub fn order(&self) -> &SymmetryOrder {
        &self.order
    }

    pub fn n(&self) -> u64 {
        self.order.n()
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Exponents `a` in `1..n` coprime to `n`: the Galois group.
    pub fn galois_exponents(&self) -> Vec<u64> {
        let n = self.n();
        (1..n).filter(|a| a.gcd(&n) == 1).collect()
    }

    /// Image of `xi` under the embedding indexed by `a`.
    pub fn embedding_root(&self, a: u64) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * a as f64 / self.n() as f64)
    }
}

/// An element of the ring of integers of `K`.
#[derive(Clone)]
pub struct CycInt {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.field.n() == other.field.n() && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(n={}, {:?})", self.field.n(), self.coeffs_string())
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*xi"),
                _ => format!("{c}*xi^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CycInt {
    pub fn from_coeffs<T: Into<BigInt>>(field: &Arc<CyclotomicField>, coeffs: Vec<T>) -> Self {
        let mut c: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        let deg = field.degree();
        // longer inputs are reduced modulo the cyclotomic polynomial
        let mut out = Self::zero(field);
        if c.len() > deg {
            let extra = c.split_off(deg);
            for (i, v) in extra.into_iter().enumerate() {
                out = out.add(&Self::xi_pow(field, (deg + i) as u64).scale(&v));
            }
        }
        c.resize(deg, BigInt::zero());
        out.add(&CycInt {
            field: field.clone(),
            coeffs: c,
        })
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CycInt {
            field: field.clone(),
            coeffs: vec![BigInt::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::xi_pow(field, 0)
    }

    pub fn from_int(field: &Arc<CyclotomicField>, v: i64) -> Self {
        Self::one(field).scale(&BigInt::from(v))
    }

    /// `xi^k`.
    pub fn xi_pow(field: &Arc<CyclotomicField>, k: u64) -> Self {
        let row = &field.powers[(k % field.n()) as usize];
        CycInt {
            field: field.clone(),
            coeffs: row.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// `zeta^j` for the primitive `N`-th root of unity `zeta = e^{2 pi i / N}`.
    /// For odd `n`, `zeta = -xi^((n+1)/2)`.
    pub fn root_of_unity(field: &Arc<CyclotomicField>, j: i64) -> Self {
        let order = field.order();
        let big_n = order.big_n() as i64;
        let j = j.rem_euclid(big_n) as u64;
        let n = order.n();
        if n % 2 == 0 {
            Self::xi_pow(field, j)
        } else {
            let v = Self::xi_pow(field, j * (n + 1) / 2 % n);
            if j % 2 == 1 {
                v.neg()
            } else {
                v
            }
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn n(&self) -> u64 {
        self.field.n()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeffs_string(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        CycInt {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycInt {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    /// Polynomial product reduced modulo the cyclotomic polynomial.
    pub fn mul(&self, other: &Self) -> Self {
        let deg = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        self.reduce(prod)
    }

    fn reduce(&self, poly: Vec<BigInt>) -> Self {
        let deg = self.field.degree();
        let n = self.field.n() as usize;
        let mut out = vec![BigInt::zero(); deg];
        for (k, c) in poly.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < deg {
                out[k] += c;
            } else {
                for (o, &p) in out.iter_mut().zip(&self.field.powers[k % n]) {
                    if p != 0 {
                        *o += &c * p;
                    }
                }
            }
        }
        CycInt {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The Galois automorphism `xi -> xi^a`.
    pub fn galois(&self, a: u64) -> Self {
        let n = self.field.n();
        let poly: Vec<(u64, &BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| ((a * k as u64) % n, c))
            .collect();
        let mut out = Self::zero(&self.field);
        for (k, c) in poly {
            if !c.is_zero() {
                out = out.add(&Self::xi_pow(&self.field, k).scale(c));
            }
        }
        out
    }

    /// Complex conjugation, `xi -> xi^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(self.field.n() - 1)
    }

    /// Matrix of `x -> self * x` on the power basis (columns are images of
    /// basis vectors).
    pub fn mult_matrix(&self) -> IntMatrix {
        let deg = self.field.degree();
        let cols: Vec<CycInt> = (0..deg)
            .map(|j| self.mul(&Self::xi_pow(&self.field, j as u64)))
            .collect();
        (0..deg)
            .map(|i| cols.iter().map(|c| c.coeffs[i].clone()).collect())
            .collect()
    }

    /// Absolute norm: the resultant of the coefficient polynomial with the
    /// cyclotomic polynomial, evaluated as the determinant of the
    /// multiplication map.
    pub fn norm(&self) -> BigInt {
        determinant(&self.mult_matrix())
    }

    /// Value under the embedding `xi -> e^{2 pi i a / n}`.
    pub fn embed_at(&self, a: u64) -> Complex64 {
        let root = self.field.embedding_root(a);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * root + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Value under the standard embedding `xi -> e^{2 pi i / n}`.
    pub fn embed(&self) -> Complex64 {
        self.embed_at(1)
    }

    /// `self / d` if it is integral.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let m = to_rational(&d.mult_matrix());
        let rhs: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let x = solve_rational(&m, &rhs)?;
        if x.iter().all(BigRational::is_integer) {
            Some(CycInt {
                field: self.field.clone(),
                coeffs: x.into_iter().map(|v| v.to_integer()).collect(),
            })
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// True if `self / other` is a unit.
    pub fn is_associate(&self, other: &Self) -> bool {
        self.norm().abs() == other.norm().abs() && self.div_exact(other).is_some()
    }

    /// If `self = zeta^j` for a root of unity, returns `j` mod `N`.
    pub fn root_of_unity_index(&self) -> Option<i64> {
        let big_n = self.field.order().big_n() as i64;
        (0..big_n).find(|&j| *self == Self::root_of_unity(&self.field, j))
    }

    /// Residue modulo the prime `1 - xi` when `n` is a prime power `p^r`:
    /// `xi = 1` there, so the residue is the coefficient sum mod `p`.
    pub fn residue_mod_one_minus_xi(&self, p: u64) -> u64 {
        let sum: BigInt = self.coeffs.iter().sum();
        sum.mod_floor(&BigInt::from(p)).to_u64().unwrap()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: u64) -> Arc<CyclotomicField> {
        CyclotomicField::new(SymmetryOrder::normalize(n).unwrap())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(23).len(), 23);
    }

    #[test]
    fn gaussian_norms() {
        let k = field(4);
        let a = CycInt::from_coeffs(&k, vec![2, 1]);
        assert_eq!(a.norm(), BigInt::from(5));
        assert_eq!(a.mul(&a.conj()), CycInt::from_int(&k, 5));
        assert_eq!(a.pow(2), CycInt::from_coeffs(&k, vec![3, 4]));
    }

    #[test]
    fn norm_is_multiplicative_and_matches_embeddings() {
        let k = field(7);
        let a = CycInt::from_coeffs(&k, vec![1, -1, 2, 0, 1, 0]);
        let b = CycInt::from_coeffs(&k, vec![0, 3, 0, -1, 1, 1]);
        assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        let float: f64 = k
            .galois_exponents()
            .iter()
            .map(|&e| a.embed_at(e))
            .fold(Complex64::new(1.0, 0.0), |acc, z| acc * z)
            .re;
        assert!((float - a.norm().to_f64().unwrap()).abs() < 1e-6);
    }

    #[test]
    fn roots_of_unity() {
        for n in [3, 4, 5, 8, 12] {
            let k = field(n);
            let big_n = k.order().big_n() as i64;
            let zeta = CycInt::root_of_unity(&k, 1);
            assert_eq!(zeta.pow(big_n as u32), CycInt::one(&k));
            let z = zeta.embed();
            let expect = Complex64::from_polar(1.0, 2.0 * PI / big_n as f64);
            assert!((z - expect).norm() < 1e-12, "n={n}");
            for j in 0..big_n {
                assert_eq!(CycInt::root_of_unity(&k, j).root_of_unity_index(), Some(j));
            }
        }
    }

    #[test]
    fn exact_division() {
        let k = field(5);
        let a = CycInt::from_coeffs(&k, vec![1, 2, 0, -1]);
        let b = CycInt::from_coeffs(&k, vec![3, 0, 1, 1]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert!(CycInt::from_int(&k, 2).div_exact(&CycInt::from_int(&k, 4)).is_none());
        let unit = CycInt::root_of_unity(&k, 3);
        assert!(a.is_associate(&a.mul(&unit)));
    }

    #[test]
    fn long_inputs_are_reduced() {
        let k = field(4);
        // 1 + x^2 = 0 in Z[i]
        assert!(CycInt::from_coeffs(&k, vec![1, 0, 1]).is_zero());
    }
}
