//! Brute-force coincidence indices from explicit bases, using nothing but
//! exact integer linear algebra. Used to cross-check the number-theoretic
//! index formula.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::linalg::{adjugate, determinant, hermite_normal_form, integer_kernel, mat_mul, IntMatrix};
use crate::splitting::SymmetryOrder;
use crate::words::{word_to_gamma, OmegaStore, RotationWord};

/// Full-rank lattice in `Z^k`; the columns of `basis` generate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    basis: IntMatrix,
}

impl IntLattice {
    pub fn new(basis: IntMatrix) -> Result<Self> {
        let k = basis.len();
        if let Some(row) = basis.iter().find(|r| r.len() != k) {
            return Err(Error::RankMismatch(k, row.len()));
        }
        if determinant(&basis).is_zero() {
            return Err(Error::Singular);
        }
        Ok(IntLattice { basis })
    }

    pub fn standard(k: usize) -> Self {
        IntLattice {
            basis: crate::linalg::identity(k),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Covolume `|det B|`.
    pub fn covolume(&self) -> BigUint {
        determinant(&self.basis).magnitude().clone()
    }

    pub fn hnf(&self) -> IntMatrix {
        hermite_normal_form(&self.basis)
    }

    fn scaled(&self, k: &BigInt) -> Self {
        IntLattice {
            basis: self
                .basis
                .iter()
                .map(|r| r.iter().map(|x| x * k).collect())
                .collect(),
        }
    }
}

/// Square matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    entries: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(entries: Vec<Vec<BigRational>>) -> Result<Self> {
        let k = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != k) {
            return Err(Error::RankMismatch(k, row.len()));
        }
        Ok(RationalMatrix { entries })
    }

    /// From `(numerator, denominator)` pairs.
    pub fn from_fractions(rows: &[Vec<(i64, i64)>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::with_capacity(row.len());
            for &(a, b) in row {
                if b == 0 {
                    return Err(Error::DenominatorZero);
                }
                out.push(BigRational::new(a.into(), b.into()));
            }
            entries.push(out);
        }
        Self::new(entries)
    }

    /// Rotation by the rational angle with `cos = c/m`, `sin = s/m`.
    pub fn rotation(c: i64, s: i64, m: i64) -> Result<Self> {
        Self::from_fractions(&[vec![(c, m), (-s, m)], vec![(s, m), (c, m)]])
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `(D, D * self)` with `D` the lcm of the denominators.
    pub fn clear_denominators(&self) -> (BigInt, IntMatrix) {
        let d = self
            .entries
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let m = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| (x * &d).to_integer()).collect())
            .collect();
        (d, m)
    }

    /// Image `self * L` as a lattice scaled by the common denominator.
    pub fn apply_scaled(&self, l: &IntLattice) -> Result<(BigInt, IntLattice)> {
        if self.rank() != l.rank() {
            return Err(Error::RankMismatch(self.rank(), l.rank()));
        }
        let (d, m) = self.clear_denominators();
        Ok((d, IntLattice::new(mat_mul(&m, l.basis()))?))
    }
}

/// `[L1 : L1 ∩ L2]`. With `X` the first block of an integer kernel basis
/// of `[B1 | -B2]`, `L1 ∩ L2 = B1 X Z^k`, so the index is `|det X|`.
pub fn intersection_index(l1: &IntLattice, l2: &IntLattice) -> Result<BigUint> {
    let k = l1.rank();
    if k != l2.rank() {
        return Err(Error::RankMismatch(k, l2.rank()));
    }
    let x = intersection_coordinates(l1, l2);
    Ok(determinant(&x).magnitude().clone())
}

/// Coordinates (w.r.t. `B1`) of a basis of `L1 ∩ L2`.
fn intersection_coordinates(l1: &IntLattice, l2: &IntLattice) -> IntMatrix {
    let k = l1.rank();
    let block: IntMatrix = (0..k)
        .map(|i| {
            l1.basis[i]
                .iter()
                .cloned()
                .chain(l2.basis[i].iter().map(|x| -x))
                .collect()
        })
        .collect();
    let ker = integer_kernel(&block);
    debug_assert_eq!(ker.first().map_or(0, Vec::len), k);
    ker.into_iter().take(k).collect()
}

/// Basis of `L1 ∩ L2`.
pub fn intersection(l1: &IntLattice, l2: &IntLattice) -> Result<IntLattice> {
    if l1.rank() != l2.rank() {
        return Err(Error::RankMismatch(l1.rank(), l2.rank()));
    }
    let x = intersection_coordinates(l1, l2);
    IntLattice::new(mat_mul(&l1.basis, &x))
}

/// `[L : L ∩ R L]` for a rational linear map `R`.
pub fn coincidence_index(l: &IntLattice, r: &RationalMatrix) -> Result<BigUint> {
    let (d, image) = r.apply_scaled(l)?;
    intersection_index(&l.scaled(&d), &image)
}

/// `[O : O ∩ gamma O]` for `gamma = num/den`, from the multiplication
/// matrices on the power basis.
pub fn csm_index_oracle(order: &SymmetryOrder, num: &CycInt, den: &CycInt) -> Result<BigUint> {
    if num.n() != order.n() || den.n() != order.n() {
        return Err(Error::MismatchedOrder(num.n(), order.n()));
    }
    if den.is_zero() {
        return Err(Error::DenominatorZero);
    }
    let modulus = (num.embed() / den.embed()).norm();
    if (modulus - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnitModulus(modulus));
    }
    let k = order.degree() as usize;
    let m_den = den.mult_matrix();
    let det = determinant(&m_den);
    // gamma = M_num M_den^{-1} = M_num adj(M_den) / det
    let adj = adjugate(&m_den).ok_or(Error::Singular)?;
    let image = IntLattice::new(mat_mul(&num.mult_matrix(), &adj))?;
    let scaled = IntLattice::standard(k).scaled(&det);
    intersection_index(&scaled, &image)
}

/// Oracle index for a word. Reflections use their rotation part, since
/// conjugation maps `O` onto itself.
pub fn csm_index_for_word(store: &OmegaStore, w: &RotationWord) -> Result<BigUint> {
    let g = word_to_gamma(store, w)?;
    csm_index_oracle(store.order(), &g.num, &g.den)
}

/// Point sets with shifted centres defined by congruences modulo the
/// ramified prime `c` (`1 + i` for the square lattice, `1 + rho` for the
/// triangular one).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ShiftedCase {
    /// `Z[i]` points `≢ 0 (1 + i)`.
    Gamma4,
    /// Eisenstein points `≢ 0 (1 + rho)` (honeycomb).
    HexH,
    /// Eisenstein points `≡ 1 (1 + rho)`.
    HexG,
}

impl ShiftedCase {
    fn order(self) -> u64 {
        match self {
            ShiftedCase::Gamma4 => 4,
            _ => 3,
        }
    }

    /// Residue field size and the admitted residues.
    fn residues(self) -> (u64, &'static [u64]) {
        match self {
            ShiftedCase::Gamma4 => (2, &[1]),
            ShiftedCase::HexH => (3, &[1, 2]),
            ShiftedCase::HexG => (3, &[1]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedResult {
    pub is_coincidence: bool,
    pub index: Option<BigUint>,
}

/// Whether `S ∩ R S` has finite index in `S`, and that index.
///
/// Writing `x = num * z`, the intersection is `{num z : num z ∈ S,
/// den z ∈ S}`; membership depends only on `z mod c`, so with `t` the
/// number of admissible residues of `z` the index is
/// `norm(num) * |S mod c| / t`. Reflections behave like their rotation
/// part because the congruence classes are conjugation invariant.
pub fn shifted_center_check(
    case: ShiftedCase,
    store: &OmegaStore,
    w: &RotationWord,
) -> Result<ShiftedResult> {
    if store.order().n() != case.order() || w.n() != case.order() {
        return Err(Error::UnsupportedCase(w.n()));
    }
    let g = word_to_gamma(store, w)?;
    let (q, admitted) = case.residues();
    let rn = g.num.residue_mod_one_minus_xi(q);
    let rd = g.den.residue_mod_one_minus_xi(q);
    let t = (0..q)
        .filter(|z| admitted.contains(&(rn * z % q)) && admitted.contains(&(rd * z % q)))
        .count() as u64;
    if t == 0 {
        return Ok(ShiftedResult {
            is_coincidence: false,
            index: None,
        });
    }
    let norm = g.num.norm().magnitude().clone();
    Ok(ShiftedResult {
        is_coincidence: true,
        index: Some(norm * admitted.len() as u64 / t),
    })
}
