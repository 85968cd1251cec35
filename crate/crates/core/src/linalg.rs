//! Exact integer and rational matrix routines. Matrices are row-major
//! `Vec<Vec<_>>`; everything is arbitrary precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn identity(k: usize) -> IntMatrix {
    (0..k)
        .map(|i| (0..k).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(BigInt::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Fraction-free Gaussian elimination (Bareiss).
pub fn determinant(m: &IntMatrix) -> BigInt {
    let k = m.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for i in 0..k {
        if a[i][i].is_zero() {
            match (i + 1..k).find(|&r| !a[r][i].is_zero()) {
                Some(r) => {
                    a.swap(i, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let v = (&a[r][c] * &a[i][i] - &a[r][i] * &a[i][c]) / &prev;
                a[r][c] = v;
            }
            a[r][i] = BigInt::zero();
        }
        prev = a[i][i].clone();
    }
    sign * &a[k - 1][k - 1]
}

pub fn to_rational(m: &IntMatrix) -> RatMatrix {
    m.iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Solves `a x = b` for square nonsingular `a`; `None` if singular.
pub fn solve_rational(a: &RatMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = a.len();
    let mut aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for c in col..=k {
            aug[col][c] = &aug[col][c] * &inv;
        }
        for r in 0..k {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in col..=k {
                    let v = &aug[col][c] * &factor;
                    aug[r][c] -= v;
                }
            }
        }
    }
    Some(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

pub fn inverse_rational(a: &RatMatrix) -> Option<RatMatrix> {
    let k = a.len();
    let mut cols = Vec::with_capacity(k);
    for j in 0..k {
        let e: Vec<BigRational> = (0..k)
            .map(|i| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        cols.push(solve_rational(a, &e)?);
    }
    Some((0..k).map(|i| (0..k).map(|j| cols[j][i].clone()).collect()).collect())
}

/// `det(a) * a^{-1}`, which is integral for integral `a`.
pub fn adjugate(a: &IntMatrix) -> Option<IntMatrix> {
    let det = determinant(a);
    let inv = inverse_rational(&to_rational(a))?;
    Some(
        inv.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| {
                        let v = x * BigRational::from_integer(det.clone());
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Unimodular column reduction of `a` (rows x cols). Returns the reduced
/// matrix, the transform `u` with `a * u = reduced`, and the rank. The
/// first `rank` columns of `reduced` are in column echelon form and the
/// remaining columns are zero.
pub fn column_echelon(a: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.clone();
    let mut u = identity(cols);
    let mut pivot_col = 0;
    for r in 0..rows {
        if pivot_col == cols {
            break;
        }
        loop {
            // smallest nonzero |entry| in row r among active columns
            let best = (pivot_col..cols)
                .filter(|&c| !m[r][c].is_zero())
                .min_by(|&x, &y| m[r][x].abs().cmp(&m[r][y].abs()));
            let Some(best) = best else { break };
            swap_cols(&mut m, &mut u, pivot_col, best);
            let mut done = true;
            for c in pivot_col + 1..cols {
                if m[r][c].is_zero() {
                    continue;
                }
                let q = m[r][c].div_floor(&m[r][pivot_col]);
                sub_col(&mut m, &mut u, c, pivot_col, &q);
                if !m[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !m[r][pivot_col].is_zero() {
            pivot_col += 1;
        }
    }
    (m, u, pivot_col)
}

fn swap_cols(m: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in m.iter_mut().chain(u.iter_mut()) {
        row.swap(i, j);
    }
}

/// column `target -= q * column source`
fn sub_col(m: &mut IntMatrix, u: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut().chain(u.iter_mut()) {
        let v = &row[source] * q;
        row[target] -= v;
    }
}

/// Basis (as columns of the returned matrix) of the integer kernel
/// `{x in Z^cols : a x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let cols = a.first().map_or(0, Vec::len);
    let (_, u, rank) = column_echelon(a);
    u.iter().map(|row| row[rank..cols].to_vec()).collect()
}

/// Column-style Hermite normal form of a full-rank square basis: lower
/// triangular, positive diagonal, entries left of the diagonal reduced
/// into `[0, diagonal)`. Two bases span the same lattice iff their HNFs
/// agree.
pub fn hermite_normal_form(basis: &IntMatrix) -> IntMatrix {
    let (mut h, _, rank) = column_echelon(basis);
    let k = h.len();
    let mut dummy: IntMatrix = Vec::new();
    for i in 0..rank.min(k) {
        if h[i][i].is_negative() {
            for row in h.iter_mut() {
                row[i] = -&row[i];
            }
        }
        for j in 0..i {
            let q = h[i][j].div_floor(&h[i][i]);
            if !q.is_zero() {
                sub_col(&mut h, &mut dummy, j, i, &q);
            }
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            determinant(&m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])),
            BigInt::from(4)
        );
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn adjugate_identity() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let adj = adjugate(&a).unwrap();
        let prod = mat_mul(&a, &adj);
        let det = determinant(&a);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { det.clone() } else { BigInt::zero() });
            }
        }
    }

    #[test]
    fn kernel_of_block_system() {
        let a = m(&[&[2, 0, -1, 0], &[0, 3, 0, -1]]);
        let ker = integer_kernel(&a);
        assert_eq!(ker.len(), 4);
        assert_eq!(ker[0].len(), 2);
        for j in 0..2 {
            let col: Vec<BigInt> = ker.iter().map(|r| r[j].clone()).collect();
            assert!(mat_vec(&a, &col).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn hnf_is_canonical() {
        let a = m(&[&[2, 1], &[0, 3]]);
        let b = m(&[&[1, 2], &[3, 0]]); // columns swapped
        let c = m(&[&[3, 1], &[3, 3]]); // second column added to first
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&c));
        let h = hermite_normal_form(&a);
        assert!(h[0][1].is_zero());
        assert!(h[0][0].is_positive() && h[1][1].is_positive());
    }
}
