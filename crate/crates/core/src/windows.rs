//! Acceptance factors for cut-and-project vertex sets: the fraction of
//! module coincidences that survive because the internal-space image must
//! lie in both the window and its rotated copy.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::linalg::solve_rational;
use crate::words::{word_to_gamma, OmegaStore, RotationWord};

/// Internal-space rotation reduced to one sector of the window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceInput {
    pub n_gon: u64,
    pub psi: f64,
    pub psi_hat: f64,
}

impl AcceptanceInput {
    pub fn new(n_gon: u64, psi: f64) -> Result<Self> {
        check_polygon(n_gon)?;
        Ok(AcceptanceInput {
            n_gon,
            psi,
            psi_hat: psi_hat(n_gon, psi),
        })
    }

    pub fn alpha(&self) -> f64 {
        2.0 * PI / self.n_gon as f64
    }
}

fn check_polygon(n_gon: u64) -> Result<()> {
    if n_gon < 3 {
        Err(Error::InvalidPolygon(n_gon))
    } else {
        Ok(())
    }
}

/// `psi - floor(n psi / 2 pi) * 2 pi / n`, in `[0, 2 pi / n)`.
pub fn psi_hat(n_gon: u64, psi: f64) -> f64 {
    let alpha = 2.0 * PI / n_gon as f64;
    let r = psi - (psi / alpha).floor() * alpha;
    // guard the upper end against rounding
    if r >= alpha {
        0.0
    } else {
        r
    }
}

/// Acceptance factor of the regular octagonal window.
pub fn acceptance_octagon(psi: f64) -> f64 {
    let h = psi_hat(8, psi);
    1.0 - (1.0 - 1.0 / 2f64.sqrt()) * h.sin() * (PI / 4.0 - h).sin()
}

/// Acceptance factor for a regular `n_gon`-gon window, in the closed form
/// that generalizes [`acceptance_octagon`].
pub fn acceptance_ngon(n_gon: u64, psi: f64) -> Result<f64> {
    let input = AcceptanceInput::new(n_gon, psi)?;
    let alpha = input.alpha();
    let h = input.psi_hat;
    let c = (alpha / 2.0).sin() / alpha.sin();
    Ok(1.0 - c * c * h.sin() * (alpha - h).sin())
}

/// Exact area ratio `|W ∩ R W| / |W|` for the regular `n_gon`-gon:
/// `cos(a/2) / (cos(h/2) cos((a - h)/2))`.
pub fn exact_overlap_ngon(n_gon: u64, psi: f64) -> Result<f64> {
    let input = AcceptanceInput::new(n_gon, psi)?;
    let alpha = input.alpha();
    let h = input.psi_hat;
    Ok((alpha / 2.0).cos() / ((h / 2.0).cos() * ((alpha - h) / 2.0).cos()))
}

/// Vertices of the regular `n_gon`-gon with circumradius 1, counterclockwise,
/// starting at angle `pi / n_gon + offset`.
pub fn regular_polygon(n_gon: u64, offset: f64) -> Vec<(f64, f64)> {
    (0..n_gon)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n_gon as f64 + PI / n_gon as f64 + offset;
            (t.cos(), t.sin())
        })
        .collect()
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

pub fn polygon_area(poly: &[(f64, f64)]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum::<f64>()
        / 2.0
}

/// Sutherland–Hodgman clipping of `subject` by the convex counterclockwise
/// polygon `clip`.
pub fn clip_convex(subject: &[(f64, f64)], clip: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = subject.to_vec();
    for i in 0..clip.len() {
        if out.is_empty() {
            break;
        }
        let (a, b) = (clip[i], clip[(i + 1) % clip.len()]);
        let input = std::mem::take(&mut out);
        for j in 0..input.len() {
            let cur = input[j];
            let prev = input[(j + input.len() - 1) % input.len()];
            let (dc, dp) = (cross(a, b, cur), cross(a, b, prev));
            if dc >= 0.0 {
                if dp < 0.0 {
                    out.push(intersect(prev, cur, dp, dc));
                }
                out.push(cur);
            } else if dp >= 0.0 {
                out.push(intersect(prev, cur, dp, dc));
            }
        }
    }
    out
}

fn intersect(p: (f64, f64), q: (f64, f64), dp: f64, dq: f64) -> (f64, f64) {
    let t = dp / (dp - dq);
    (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1))
}

/// `|W ∩ R_psi W| / |W|` by clipping, for the regular `n_gon`-gon `W`
/// centred at the origin.
pub fn polygon_overlap_area(n_gon: u64, psi: f64) -> Result<f64> {
    polygon_overlap_area_with_offset(n_gon, psi, 0.0)
}

pub fn polygon_overlap_area_with_offset(n_gon: u64, psi: f64, offset: f64) -> Result<f64> {
    check_polygon(n_gon)?;
    let w = regular_polygon(n_gon, offset);
    let rw = regular_polygon(n_gon, offset + psi);
    Ok(polygon_area(&clip_convex(&rw, &w)) / polygon_area(&w))
}

/// Tiling-space and internal-space angles `(phi, psi)` from the
/// parameters `(a, b)` of the rotation.
///
/// `n = 8, 12`: `phi = 2 arctan(a + b s)`, `psi = 2 arctan(a - b s)` with
/// `s = sqrt 2`, `sqrt 3`. `n = 10`: `tan(phi/2) = (a + b tau) sin(2 pi/5)`
/// and `tan(psi/2) = (a + b tau') sin(4 pi/5)`, `tau' = -1/tau`.
pub fn internal_angle(n: u64, a: f64, b: f64) -> Result<(f64, f64)> {
    match n {
        8 | 12 => {
            let s = if n == 8 { 2f64.sqrt() } else { 3f64.sqrt() };
            Ok((2.0 * (a + b * s).atan(), 2.0 * (a - b * s).atan()))
        }
        10 => {
            let tau = (1.0 + 5f64.sqrt()) / 2.0;
            let phi = 2.0 * ((a + b * tau) * (2.0 * PI / 5.0).sin()).atan();
            let psi = 2.0 * ((a - b / tau) * (4.0 * PI / 5.0).sin()).atan();
            Ok((phi, psi))
        }
        _ => Err(Error::UnsupportedCase(n)),
    }
}

/// `(a, b)` with `tan(phi/2) = a + b s` (`s = 2 cos(2 pi / n)`, i.e.
/// `sqrt 2` or `sqrt 3`) for a rotation word with `n = 8` or `n = 12`.
pub fn word_to_ab(store: &OmegaStore, w: &RotationWord) -> Result<(BigRational, BigRational)> {
    let n = store.order().n();
    if n != 8 && n != 12 {
        return Err(Error::UnsupportedCase(n));
    }
    let g = word_to_gamma(store, w)?;
    let field = store.field();
    // t = (num + den) conj(den) has argument phi / 2
    let t = g.num.add(&g.den).mul(&g.den.conj());
    let re2 = t.add(&t.conj());
    if re2.is_zero() {
        return Err(Error::NotExpressible("rotation through pi".into()));
    }
    let i = CycInt::xi_pow(field, n / 4);
    let im2 = t.sub(&t.conj());
    // tan(phi/2) = im2 / (i * re2), solved exactly over Q
    let m = crate::linalg::to_rational(&i.mul(&re2).mult_matrix());
    let rhs: Vec<BigRational> = im2
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let q = solve_rational(&m, &rhs).ok_or(Error::Singular)?;
    // q = a * 1 + b * (xi + xi^-1)
    let s = CycInt::xi_pow(field, 1).add(&CycInt::xi_pow(field, n - 1));
    let s: Vec<BigRational> = s
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let k = (1..s.len())
        .find(|&k| !s[k].is_zero())
        .ok_or_else(|| Error::NotExpressible("degenerate basis".into()))?;
    let b = &q[k] / &s[k];
    let a = &q[0] - &b * &s[0];
    let ok = q
        .iter()
        .enumerate()
        .all(|(j, qj)| *qj == &b * &s[j] + if j == 0 { a.clone() } else { BigRational::zero() });
    if !ok {
        return Err(Error::NotExpressible(format!("{q:?}")));
    }
    Ok((a, b))
}

/// Internal-space angle of a rotation word for `n = 8` or `n = 12`.
pub fn word_internal_angle(store: &OmegaStore, w: &RotationWord) -> Result<(f64, f64)> {
    let (a, b) = word_to_ab(store, w)?;
    let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
    internal_angle(store.order().n(), f(&a), f(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::SymmetryOrder;
    use crate::words::enumerate_rotations;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn octagon_values() {
        assert_eq!(acceptance_octagon(0.0), 1.0);
        let a = acceptance_octagon(PI / 8.0);
        assert!((a - 0.957).abs() < 5e-4, "{a}");
        for psi in [0.1, 0.3, 0.5] {
            let x = acceptance_octagon(psi);
            let y = acceptance_octagon(PI / 4.0 - psi);
            assert!((x - y).abs() < 1e-12);
            assert!(x > 0.95 && x <= 1.0);
        }
        assert!((acceptance_ngon(8, PI / 8.0).unwrap() - a).abs() < 1e-12);
    }

    #[test]
    fn ngon_formula_shape() {
        assert_eq!(acceptance_ngon(10, 0.0).unwrap(), 1.0);
        assert_eq!(acceptance_ngon(2, 0.1), Err(Error::InvalidPolygon(2)));
        // the minimum over one sector sits at its midpoint
        let alpha = PI / 5.0;
        let mid = acceptance_ngon(10, alpha / 2.0).unwrap();
        for k in 0..100 {
            let x = alpha * k as f64 / 100.0;
            assert!(acceptance_ngon(10, x).unwrap() >= mid - 1e-15);
        }
        for psi in [0.2, 1.3, 4.0] {
            let a = acceptance_ngon(7, psi).unwrap();
            let b = acceptance_ngon(7, psi + 2.0 * PI / 7.0).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn psi_hat_reduction() {
        let h = psi_hat(8, PI / 4.0 + 0.1);
        assert!((h - 0.1).abs() < 1e-12);
        let h = psi_hat(8, -0.1);
        assert!((h - (PI / 4.0 - 0.1)).abs() < 1e-12);
    }

    #[test]
    fn clipping_matches_exact_overlap() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n_gon in [3, 5, 8, 10, 12] {
            assert!((polygon_overlap_area(n_gon, 0.0).unwrap() - 1.0).abs() < 1e-12);
            for _ in 0..200 {
                let psi = rng.gen_range(0.0..2.0 * PI);
                let clip = polygon_overlap_area(n_gon, psi).unwrap();
                let exact = exact_overlap_ngon(n_gon, psi).unwrap();
                assert!((clip - exact).abs() < 1e-9, "n={n_gon} psi={psi}");
                let shifted = polygon_overlap_area_with_offset(n_gon, psi, 0.37).unwrap();
                assert!((clip - shifted).abs() < 1e-9);
            }
        }
        let oct = polygon_overlap_area(8, PI / 8.0).unwrap();
        assert!((oct - 0.960434).abs() < 1e-6, "{oct}");
    }

    #[test]
    fn internal_angle_examples() {
        let (phi, psi) = internal_angle(8, 1.0, 0.0).unwrap();
        assert!((phi - PI / 2.0).abs() < 1e-12 && (psi - PI / 2.0).abs() < 1e-12);
        let (phi, psi) = internal_angle(8, 0.0, 1.0).unwrap();
        assert!((phi - 2.0 * 2f64.sqrt().atan()).abs() < 1e-12);
        assert!((psi + 2.0 * 2f64.sqrt().atan()).abs() < 1e-12);
        let (_, psi) = internal_angle(10, 1.0, 0.0).unwrap();
        assert!(((psi / 2.0).tan() - (4.0 * PI / 5.0).sin()).abs() < 1e-12);
        // conjugation swaps the roles of phi and psi
        for n in [8, 12] {
            let (phi, psi) = internal_angle(n, 0.3, 0.7).unwrap();
            let (phi2, psi2) = internal_angle(n, 0.3, -0.7).unwrap();
            assert!((phi - psi2).abs() < 1e-12 && (psi - phi2).abs() < 1e-12);
        }
        assert_eq!(internal_angle(5, 1.0, 0.0), Err(Error::UnsupportedCase(5)));
    }

    #[test]
    fn words_map_to_quadratic_parameters() {
        for n in [8, 12] {
            let o = SymmetryOrder::normalize(n).unwrap();
            let store = OmegaStore::build(&o, 100).unwrap();
            for w in enumerate_rotations(&o, 100).unwrap() {
                let g = word_to_gamma(&store, &w).unwrap();
                let (phi, _) = word_internal_angle(&store, &w).unwrap();
                assert!((phi - g.angle).abs() < 1e-9, "n={n} {w:?}");
            }
        }
    }
}
