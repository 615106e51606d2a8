//! Real Jordan forms of 2x2 matrices with explicit conjugators.

use crate::liealg::{AlgebraElement, Family, OptimalRep, RepParams};
use crate::odesys::Mat2;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum JordanKind {
    /// `diag(a11, a22)`: real eigenvalues, diagonalizable.
    J1,
    /// `[[a11, w], [-w, a11]]` with `w > 0`: complex pair.
    J2,
    /// `[[a11, 1], [0, a11]]`: defective.
    J3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum JordanParams {
    J1 { a11: f64, a22: f64 },
    /// `sigma +- i omega`; `a11 = sigma / omega` is the diagonal after the
    /// rotation part is scaled to 1.
    J2 { sigma: f64, omega: f64, a11: f64 },
    J3 { a11: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Jordan2Result {
    pub kind: JordanKind,
    pub params: JordanParams,
    /// The Jordan form `J = P A P^-1`.
    pub j: Mat2,
    pub p: Mat2,
    /// `max |P A P^-1 - J|`.
    pub residual: f64,
}

impl Jordan2Result {
    /// For J2, the form with the rotation part scaled to 1 (`J / omega`);
    /// otherwise `J` itself.
    pub fn normalized(&self) -> Mat2 {
        match self.params {
            JordanParams::J2 { omega, .. } => self.j.scale(1.0 / omega),
            _ => self.j,
        }
    }
}

/// Default defect band: `1e-9 * |A|^2` (Frobenius), so the test is scale
/// invariant like the discriminant it bounds.
pub fn default_tol(a: &Mat2) -> f64 {
    1e-9 * a.norm().powi(2)
}

fn unit_with_positive_lead(v: [f64; 2]) -> [f64; 2] {
    let n = v[0].hypot(v[1]);
    let lead = if v[0].abs() >= v[1].abs() { v[0] } else { v[1] };
    let s = if lead < 0.0 { -1.0 / n } else { 1.0 / n };
    [v[0] * s, v[1] * s]
}

fn eigenvector(a: &Mat2, lambda: f64) -> [f64; 2] {
    let r1 = [a.a11 - lambda, a.a12];
    let r2 = [a.a21, a.a22 - lambda];
    let r = if r1[0].hypot(r1[1]) >= r2[0].hypot(r2[1]) { r1 } else { r2 };
    unit_with_positive_lead([-r[1], r[0]])
}

fn columns(v1: [f64; 2], v2: [f64; 2]) -> Mat2 {
    Mat2::new(v1[0], v2[0], v1[1], v2[1])
}

fn finish(a: &Mat2, kind: JordanKind, params: JordanParams, j: Mat2, p_inv: Mat2) -> Jordan2Result {
    let p = p_inv.inverse().unwrap_or(Mat2::IDENTITY);
    let residual = (p * *a * p_inv).sub(&j).max_abs();
    Jordan2Result { kind, params, j, p, residual }
}

/// Classify `A` by the sign of its discriminant, with `|disc| <= tol_defect`
/// counted as a repeated eigenvalue.
pub fn classify2x2(a: &Mat2, tol_defect: f64) -> Jordan2Result {
    let tr = a.trace();
    let det = a.det();
    let disc = tr * tr - 4.0 * det;
    let half = tr / 2.0;
    let n = a.sub(&Mat2::scalar(half));

    if disc > tol_defect {
        let sq = disc.sqrt();
        let big = if tr >= 0.0 { (tr + sq) / 2.0 } else { (tr - sq) / 2.0 };
        let small = det / big;
        let (v_big, v_small) = (eigenvector(a, big), eigenvector(a, small));
        let (l1, v1, l2, v2) = if v_big[0].abs() >= v_small[0].abs() {
            (big, v_big, small, v_small)
        } else {
            (small, v_small, big, v_big)
        };
        return finish(a, JordanKind::J1, JordanParams::J1 { a11: l1, a22: l2 }, Mat2::diag(l1, l2), columns(v1, v2));
    }

    if disc < -tol_defect {
        let omega = (-disc).sqrt() / 2.0;
        let ne1 = [n.a11, n.a21];
        let ne2 = [n.a12, n.a22];
        // v2 = w, v1 = N w / omega with the better-conditioned unit w
        let (w, nw) = if ne2[0].hypot(ne2[1]) >= ne1[0].hypot(ne1[1]) { ([0.0, 1.0], ne2) } else { ([1.0, 0.0], ne1) };
        let v1 = [nw[0] / omega, nw[1] / omega];
        let j = Mat2::new(half, omega, -omega, half);
        let params = JordanParams::J2 { sigma: half, omega, a11: half / omega };
        return finish(a, JordanKind::J2, params, j, columns(v1, w));
    }

    let scalar_band = 1e-12 * a.norm();
    if n.max_abs() <= scalar_band {
        return finish(a, JordanKind::J1, JordanParams::J1 { a11: half, a22: half }, Mat2::scalar(half), Mat2::IDENTITY);
    }
    let ne1 = [n.a11, n.a21];
    let ne2 = [n.a12, n.a22];
    let (w, nw) = if ne1[0].hypot(ne1[1]) > ne2[0].hypot(ne2[1]) { ([1.0, 0.0], ne1) } else { ([0.0, 1.0], ne2) };
    let j = Mat2::new(half, 1.0, 0.0, half);
    finish(a, JordanKind::J3, JordanParams::J3 { a11: half }, j, columns(nw, w))
}

/// The L4 optimal-system representative matching a Jordan form.
///
/// Only the family and its parameters are filled in; the word is empty.
pub fn kind_to_l4_rep(r: &Jordan2Result) -> OptimalRep {
    let (family, params) = match r.params {
        JordanParams::J1 { a11, a22 } => {
            let (big, small) = if a11.abs() >= a22.abs() { (a11, a22) } else { (a22, a11) };
            if big == 0.0 {
                (Family::Item(4), RepParams::default())
            } else {
                (Family::Item(1), RepParams { alpha: Some(small / big), ..Default::default() })
            }
        }
        JordanParams::J2 { a11, .. } => (Family::Item(2), RepParams { alpha: Some(a11.abs()), ..Default::default() }),
        JordanParams::J3 { a11 } => {
            let beta = if a11 == 0.0 { 0.0 } else { 1.0 };
            (Family::Item(3), RepParams { beta: Some(beta), ..Default::default() })
        }
    };
    let representative = AlgebraElement::l4_representative(family, &params);
    OptimalRep::bare(crate::liealg::Algebra::L4, family, params, representative)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: Mat2) -> Jordan2Result {
        let r = classify2x2(&a, default_tol(&a));
        assert!(r.residual < 1e-10, "{a:?} -> {r:?}");
        r
    }

    #[test]
    fn diagonal_is_already_j1() {
        let r = check(Mat2::diag(2.0, 3.0));
        assert_eq!(r.kind, JordanKind::J1);
        assert_eq!(r.params, JordanParams::J1 { a11: 2.0, a22: 3.0 });
        assert_eq!(r.p, Mat2::IDENTITY);
    }

    #[test]
    fn rotation_block_is_already_j2() {
        let r = check(Mat2::new(1.0, 1.0, -1.0, 1.0));
        assert_eq!(r.kind, JordanKind::J2);
        assert_eq!(r.p, Mat2::IDENTITY);
        assert_eq!(r.normalized(), Mat2::new(1.0, 1.0, -1.0, 1.0));
    }

    #[test]
    fn distinct_eigenvalues() {
        let r = check(Mat2::new(5.0, 4.0, 1.0, 2.0));
        match r.params {
            JordanParams::J1 { a11, a22 } => {
                assert!((a11 - 6.0).abs() < 1e-12 && (a22 - 1.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn defective_and_scalar() {
        let r = check(Mat2::new(3.0, 1.0, 0.0, 3.0));
        assert_eq!(r.kind, JordanKind::J3);
        assert_eq!(r.j, Mat2::new(3.0, 1.0, 0.0, 3.0));
        let r = check(Mat2::new(1.0, -1.0, 1.0, -1.0));
        assert_eq!(r.kind, JordanKind::J3);
        let r = check(Mat2::scalar(2.0));
        assert_eq!(r.params, JordanParams::J1 { a11: 2.0, a22: 2.0 });
        let r = check(Mat2::ZERO);
        assert_eq!(r.kind, JordanKind::J1);
    }

    #[test]
    fn representatives() {
        let rep = |a: Mat2| kind_to_l4_rep(&check(a));
        let r = rep(Mat2::scalar(1.0));
        assert_eq!((r.family, r.params.alpha), (Family::Item(1), Some(1.0)));
        let r = rep(Mat2::new(0.0, 1.0, -1.0, 0.0));
        assert_eq!((r.family, r.params.alpha), (Family::Item(2), Some(0.0)));
        let r = rep(Mat2::new(0.0, 1.0, 0.0, 0.0));
        assert_eq!((r.family, r.params.beta), (Family::Item(3), Some(0.0)));
        assert_eq!(rep(Mat2::ZERO).family, Family::Item(4));
    }
}
