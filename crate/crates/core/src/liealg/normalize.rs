//! Normalizers for the optimal systems of L4, L6 and L8.
//!
//! Each normalizer works on a copy of the input, recording every
//! automorphism or involution it applies. Parameters of later steps are
//! computed from the vector as actually transformed so far, which keeps the
//! recorded word consistent with replay. Scaling is linear and commutes with
//! every step, so the accumulated scale is reported once, after the word.

use super::{Algebra, AlgebraElement, Family, LieError, OptimalRep, RepParams, Step};
use crate::jordan::{classify2x2, default_tol, JordanKind};

/// Parameters this close to zero are treated as zero.
const ZERO_PARAM: f64 = 1e-12;

struct Work {
    v: AlgebraElement,
    word: Vec<Step>,
    scale: f64,
}

impl Work {
    fn new(e: &AlgebraElement) -> Self {
        Work { v: *e, word: Vec::new(), scale: 1.0 }
    }

    fn c(&self, i: usize) -> f64 {
        self.v.get(i)
    }

    fn auto(&mut self, index: usize, param: f64) {
        if param == 0.0 {
            return;
        }
        self.push(Step::Automorphism { index, param });
    }

    fn inv(&mut self, index: usize) {
        self.push(Step::Involution { index });
    }

    fn push(&mut self, step: Step) {
        self.v = step.apply(&self.v);
        self.word.push(step);
    }

    fn rescale(&mut self, s: f64) {
        self.v = self.v.scale(s);
        self.scale *= s;
    }

    fn finish(self, algebra: Algebra, family: Family, params: RepParams, representative: AlgebraElement) -> OptimalRep {
        OptimalRep { algebra, family, params, word: self.word, scale: self.scale, representative }
    }
}

fn require_zero(e: &AlgebraElement, algebra: Algebra, indices: &[usize]) -> Result<(), LieError> {
    for &index in indices {
        let value = e.get(index);
        if value != 0.0 {
            return Err(LieError::NotInSubalgebra { algebra, index, value });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
enum L4 {
    Diagonal { alpha: f64 },
    Rotation { alpha: f64 },
    Shear { beta: f64 },
    Zero,
}

/// Bring the `(c5..c8)` block of `w.v` to its L4 representative.
fn l4_in_place(w: &mut Work) -> L4 {
    let m = w.v.matrix();
    if m.max_abs() == 0.0 {
        return L4::Zero;
    }
    match classify2x2(&m, default_tol(&m)).kind {
        JordanKind::J1 => {
            if w.c(7) != 0.0 || w.c(8) != 0.0 {
                // A8 root of  c8 + a (c5 - c6) - a^2 c7 = 0  of smaller size
                let d = w.c(5) - w.c(6);
                let disc = (d * d + 4.0 * w.c(7) * w.c(8)).max(0.0);
                let den = d + disc.sqrt().copysign(if d == 0.0 { 1.0 } else { d });
                if den != 0.0 {
                    w.auto(8, -2.0 * w.c(8) / den);
                }
                let d = w.c(5) - w.c(6);
                if d != 0.0 {
                    w.auto(7, w.c(7) / d);
                }
            }
            if w.c(6).abs() > w.c(5).abs() {
                w.inv(4);
            }
            w.rescale(1.0 / w.c(5));
            let alpha = w.c(6);
            L4::Diagonal { alpha: if alpha.abs() <= ZERO_PARAM { 0.0 } else { alpha } }
        }
        JordanKind::J2 => {
            let d = w.c(5) - w.c(6);
            if d != 0.0 {
                w.auto(8, d / (2.0 * w.c(7)));
            }
            w.auto(5, 0.5 * (w.c(8) / w.c(7)).abs().ln());
            let omega = (w.c(7) * w.c(8)).abs().sqrt();
            let sigma = 0.5 * (w.c(5) + w.c(6));
            let s = if sigma < 0.0 { -1.0 / omega } else { 1.0 / omega };
            if w.c(8) * s < 0.0 {
                w.inv(1);
            }
            w.rescale(s);
            let alpha = 0.5 * (w.c(5) + w.c(6));
            L4::Rotation { alpha: if alpha.abs() <= ZERO_PARAM { 0.0 } else { alpha } }
        }
        JordanKind::J3 => {
            if w.c(7).abs() < w.c(8).abs() {
                w.inv(4);
            }
            let d = w.c(5) - w.c(6);
            if d != 0.0 {
                w.auto(8, d / (2.0 * w.c(7)));
            }
            let sigma = 0.5 * (w.c(5) + w.c(6));
            if sigma.abs() <= ZERO_PARAM * w.c(7).abs() {
                w.rescale(1.0 / w.c(7));
                return L4::Shear { beta: 0.0 };
            }
            if w.c(7) * sigma < 0.0 {
                w.inv(2);
            }
            w.auto(5, (sigma / w.c(7)).ln());
            w.rescale(1.0 / sigma);
            L4::Shear { beta: 1.0 }
        }
    }
}

fn l4_family(r: L4) -> (Family, RepParams) {
    match r {
        L4::Diagonal { alpha } => (Family::Item(1), RepParams { alpha: Some(alpha), ..Default::default() }),
        L4::Rotation { alpha } => (Family::Item(2), RepParams { alpha: Some(alpha), ..Default::default() }),
        L4::Shear { beta } => (Family::Item(3), RepParams { beta: Some(beta), ..Default::default() }),
        L4::Zero => (Family::Item(4), RepParams::default()),
    }
}

/// Normalize an element of `{X5, X6, X7, X8}` via the real Jordan form of
/// `[[c5, c7], [c8, c6]]`.
pub fn normalize_l4(e: &AlgebraElement) -> Result<OptimalRep, LieError> {
    require_zero(e, Algebra::L4, &[1, 2, 3, 4])?;
    let mut w = Work::new(e);
    let (family, params) = l4_family(l4_in_place(&mut w));
    let rep = AlgebraElement::l4_representative(family, &params);
    Ok(w.finish(Algebra::L4, family, params, rep))
}

/// Remove `(c3, c4)` with `A3`, `A4` when the matrix part is invertible.
fn kill_translation(w: &mut Work) {
    let m = w.v.matrix();
    let Some(mi) = m.inverse() else { return };
    let t = mi.apply(w.v.translation());
    w.auto(3, t[0]);
    // remaining translation lies along the second column (c7, c6)
    let (c7, c6) = (w.c(7), w.c(6));
    let n2 = c7 * c7 + c6 * c6;
    if n2 > 0.0 {
        w.auto(4, (w.c(3) * c7 + w.c(4) * c6) / n2);
    }
}

fn l6_in_place(w: &mut Work) -> (Family, RepParams) {
    let l4 = l4_in_place(w);
    let only = |alpha: Option<f64>, beta: Option<f64>| RepParams { alpha, beta, gamma: None };
    match l4 {
        L4::Diagonal { alpha } if alpha != 0.0 => {
            kill_translation(w);
            (Family::Item(1), only(Some(alpha), None))
        }
        L4::Diagonal { .. } => {
            // X5: c3 goes with A3, c4 survives
            w.auto(3, w.c(3) / w.c(5));
            if w.c(4) == 0.0 {
                return (Family::Item(1), only(Some(0.0), None));
            }
            if w.c(4) < 0.0 {
                w.inv(1);
            }
            w.auto(6, -w.c(4).ln());
            (Family::Item(2), RepParams::default())
        }
        L4::Rotation { alpha } => {
            kill_translation(w);
            if alpha == 0.0 {
                (Family::Item(3), RepParams::default())
            } else {
                (Family::Item(4), only(Some(alpha), Some(0.0)))
            }
        }
        L4::Shear { beta: 1.0 } => {
            kill_translation(w);
            (Family::Item(6), RepParams::default())
        }
        L4::Shear { .. } => {
            // X7: c3 goes with A4, c4 survives
            w.auto(4, w.c(3) / w.c(7));
            if w.c(4) == 0.0 {
                return (Family::Item(5), only(None, Some(0.0)));
            }
            if w.c(4) < 0.0 {
                w.inv(1);
                w.inv(2);
            }
            let a = -w.c(4).ln();
            w.auto(6, a);
            w.auto(5, a);
            (Family::Item(5), only(None, Some(1.0)))
        }
        L4::Zero => {
            let [c3, c4] = w.v.translation();
            if c3 == 0.0 && c4 == 0.0 {
                return (Family::Item(8), RepParams::default());
            }
            if c3.abs() < c4.abs() {
                w.inv(4);
            }
            w.auto(8, -w.c(4) / w.c(3));
            w.rescale(1.0 / w.c(3));
            (Family::Item(7), RepParams::default())
        }
    }
}

/// Normalize an element of `{X3, ..., X8}`.
pub fn normalize_l6(e: &AlgebraElement) -> Result<OptimalRep, LieError> {
    require_zero(e, Algebra::L6, &[1, 2])?;
    let mut w = Work::new(e);
    let (family, params) = l6_in_place(&mut w);
    let rep = AlgebraElement::l6_representative(family, &params);
    Ok(w.finish(Algebra::L6, family, params, rep))
}

/// Normalize an arbitrary element of L8.
///
/// With `c2 = 0` the `X1` component cannot be removed by automorphisms; it
/// is dropped modulo the kernel unless it is all there is.
pub fn normalize_l8(e: &AlgebraElement) -> Result<OptimalRep, LieError> {
    let mut w = Work::new(e);
    let c2 = w.c(2);
    if c2 != 0.0 {
        w.auto(1, w.c(1) / c2);
    } else if w.c(1) != 0.0 {
        let rest_zero = w.v.c[2..].iter().all(|v| *v == 0.0);
        if rest_zero {
            if w.c(1) < 0.0 {
                w.inv(3);
            }
            w.auto(2, -w.c(1).ln());
            let rep = AlgebraElement::l8_representative(Family::Kernel, &RepParams::default());
            return Ok(w.finish(Algebra::L8, Family::Kernel, RepParams::default(), rep));
        }
        w.push(Step::ModKernel);
    }
    let (family, mut params) = l6_in_place(&mut w);
    let family = match family {
        Family::Item(8) if c2 != 0.0 => {
            w.rescale(1.0 / w.c(2));
            Family::Item(8)
        }
        Family::Item(8) => Family::Zero,
        other => {
            params.gamma = Some(w.c(2));
            other
        }
    };
    let rep = AlgebraElement::l8_representative(family, &params);
    Ok(w.finish(Algebra::L8, family, params, rep))
}
