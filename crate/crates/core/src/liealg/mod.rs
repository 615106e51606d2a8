//! The eight-dimensional algebra spanned by
//! `X1 = d/dx, X2 = x d/dx, X3 = d/dy, X4 = d/dz, X5 = y d/dy, X6 = z d/dz,
//! X7 = z d/dy, X8 = y d/dz`, its automorphisms and optimal systems.

mod normalize;

pub use normalize::{normalize_l4, normalize_l6, normalize_l8};

use crate::odesys::Mat2;
use serde::{Serialize, Serializer};
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

pub const DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("index {0} out of range 1..={1}")]
    Index(usize, usize),
    #[error("{algebra:?} elements must have c{index} = 0, got {value}")]
    NotInSubalgebra { algebra: Algebra, index: usize, value: f64 },
    #[error("expected 8 coefficients, got {0}")]
    Arity(usize),
}

/// Coefficients `c1..c8`; `c[0]` is `c1`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct AlgebraElement {
    pub c: [f64; DIM],
}

impl AlgebraElement {
    pub const ZERO: AlgebraElement = AlgebraElement { c: [0.0; DIM] };

    pub fn new(c: [f64; DIM]) -> Self {
        AlgebraElement { c }
    }

    pub fn from_slice(c: &[f64]) -> Result<Self, LieError> {
        let c: [f64; DIM] = c.try_into().map_err(|_| LieError::Arity(c.len()))?;
        Ok(AlgebraElement { c })
    }

    /// `X_i`, 1-based.
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; DIM];
        c[i - 1] = 1.0;
        AlgebraElement { c }
    }

    /// `c_i`, 1-based.
    pub fn get(&self, i: usize) -> f64 {
        self.c[i - 1]
    }

    pub fn set(&mut self, i: usize, v: f64) {
        self.c[i - 1] = v;
    }

    /// `[[c5, c7], [c8, c6]]`: the action on `(y, z)`.
    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.c[4], self.c[6], self.c[7], self.c[5])
    }

    /// `(c3, c4)`.
    pub fn translation(&self) -> [f64; 2] {
        [self.c[2], self.c[3]]
    }

    pub fn add(&self, o: &AlgebraElement) -> AlgebraElement {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(o.c) {
            *a += b;
        }
        AlgebraElement { c }
    }

    pub fn scale(&self, s: f64) -> AlgebraElement {
        AlgebraElement { c: self.c.map(|v| v * s) }
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_diff(&self, o: &AlgebraElement) -> f64 {
        self.c.iter().zip(o.c).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| *v == 0.0)
    }

    /// Canonical element of an L4 family (Item 1..4).
    pub fn l4_representative(family: Family, p: &RepParams) -> Self {
        let mut c = [0.0; DIM];
        match family {
            Family::Item(1) => {
                c[4] = 1.0;
                c[5] = p.alpha.unwrap_or(0.0);
            }
            Family::Item(2) => {
                let a = p.alpha.unwrap_or(0.0);
                c[4] = a;
                c[5] = a;
                c[6] = -1.0;
                c[7] = 1.0;
            }
            Family::Item(3) => {
                let b = p.beta.unwrap_or(0.0);
                c[4] = b;
                c[5] = b;
                c[6] = 1.0;
            }
            _ => {}
        }
        AlgebraElement { c }
    }

    /// Canonical element of an L6 family (Item 1..8).
    pub fn l6_representative(family: Family, p: &RepParams) -> Self {
        let alpha = p.alpha.unwrap_or(0.0);
        let beta = p.beta.unwrap_or(0.0);
        let mut c = [0.0; DIM];
        match family {
            Family::Item(1) => {
                c[4] = 1.0;
                c[5] = alpha;
            }
            Family::Item(2) => {
                c[3] = 1.0;
                c[4] = 1.0;
            }
            Family::Item(3) => {
                c[6] = -1.0;
                c[7] = 1.0;
            }
            Family::Item(4) => {
                c[2] = beta;
                c[4] = alpha;
                c[5] = alpha;
                c[6] = -1.0;
                c[7] = 1.0;
            }
            Family::Item(5) => {
                c[3] = beta;
                c[6] = 1.0;
            }
            Family::Item(6) => {
                c[4] = 1.0;
                c[5] = 1.0;
                c[6] = 1.0;
            }
            Family::Item(7) => c[2] = 1.0,
            _ => {}
        }
        AlgebraElement { c }
    }

    /// Canonical element of an L8 family: `gamma X2 +` the L6 item for
    /// items 1..7, `X2` for item 8, `X1` for the kernel.
    pub fn l8_representative(family: Family, p: &RepParams) -> Self {
        match family {
            Family::Item(8) => AlgebraElement::basis(2),
            Family::Item(k) => {
                let mut e = Self::l6_representative(Family::Item(k), p);
                e.c[1] = p.gamma.unwrap_or(0.0);
                e
            }
            Family::Kernel => AlgebraElement::basis(1),
            Family::Zero => AlgebraElement::ZERO,
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, v) in self.c.iter().enumerate() {
            if *v == 0.0 {
                continue;
            }
            let mag = v.abs();
            if first {
                if *v < 0.0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if *v < 0.0 { " - " } else { " + " })?;
            }
            if mag != 1.0 {
                write!(f, "{mag}*")?;
            }
            write!(f, "X{}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `C[i][j][k]` with `[X_i, X_j] = sum_k C[i][j][k] X_k`, 0-based.
pub type StructureConstants = [[[i8; DIM]; DIM]; DIM];

/// `(i, j, [(k, coeff)])`: `[X_i, X_j] = sum coeff X_k`, 1-based.
pub type Bracket = (usize, usize, &'static [(usize, i8)]);

/// The ten nonzero brackets, 1-based.
pub const PRINTED_BRACKETS: [Bracket; 10] = [
    (1, 2, &[(1, 1)]),
    (3, 5, &[(3, 1)]),
    (3, 8, &[(4, 1)]),
    (4, 6, &[(4, 1)]),
    (4, 7, &[(3, 1)]),
    (5, 7, &[(7, -1)]),
    (5, 8, &[(8, 1)]),
    (6, 7, &[(7, 1)]),
    (6, 8, &[(8, -1)]),
    (7, 8, &[(6, 1), (5, -1)]),
];

pub fn structure_constants() -> &'static StructureConstants {
    static TABLE: OnceLock<StructureConstants> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut c = [[[0i8; DIM]; DIM]; DIM];
        for (i, j, terms) in PRINTED_BRACKETS {
            for &(k, v) in terms {
                c[i - 1][j - 1][k - 1] = v;
                c[j - 1][i - 1][k - 1] = -v;
            }
        }
        c
    })
}

pub fn bracket(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let table = structure_constants();
    let mut out = [0.0; DIM];
    for (&ai, plane) in a.c.iter().zip(table) {
        if ai == 0.0 {
            continue;
        }
        for (&bj, row) in b.c.iter().zip(plane) {
            if bj == 0.0 {
                continue;
            }
            for (slot, &s) in out.iter_mut().zip(row) {
                if s != 0 {
                    *slot += f64::from(s) * ai * bj;
                }
            }
        }
    }
    AlgebraElement { c: out }
}

fn check_index(i: usize, max: usize) -> Result<(), LieError> {
    if (1..=max).contains(&i) {
        Ok(())
    } else {
        Err(LieError::Index(i, max))
    }
}

/// Inner automorphism `A_i` with parameter `a`, as printed.
pub fn automorphism(i: usize, a: f64, e: &AlgebraElement) -> Result<AlgebraElement, LieError> {
    check_index(i, 8)?;
    let c = e.c;
    let mut h = c;
    let (c1, c2, c3, c4, c5, c6, c7, c8) = (c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7]);
    match i {
        1 => h[0] = c1 - a * c2,
        2 => h[0] = a.exp() * c1,
        3 => {
            h[2] = c3 - a * c5;
            h[3] = c4 - a * c8;
        }
        4 => {
            h[2] = c3 - a * c7;
            h[3] = c4 - a * c6;
        }
        5 => {
            h[2] = a.exp() * c3;
            h[6] = a.exp() * c7;
            h[7] = (-a).exp() * c8;
        }
        6 => {
            h[3] = a.exp() * c4;
            h[6] = (-a).exp() * c7;
            h[7] = a.exp() * c8;
        }
        7 => {
            h[2] = c3 + a * c4;
            h[4] = c5 + a * c8;
            h[5] = c6 - a * c8;
            h[6] = c7 - a * a * c8 + a * c6 - a * c5;
        }
        _ => {
            h[3] = c4 + a * c3;
            h[4] = c5 - a * c7;
            h[5] = c6 + a * c7;
            h[7] = c8 - a * a * c7 - a * c6 + a * c5;
        }
    }
    Ok(AlgebraElement { c: h })
}

/// Involution `E_k`.
///
/// `E4` exchanges `y` and `z`, so it swaps `(c3, c4)`, `(c5, c6)` and
/// `(c7, c8)`.
pub fn involution(k: usize, e: &AlgebraElement) -> Result<AlgebraElement, LieError> {
    check_index(k, 4)?;
    let mut h = e.c;
    match k {
        1 => {
            for idx in [3, 6, 7] {
                h[idx] = -h[idx];
            }
        }
        2 => {
            for idx in [2, 6, 7] {
                h[idx] = -h[idx];
            }
        }
        3 => h[0] = -h[0],
        _ => {
            h.swap(2, 3);
            h.swap(4, 5);
            h.swap(6, 7);
        }
    }
    Ok(AlgebraElement { c: h })
}

type Mat8 = [[f64; DIM]; DIM];

/// `(ad_{X_i})` acting on coefficient columns: entry `[k][j] = C[i][j][k]`.
pub fn ad_matrix(i: usize) -> Mat8 {
    let table = structure_constants();
    let mut m = [[0.0; DIM]; DIM];
    for (j, row) in table[i - 1].iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            m[k][j] = f64::from(*v);
        }
    }
    m
}

fn mat8_mul(a: &Mat8, b: &Mat8) -> Mat8 {
    let mut out = [[0.0; DIM]; DIM];
    for i in 0..DIM {
        for k in 0..DIM {
            if a[i][k] == 0.0 {
                continue;
            }
            for j in 0..DIM {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn mat8_exp(m: &Mat8) -> Mat8 {
    let norm = m.iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let mut squarings = 0;
    let mut s = 1.0;
    while norm * s > 0.5 {
        s *= 0.5;
        squarings += 1;
    }
    let scaled = m.map(|r| r.map(|v| v * s));
    let mut out = [[0.0; DIM]; DIM];
    let mut term = [[0.0; DIM]; DIM];
    for i in 0..DIM {
        out[i][i] = 1.0;
        term[i][i] = 1.0;
    }
    for n in 1..30 {
        term = mat8_mul(&term, &scaled).map(|r| r.map(|v| v / n as f64));
        let mut small = true;
        for i in 0..DIM {
            for j in 0..DIM {
                out[i][j] += term[i][j];
                if term[i][j].abs() > 1e-18 {
                    small = false;
                }
            }
        }
        if small {
            break;
        }
    }
    for _ in 0..squarings {
        out = mat8_mul(&out, &out);
    }
    out
}

/// `exp(t ad_{X_i}) e`.
pub fn adjoint_exp(i: usize, t: f64, e: &AlgebraElement) -> Result<AlgebraElement, LieError> {
    check_index(i, 8)?;
    let m = ad_matrix(i).map(|r| r.map(|v| v * t));
    let x = mat8_exp(&m);
    let mut out = [0.0; DIM];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = (0..DIM).map(|j| x[k][j] * e.c[j]).sum();
    }
    Ok(AlgebraElement { c: out })
}

/// `A_i(a) = exp(s_i a ad_{X_i})`; fixed by comparing both sides.
pub const ADJOINT_SIGNS: [f64; DIM] = [-1.0; DIM];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Algebra {
    L4,
    L6,
    L8,
}

/// Position in an optimal-system list.
///
/// `Kernel` (`X1`) and `Zero` only occur for L8, where they fall outside the
/// numbered list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Item(u8),
    Kernel,
    Zero,
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Family::Item(n) => s.serialize_u8(*n),
            Family::Kernel => s.serialize_str("kernel"),
            Family::Zero => s.serialize_str("zero"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Item(n) => write!(f, "{n}"),
            Family::Kernel => f.write_str("kernel"),
            Family::Zero => f.write_str("zero"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct RepParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

/// One step of a normalizing word.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "op")]
pub enum Step {
    /// `A_i(a)`.
    Automorphism { index: usize, param: f64 },
    /// `E_k`.
    Involution { index: usize },
    /// Drop the `X1` component (the kernel is admitted by every system).
    ModKernel,
}

impl Step {
    pub fn apply(&self, e: &AlgebraElement) -> AlgebraElement {
        match *self {
            Step::Automorphism { index, param } => automorphism(index, param, e).expect("valid index"),
            Step::Involution { index } => involution(index, e).expect("valid index"),
            Step::ModKernel => {
                let mut out = *e;
                out.c[0] = 0.0;
                out
            }
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Automorphism { index, param } => write!(f, "A{index}({param})"),
            Step::Involution { index } => write!(f, "E{index}"),
            Step::ModKernel => f.write_str("mod X1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalRep {
    pub algebra: Algebra,
    pub family: Family,
    pub params: RepParams,
    pub word: Vec<Step>,
    /// Applied after the word.
    pub scale: f64,
    pub representative: AlgebraElement,
}

impl OptimalRep {
    /// A representative without a normalizing word.
    pub fn bare(algebra: Algebra, family: Family, params: RepParams, representative: AlgebraElement) -> Self {
        OptimalRep { algebra, family, params, word: Vec::new(), scale: 1.0, representative }
    }

    /// Apply the word, then the scale.
    pub fn replay(&self, e: &AlgebraElement) -> AlgebraElement {
        self.word.iter().fold(*e, |acc, s| s.apply(&acc)).scale(self.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> AlgebraElement {
        AlgebraElement::basis(i)
    }

    #[test]
    fn printed_brackets() {
        assert_eq!(bracket(&x(1), &x(2)), x(1));
        assert_eq!(bracket(&x(5), &x(7)), x(7).scale(-1.0));
        assert_eq!(bracket(&x(7), &x(8)), x(6).add(&x(5).scale(-1.0)));
        assert!(bracket(&x(1), &x(3)).is_zero());
    }

    #[test]
    fn involutions() {
        let e = AlgebraElement::new([0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 2.0, 3.0]);
        assert_eq!(involution(1, &e).unwrap().c, [0.0, 0.0, 0.0, -1.0, 0.0, 0.0, -2.0, -3.0]);
        let e = x(5).add(&x(6).scale(2.0));
        assert_eq!(involution(4, &e).unwrap(), x(6).add(&x(5).scale(2.0)));
        let e = AlgebraElement::new([1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert_eq!(involution(3, &involution(3, &e).unwrap()).unwrap(), e);
    }

    #[test]
    fn automorphism_identity_at_zero() {
        let e = AlgebraElement::new([1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        for i in 1..=8 {
            assert_eq!(automorphism(i, 0.0, &e).unwrap(), e);
        }
        assert!(automorphism(9, 0.0, &e).is_err());
    }

    #[test]
    fn adjoint_scaling_of_x1() {
        let t = 0.7;
        let out = adjoint_exp(2, t, &x(1)).unwrap();
        assert!((out.c[0] - (-t).exp()).abs() < 1e-14);
        let out = adjoint_exp(3, t, &x(8)).unwrap();
        assert!((out.get(4) - t).abs() < 1e-14);
    }

    #[test]
    fn display() {
        let e = AlgebraElement::new([0.0, 0.5, 0.0, 0.0, 1.0, 0.0, -1.0, 1.0]);
        assert_eq!(e.to_string(), "0.5*X2 + X5 - X7 + X8");
        assert_eq!(AlgebraElement::ZERO.to_string(), "0");
    }
}
