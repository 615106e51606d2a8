//! Point symmetry generators, the second prolongation and the determining
//! equations of `y'' = F, z'' = G`.

use crate::expr::{self, zero_test, Bindings, EvalError, Expr, ParseError, SampleError, SamplingDomain, ZeroVerdict};
use crate::liealg::AlgebraElement;
use crate::odesys::{Mat2, OdeSystem};
use serde::Deserialize;
use thiserror::Error;

/// Default relative tolerance for symmetry checks.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymmetryError {
    #[error("the x-coefficient of a generator may depend on x only")]
    XiDependsOnState,
    #[error("generator coefficients may not depend on yp or zp")]
    DependsOnDerivative,
    #[error("zeta must be constant for this operation")]
    NonConstantZeta,
    #[error("system is not autonomous")]
    NotAutonomous,
    #[error("matrix is singular (det = {0})")]
    Singular(f64),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// `xi d/dx + eta1 d/dy + eta2 d/dz`, with `xi` stored as given.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub xi: Expr,
    pub eta1: Expr,
    pub eta2: Expr,
}

impl Generator {
    pub fn new(xi: Expr, eta1: Expr, eta2: Expr) -> Result<Generator, SymmetryError> {
        if xi.contains_any(&[expr::Y, expr::Z]) {
            return Err(SymmetryError::XiDependsOnState);
        }
        if [&xi, &eta1, &eta2].iter().any(|e| e.contains_any(&[expr::YP, expr::ZP])) {
            return Err(SymmetryError::DependsOnDerivative);
        }
        Ok(Generator { xi, eta1, eta2 })
    }

    pub fn parse(xi: &str, eta1: &str, eta2: &str) -> Result<Generator, SymmetryError> {
        Self::new(expr::parse(xi)?, expr::parse(eta1)?, expr::parse(eta2)?)
    }

    /// `sum c_i X_i` as a vector field.
    pub fn from_element(e: &AlgebraElement) -> Generator {
        let (x, y, z) = (Expr::sym(expr::X), Expr::sym(expr::Y), Expr::sym(expr::Z));
        let c = |i: usize| Expr::num(e.get(i));
        let xi = c(1) + c(2) * x;
        let eta1 = c(3) + c(5) * y.clone() + c(7) * z.clone();
        let eta2 = c(4) + c(6) * z + c(8) * y;
        Generator { xi: xi.fold_constants(), eta1: eta1.fold_constants(), eta2: eta2.fold_constants() }
    }

    /// `X_i`, 1-based.
    pub fn basis(i: usize) -> Generator {
        Self::from_element(&AlgebraElement::basis(i))
    }

    pub fn coefficients(&self) -> [&Expr; 3] {
        [&self.xi, &self.eta1, &self.eta2]
    }

    /// Apply the vector field to a function of `(x, y, z)`.
    pub fn apply(&self, f: &Expr) -> Expr {
        let terms = vec![
            self.xi.clone() * f.differentiate(expr::X),
            self.eta1.clone() * f.differentiate(expr::Y),
            self.eta2.clone() * f.differentiate(expr::Z),
        ];
        Expr::Sum(terms).fold_constants()
    }

    pub fn add(&self, o: &Generator) -> Generator {
        Generator {
            xi: (self.xi.clone() + o.xi.clone()).fold_constants(),
            eta1: (self.eta1.clone() + o.eta1.clone()).fold_constants(),
            eta2: (self.eta2.clone() + o.eta2.clone()).fold_constants(),
        }
    }

    pub fn scale(&self, s: f64) -> Generator {
        let k = Expr::num(s);
        Generator {
            xi: (k.clone() * self.xi.clone()).fold_constants(),
            eta1: (k.clone() * self.eta1.clone()).fold_constants(),
            eta2: (k * self.eta2.clone()).fold_constants(),
        }
    }

    /// Substitute parameter values.
    pub fn bind(&self, params: &Bindings) -> Generator {
        let pairs: Vec<(&str, f64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        Generator {
            xi: self.xi.bind_constants(&pairs).fold_constants(),
            eta1: self.eta1.bind_constants(&pairs).fold_constants(),
            eta2: self.eta2.bind_constants(&pairs).fold_constants(),
        }
    }

    /// The same vector field in the variables `P (y, z)`.
    pub fn linear_change(&self, p: &Mat2) -> Result<Generator, SymmetryError> {
        let pi = p.inverse().ok_or(SymmetryError::Singular(p.det()))?;
        let (y, z) = (Expr::sym(expr::Y), Expr::sym(expr::Z));
        let y_old = Expr::num(pi.a11) * y.clone() + Expr::num(pi.a12) * z.clone();
        let z_old = Expr::num(pi.a21) * y + Expr::num(pi.a22) * z;
        let map = [(expr::Y, &y_old), (expr::Z, &z_old)];
        let e1 = self.eta1.substitute(&map);
        let e2 = self.eta2.substitute(&map);
        Ok(Generator {
            xi: self.xi.clone(),
            eta1: (Expr::num(p.a11) * e1.clone() + Expr::num(p.a12) * e2.clone()).fold_constants(),
            eta2: (Expr::num(p.a21) * e1 + Expr::num(p.a22) * e2).fold_constants(),
        })
    }

    /// Read back `sum c_i X_i` if the field is in the span of `X1..X8`.
    pub fn as_element(&self, params: &Bindings) -> Option<AlgebraElement> {
        let at = |e: &Expr, x: f64, y: f64, z: f64| {
            let mut b = params.clone();
            b.set(expr::X, x);
            b.set(expr::Y, y);
            b.set(expr::Z, z);
            e.evaluate(&b).ok()
        };
        let c1 = at(&self.xi, 0.0, 0.0, 0.0)?;
        let c2 = at(&self.xi, 1.0, 0.0, 0.0)? - c1;
        let c3 = at(&self.eta1, 0.0, 0.0, 0.0)?;
        let c5 = at(&self.eta1, 0.0, 1.0, 0.0)? - c3;
        let c7 = at(&self.eta1, 0.0, 0.0, 1.0)? - c3;
        let c4 = at(&self.eta2, 0.0, 0.0, 0.0)?;
        let c8 = at(&self.eta2, 0.0, 1.0, 0.0)? - c4;
        let c6 = at(&self.eta2, 0.0, 0.0, 1.0)? - c4;
        let e = AlgebraElement::new([c1, c2, c3, c4, c5, c6, c7, c8]);
        let back = Generator::from_element(&e);
        for (x, y, z) in [(0.37, -1.3, 2.1), (-2.2, 0.7, -0.4), (1.9, 2.6, 1.1)] {
            for (a, b) in self.coefficients().into_iter().zip(back.coefficients()) {
                let (u, v) = (at(a, x, y, z)?, at(b, x, y, z)?);
                if (u - v).abs() > 1e-12 * (1.0 + u.abs()) {
                    return None;
                }
            }
        }
        Some(e)
    }
}

/// `2 (k1 + k2 x) d/dx + (A (y, z) + zeta) . grad`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearGenerator {
    pub k1: f64,
    pub k2: f64,
    pub a: Mat2,
    pub zeta: [Expr; 2],
}

impl LinearGenerator {
    pub fn constant(k1: f64, k2: f64, a: Mat2, k: [f64; 2]) -> LinearGenerator {
        LinearGenerator { k1, k2, a, zeta: [Expr::num(k[0]), Expr::num(k[1])] }
    }

    pub fn to_generator(&self) -> Generator {
        let (x, y, z) = (Expr::sym(expr::X), Expr::sym(expr::Y), Expr::sym(expr::Z));
        let xi = Expr::num(2.0) * (Expr::num(self.k1) + Expr::num(self.k2) * x);
        let eta1 = Expr::num(self.a.a11) * y.clone() + Expr::num(self.a.a12) * z.clone() + self.zeta[0].clone();
        let eta2 = Expr::num(self.a.a21) * y + Expr::num(self.a.a22) * z + self.zeta[1].clone();
        Generator { xi: xi.fold_constants(), eta1: eta1.fold_constants(), eta2: eta2.fold_constants() }
    }

    pub fn constant_zeta(&self) -> Result<[f64; 2], SymmetryError> {
        let z0 = self.zeta[0].fold_constants().as_const().ok_or(SymmetryError::NonConstantZeta)?;
        let z1 = self.zeta[1].fold_constants().as_const().ok_or(SymmetryError::NonConstantZeta)?;
        Ok([z0, z1])
    }

    /// Coordinates in `X1..X8`.
    pub fn to_coefficients(&self) -> Result<AlgebraElement, SymmetryError> {
        let [z1, z2] = self.constant_zeta()?;
        Ok(AlgebraElement::new([
            2.0 * self.k1,
            2.0 * self.k2,
            z1,
            z2,
            self.a.a11,
            self.a.a22,
            self.a.a12,
            self.a.a21,
        ]))
    }

    pub fn from_coefficients(e: &AlgebraElement) -> LinearGenerator {
        LinearGenerator::constant(e.get(1) / 2.0, e.get(2) / 2.0, e.matrix(), e.translation())
    }
}

/// `(k1, k2, P A P^-1, P zeta)`.
pub fn transform_generator(g: &LinearGenerator, p: &Mat2) -> Result<LinearGenerator, SymmetryError> {
    let a = g.a.conjugate(p).ok_or(SymmetryError::Singular(p.det()))?;
    let z = &g.zeta;
    let zeta = [
        (Expr::num(p.a11) * z[0].clone() + Expr::num(p.a12) * z[1].clone()).fold_constants(),
        (Expr::num(p.a21) * z[0].clone() + Expr::num(p.a22) * z[1].clone()).fold_constants(),
    ];
    Ok(LinearGenerator { k1: g.k1, k2: g.k2, a, zeta })
}

/// On-shell total derivative.
fn total_derivative(e: &Expr, sys: &OdeSystem) -> Expr {
    let terms = vec![
        e.differentiate(expr::X),
        Expr::sym(expr::YP) * e.differentiate(expr::Y),
        Expr::sym(expr::ZP) * e.differentiate(expr::Z),
        sys.f.clone() * e.differentiate(expr::YP),
        sys.g.clone() * e.differentiate(expr::ZP),
    ];
    Expr::Sum(terms).fold_constants()
}

/// Symbolic `(r1, r2)` with `r_i = eta_i^(2) - X(F_i)` on-shell, in
/// `x, y, z, yp, zp`.
pub fn prolong2_residual_exprs(sys: &OdeSystem, g: &Generator) -> [Expr; 2] {
    let dxi = total_derivative(&g.xi, sys);
    let rhs = sys.rhs();
    let derivs = [Expr::sym(expr::YP), Expr::sym(expr::ZP)];
    let etas = [&g.eta1, &g.eta2];
    std::array::from_fn(|i| {
        let eta1 = (total_derivative(etas[i], sys) - derivs[i].clone() * dxi.clone()).fold_constants();
        let eta2 = total_derivative(&eta1, sys) - rhs[i].clone() * dxi.clone();
        (eta2 - g.apply(rhs[i])).fold_constants()
    })
}

pub fn prolong2_residual(sys: &OdeSystem, g: &Generator, point: &Bindings) -> Result<[f64; 2], EvalError> {
    let b = with_params(sys, point);
    let [r1, r2] = prolong2_residual_exprs(sys, g);
    Ok([r1.evaluate(&b)?, r2.evaluate(&b)?])
}

fn with_params(sys: &OdeSystem, point: &Bindings) -> Bindings {
    let mut b = sys.params.clone();
    b.extend(point.iter());
    b
}

/// `grad F . w - A F` contributions shared by both determining forms.
fn transport(sys: &OdeSystem, w: [Expr; 2], a: &Mat2) -> [Expr; 2] {
    let rhs = sys.rhs();
    let along = |f: &Expr| w[0].clone() * f.differentiate(expr::Y) + w[1].clone() * f.differentiate(expr::Z);
    let af = [
        Expr::num(a.a11) * sys.f.clone() + Expr::num(a.a12) * sys.g.clone(),
        Expr::num(a.a21) * sys.f.clone() + Expr::num(a.a22) * sys.g.clone(),
    ];
    std::array::from_fn(|i| along(rhs[i]) - af[i].clone())
}

/// `2 xi F_x + 3 xi' F + (((A + xi' E) y + zeta) . grad) F - A F - xi''' y - zeta''`,
/// the determining equations of `2 xi d/dx + ((A + xi' E) y + zeta) . grad`.
pub fn determining_residual_exprs(sys: &OdeSystem, xi: &Expr, a: &Mat2, zeta: &[Expr; 2]) -> [Expr; 2] {
    let (y, z) = (Expr::sym(expr::Y), Expr::sym(expr::Z));
    let d1 = xi.differentiate(expr::X);
    let d3 = d1.differentiate(expr::X).differentiate(expr::X);
    let w = [
        (Expr::num(a.a11) + d1.clone()) * y.clone() + Expr::num(a.a12) * z.clone() + zeta[0].clone(),
        Expr::num(a.a21) * y.clone() + (Expr::num(a.a22) + d1.clone()) * z.clone() + zeta[1].clone(),
    ];
    let moved = transport(sys, w, a);
    let rhs = sys.rhs();
    let vars = [y, z];
    std::array::from_fn(|i| {
        let terms = vec![
            Expr::num(2.0) * xi.clone() * rhs[i].differentiate(expr::X),
            Expr::num(3.0) * d1.clone() * rhs[i].clone(),
            moved[i].clone(),
            -(d3.clone() * vars[i].clone()),
            -zeta[i].differentiate(expr::X).differentiate(expr::X),
        ];
        Expr::Sum(terms).fold_constants()
    })
}

pub fn determining_residual(
    sys: &OdeSystem,
    xi: &Expr,
    a: &Mat2,
    zeta: &[Expr; 2],
    point: &Bindings,
) -> Result<[f64; 2], EvalError> {
    let b = with_params(sys, point);
    let [r1, r2] = determining_residual_exprs(sys, xi, a, zeta);
    Ok([r1.evaluate(&b)?, r2.evaluate(&b)?])
}

/// `3 k2 F + (((A + k2 E) y + k) . grad) F - A F`.
///
/// `A` is the determining-equation matrix: the generator
/// `2 (k1 + k2 x) d/dx + (B y + k) . grad` corresponds to `A = B - k2 E`
/// (see [`autonomous_residual_for`]).
pub fn autonomous_residual_exprs(sys: &OdeSystem, k2: f64, a: &Mat2, k: [f64; 2]) -> Result<[Expr; 2], SymmetryError> {
    if !sys.is_autonomous() {
        return Err(SymmetryError::NotAutonomous);
    }
    let (y, z) = (Expr::sym(expr::Y), Expr::sym(expr::Z));
    let w = [
        Expr::num(a.a11 + k2) * y.clone() + Expr::num(a.a12) * z.clone() + Expr::num(k[0]),
        Expr::num(a.a21) * y + Expr::num(a.a22 + k2) * z + Expr::num(k[1]),
    ];
    let moved = transport(sys, w, a);
    let rhs = sys.rhs();
    Ok(std::array::from_fn(|i| (Expr::num(3.0 * k2) * rhs[i].clone() + moved[i].clone()).fold_constants()))
}

pub fn autonomous_residual(
    sys: &OdeSystem,
    k2: f64,
    a: &Mat2,
    k: [f64; 2],
    point: &Bindings,
) -> Result<[f64; 2], SymmetryError> {
    let b = with_params(sys, point);
    let [r1, r2] = autonomous_residual_exprs(sys, k2, a, k)?;
    Ok([r1.evaluate(&b)?, r2.evaluate(&b)?])
}

/// [`autonomous_residual`] for the generator `g`.
pub fn autonomous_residual_for(sys: &OdeSystem, g: &LinearGenerator, point: &Bindings) -> Result<[f64; 2], SymmetryError> {
    let k = g.constant_zeta()?;
    autonomous_residual(sys, g.k2, &g.a.sub(&Mat2::scalar(g.k2)), k, point)
}

/// Does `sys` admit `g`? Both prolongation residuals must pass the relative
/// zero test at every sample point of `dom`.
pub fn admits(sys: &OdeSystem, g: &Generator, dom: &SamplingDomain, tol: f64) -> Result<ZeroVerdict, SampleError> {
    let dom = dom.clone().params(&sys.params);
    zero_test(&prolong2_residual_exprs(sys, g), &dom, tol)
}

/// Lie bracket of vector fields: `[a, b]^i = a(b^i) - b(a^i)`.
pub fn commutator_vf(a: &Generator, b: &Generator) -> Generator {
    let comp = |bi: &Expr, ai: &Expr| (a.apply(bi) - b.apply(ai)).fold_constants();
    Generator { xi: comp(&b.xi, &a.xi), eta1: comp(&b.eta1, &a.eta1), eta2: comp(&b.eta2, &a.eta2) }
}

/// Generator file contents.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Field { xi: String, eta1: String, eta2: String },
    Linear { linear: LinearSpec },
}

#[derive(Debug, Clone, Deserialize)]
pub struct LinearSpec {
    #[serde(default)]
    pub k1: f64,
    #[serde(default)]
    pub k2: f64,
    #[serde(rename = "A", default = "zero_rows")]
    pub a: [[f64; 2]; 2],
    #[serde(default)]
    pub zeta: [f64; 2],
}

fn zero_rows() -> [[f64; 2]; 2] {
    [[0.0; 2]; 2]
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Generator, SymmetryError> {
        match self {
            GeneratorSpec::Field { xi, eta1, eta2 } => Generator::parse(xi, eta1, eta2),
            GeneratorSpec::Linear { linear } => {
                Ok(LinearGenerator::constant(linear.k1, linear.k2, Mat2::from_rows(linear.a), linear.zeta).to_generator())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: &str, g: &str) -> OdeSystem {
        OdeSystem::parse(f, g, Bindings::new()).unwrap()
    }

    fn pt(x: f64, y: f64, z: f64, yp: f64, zp: f64) -> Bindings {
        Bindings::new().with("x", x).with("y", y).with("z", z).with("yp", yp).with("zp", zp)
    }

    #[test]
    fn coefficients() {
        let g = LinearGenerator::constant(1.0, 0.0, Mat2::ZERO, [0.0, 0.0]);
        assert_eq!(g.to_coefficients().unwrap().c, [2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let g = LinearGenerator::constant(0.0, 0.0, Mat2::diag(1.0, 0.3), [0.0, 0.0]);
        assert_eq!(g.to_coefficients().unwrap().c, [0.0, 0.0, 0.0, 0.0, 1.0, 0.3, 0.0, 0.0]);
        let g = LinearGenerator::constant(0.0, 0.0, Mat2::new(0.0, 1.0, -1.0, 0.0), [0.0, 0.0]);
        assert_eq!(g.to_coefficients().unwrap().c, [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, -1.0]);
        let g = LinearGenerator { zeta: [Expr::sym("x"), Expr::zero()], ..g };
        assert_eq!(g.to_coefficients(), Err(SymmetryError::NonConstantZeta));
    }

    #[test]
    fn translation_in_x_on_autonomous_system() {
        let s = sys("exp(y)", "exp(z)");
        let r = prolong2_residual(&s, &Generator::basis(1), &pt(0.3, 1.0, 2.0, 0.5, -0.2)).unwrap();
        assert_eq!(r, [0.0, 0.0]);
    }

    #[test]
    fn scaling_y_on_exponential() {
        // eta^(2) = y'' = e^y on-shell while X5(e^y) = y e^y
        let s = sys("exp(y)", "exp(z)");
        let r = prolong2_residual(&s, &Generator::basis(5), &pt(0.0, 2.0, 1.0, 0.0, 0.0)).unwrap();
        let e2 = 2f64.exp();
        assert!((r[0] - (e2 - 2.0 * e2)).abs() < 1e-12);
        assert_eq!(r[1], 0.0);
    }

    #[test]
    fn x2_rejected_on_exponential() {
        let s = sys("exp(y)", "exp(z)");
        let v = admits(&s, &Generator::basis(2), &SamplingDomain::new(), DEFAULT_TOL).unwrap();
        assert!(!v.zero);
        assert!(v.witness.is_some());
        assert!(admits(&s, &Generator::basis(1), &SamplingDomain::new(), DEFAULT_TOL).unwrap().zero);
    }

    #[test]
    fn transform_generator_conjugates() {
        let g = LinearGenerator::constant(0.0, 0.0, Mat2::new(0.0, 1.0, 0.0, 0.0), [0.0, 0.0]);
        let t = transform_generator(&g, &Mat2::diag(2.0, 1.0)).unwrap();
        assert_eq!(t.a, Mat2::new(0.0, 2.0, 0.0, 0.0));
        assert_eq!(transform_generator(&g, &Mat2::IDENTITY).unwrap(), g);
        assert!(transform_generator(&g, &Mat2::ZERO).is_err());
    }

    #[test]
    fn brackets_of_fields() {
        let x = Generator::basis;
        assert_eq!(commutator_vf(&x(1), &x(2)), x(1));
        assert_eq!(commutator_vf(&x(3), &x(4)).as_element(&Bindings::new()).unwrap(), AlgebraElement::ZERO);
        let b = commutator_vf(&x(7), &x(8)).as_element(&Bindings::new()).unwrap();
        assert_eq!(b.c, [0.0, 0.0, 0.0, 0.0, -1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn kernel_of_determining_equations() {
        let s = sys("exp(y)*z", "y^2");
        let p = pt(0.2, 1.1, 0.7, 0.0, 0.0);
        let zero = [Expr::zero(), Expr::zero()];
        assert_eq!(determining_residual(&s, &Expr::zero(), &Mat2::ZERO, &zero, &p).unwrap(), [0.0, 0.0]);
        assert_eq!(determining_residual(&s, &Expr::num(0.5), &Mat2::ZERO, &zero, &p).unwrap(), [0.0, 0.0]);
        assert_eq!(autonomous_residual(&s, 0.0, &Mat2::ZERO, [0.0, 0.0], &p).unwrap(), [0.0, 0.0]);
        assert_eq!(
            autonomous_residual(&sys("x", "y"), 0.0, &Mat2::ZERO, [0.0, 0.0], &p),
            Err(SymmetryError::NotAutonomous)
        );
    }

    #[test]
    fn prolongation_matches_reduced_form() {
        let s = sys("y^3*z^(-2) + exp(z/y)", "y*z^2");
        let g = LinearGenerator::constant(0.3, 0.7, Mat2::new(0.4, -1.2, 0.5, 0.9), [0.2, -0.6]);
        for p in [pt(0.1, 1.3, 0.8, 0.4, -0.7), pt(-0.6, 2.1, 1.7, -0.2, 0.9)] {
            let r = prolong2_residual(&s, &g.to_generator(), &p).unwrap();
            let a = autonomous_residual_for(&s, &g, &p).unwrap();
            for i in 0..2 {
                assert!((r[i] + a[i]).abs() < 1e-10 * (1.0 + a[i].abs()), "{r:?} {a:?}");
            }
        }
    }
}
