//! Second-order systems `y'' = F(x, y, z)`, `z'' = G(x, y, z)` and their
//! equivalence transformations.

mod invert;
mod mat2;

pub use invert::invert;
pub use mat2::{Mat2, SINGULAR_DET};

use crate::expr::{self, zero_test, Bindings, Expr, ParseError, Point, SampleError, SamplingDomain};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OdeError {
    #[error("right-hand side {0} depends on a first derivative")]
    DependsOnDerivative(&'static str),
    #[error("matrix is singular (det = {0})")]
    Singular(f64),
    #[error("{0} must be a function of x only")]
    NotFunctionOfX(&'static str),
    #[error("cannot invert {0} in closed form")]
    NotInvertible(String),
    #[error("derivative of the reparametrization is not positive at {0}")]
    NotIncreasing(Box<Point>),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Sample(#[from] SampleError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdeSystem {
    pub f: Expr,
    pub g: Expr,
    pub params: Bindings,
}

impl OdeSystem {
    pub fn new(f: Expr, g: Expr) -> Result<OdeSystem, OdeError> {
        Self::with_params(f, g, Bindings::new())
    }

    pub fn with_params(f: Expr, g: Expr, params: Bindings) -> Result<OdeSystem, OdeError> {
        for (name, e) in [("F", &f), ("G", &g)] {
            if e.contains_any(&[expr::YP, expr::ZP]) {
                return Err(OdeError::DependsOnDerivative(name));
            }
        }
        Ok(OdeSystem { f, g, params })
    }

    pub fn parse(f: &str, g: &str, params: Bindings) -> Result<OdeSystem, OdeError> {
        Self::with_params(expr::parse(f)?, expr::parse(g)?, params)
    }

    pub fn is_autonomous(&self) -> bool {
        !self.f.contains(expr::X) && !self.g.contains(expr::X)
    }

    pub fn rhs(&self) -> [&Expr; 2] {
        [&self.f, &self.g]
    }

    fn rebuild(&self, f: Expr, g: Expr) -> OdeSystem {
        OdeSystem { f: f.fold_constants(), g: g.fold_constants(), params: self.params.clone() }
    }
}

/// System file contents: `{"F": "...", "G": "...", "params": {...}}`.
#[derive(Debug, Clone, Deserialize)]
pub struct SystemSpec {
    #[serde(rename = "F")]
    pub f: String,
    #[serde(rename = "G")]
    pub g: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl SystemSpec {
    pub fn build(&self) -> Result<OdeSystem, OdeError> {
        let params = self.params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        OdeSystem::parse(&self.f, &self.g, params)
    }
}

/// `(F, G)` in the variables `P (y, z)`: substitute `(y, z) <- P^-1 (y, z)`,
/// then left-multiply by `P`.
pub fn linear_change(sys: &OdeSystem, p: &Mat2) -> Result<OdeSystem, OdeError> {
    let pi = p.inverse().ok_or(OdeError::Singular(p.det()))?;
    let (y, z) = (Expr::sym(expr::Y), Expr::sym(expr::Z));
    let y_old = Expr::num(pi.a11) * y.clone() + Expr::num(pi.a12) * z.clone();
    let z_old = Expr::num(pi.a21) * y + Expr::num(pi.a22) * z;
    let map = [(expr::Y, &y_old), (expr::Z, &z_old)];
    let f = sys.f.substitute(&map);
    let g = sys.g.substitute(&map);
    Ok(sys.rebuild(
        Expr::num(p.a11) * f.clone() + Expr::num(p.a12) * g.clone(),
        Expr::num(p.a21) * f + Expr::num(p.a22) * g,
    ))
}

fn only_x(e: &Expr, what: &'static str) -> Result<(), OdeError> {
    if e.contains_any(&[expr::Y, expr::Z, expr::YP, expr::ZP]) {
        return Err(OdeError::NotFunctionOfX(what));
    }
    Ok(())
}

/// The system satisfied by `y + phi(x)`, `z + psi(x)`.
pub fn shift_change(sys: &OdeSystem, phi: &Expr, psi: &Expr) -> Result<OdeSystem, OdeError> {
    only_x(phi, "phi")?;
    only_x(psi, "psi")?;
    let y_old = Expr::sym(expr::Y) - phi.clone();
    let z_old = Expr::sym(expr::Z) - psi.clone();
    let map = [(expr::Y, &y_old), (expr::Z, &z_old)];
    let f = sys.f.substitute(&map) + phi.differentiate(expr::X).differentiate(expr::X);
    let g = sys.g.substitute(&map) + psi.differentiate(expr::X).differentiate(expr::X);
    Ok(sys.rebuild(f, g))
}

/// The system satisfied by `y psi(x)`, `z psi(x)` as functions of `phi(x)`,
/// where `psi = sqrt(phi')`.
///
/// `phi` must be increasing on the `x` samples of `dom` and invertible in
/// closed form (see [`invert`]).
pub fn reparam_change(sys: &OdeSystem, phi: &Expr, dom: &SamplingDomain) -> Result<OdeSystem, OdeError> {
    only_x(phi, "phi")?;
    let x = Expr::sym(expr::X);
    let dphi = phi.differentiate(expr::X);
    let dom = dom.clone().params(&sys.params);
    for p in dom.points()? {
        match dphi.evaluate(p.bindings()) {
            Ok(v) if v > 0.0 => {}
            _ => return Err(OdeError::NotIncreasing(Box::new(p))),
        }
    }
    let inverse = invert(phi, expr::X, &x).ok_or_else(|| OdeError::NotInvertible(phi.to_string()))?;

    let psi = dphi.clone().sqrt().fold_constants();
    let dpsi = psi.differentiate(expr::X);
    let ddpsi = dpsi.differentiate(expr::X);
    let y_old = Expr::sym(expr::Y) / psi.clone();
    let z_old = Expr::sym(expr::Z) / psi.clone();
    // psi'' - 2 psi'^2 / psi
    let damping = ddpsi - Expr::num(2.0) * dpsi.powf(2.0) / psi.clone();
    let build = |rhs: &Expr, old: &Expr| {
        let moved = rhs.substitute(&[(expr::Y, &y_old), (expr::Z, &z_old)]);
        let in_old_x = (psi.clone() * moved + old.clone() * damping.clone()) / dphi.clone().powf(2.0);
        in_old_x.substitute(&[(expr::X, &inverse)])
    };
    let f = build(&sys.f, &y_old);
    let g = build(&sys.g, &z_old);
    Ok(sys.rebuild(f, g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReducibilityHint {
    /// `f' = 0` or `g' = 0`.
    ReducibleFPrimeGPrimeZero,
    /// `g = g0 f`: the Wronskian `f g' - f' g` vanishes.
    ReducibleProportional,
    NoHint,
}

/// Relative tolerance of the reducibility zero tests.
pub const REDUCIBILITY_TOL: f64 = 1e-9;

/// Numerical reducibility hint for a pair of functions of `u`.
///
/// `dom` must sample `u`.
pub fn reducibility_hint(f: &Expr, g: &Expr, dom: &SamplingDomain) -> Result<ReducibilityHint, SampleError> {
    let df = f.differentiate("u");
    let dg = g.differentiate("u");
    if zero_test(std::slice::from_ref(&df), dom, REDUCIBILITY_TOL)?.zero
        || zero_test(std::slice::from_ref(&dg), dom, REDUCIBILITY_TOL)?.zero {
        return Ok(ReducibilityHint::ReducibleFPrimeGPrimeZero);
    }
    let wronskian = (f.clone() * dg - df * g.clone()).fold_constants();
    if zero_test(&[wronskian], dom, REDUCIBILITY_TOL)?.zero {
        return Ok(ReducibilityHint::ReducibleProportional);
    }
    Ok(ReducibilityHint::NoHint)
}
