//! Families admitting a generator with `xi'' != 0`.

use super::{nonzero, Built, CatalogEntry, CatalogError, Constraint, Ctx, Expected, ParamSpec, Triple};
use crate::expr::{Expr, SamplingDomain};
use crate::liealg::AlgebraElement;
use crate::odesys::Mat2;

const KAPPAS: &[f64] = &[0.0, -1.0, 1.0];

fn common_params() -> Vec<ParamSpec> {
    vec![ParamSpec::choice("kappa", 0.0, KAPPAS), ParamSpec::nonzero("f0", 1.3), ParamSpec::nonzero("f1", 0.7)]
}

fn nonzero_f() -> Vec<Constraint> {
    vec![
        Constraint { text: "f0 != 0", holds: |b| nonzero(b.get("f0").unwrap_or(0.0)) },
        Constraint { text: "f1 != 0", holds: |b| nonzero(b.get("f1").unwrap_or(0.0)) },
    ]
}

pub(super) fn entries() -> Vec<CatalogEntry> {
    let mut j1 = common_params();
    j1.push(ParamSpec::new("gamma", 3.0, 2.5, 3.5));
    let mut j1c = nonzero_f();
    j1c.push(Constraint { text: "gamma != 1", holds: |b| nonzero(b.get("gamma").unwrap_or(1.0) - 1.0) });

    let mut j2 = common_params();
    j2.push(ParamSpec::new("alpha", 0.5, -0.6, 0.6));
    let mut j2c = nonzero_f();
    j2c.push(Constraint { text: "alpha != 1", holds: |b| nonzero(b.get("alpha").unwrap_or(1.0) - 1.0) });

    vec![
        CatalogEntry {
            id: "T1.J1",
            table: 1,
            description: "J1 family: F = kappa y + f0 y z^-4 (z/y)^(-4/(gamma-1)), G = kappa z + f1 z^-3 (z/y)^(-4/(gamma-1)); extension Y4",
            params: j1,
            constraints: j1c,
            quarantined: None,
            l8_family: None,
            build: build_j1,
        },
        CatalogEntry {
            id: "T1.J2",
            table: 1,
            description: "J2 family: F = kappa y + (f0 y - f1 z) tau, G = kappa z + (f0 z + f1 y) tau, tau = exp(4 alpha atan(z/y)) (y^2+z^2)^-2; extension Y5",
            params: j2,
            constraints: j2c,
            quarantined: None,
            l8_family: None,
            build: build_j2,
        },
        CatalogEntry {
            id: "T1.J3",
            table: 1,
            description: "J3 family: F = kappa y + exp(y/z) z^-4 (f0 y + f1 z), G = kappa z + f0 z^-3 exp(y/z); extension Y6",
            params: common_params(),
            constraints: nonzero_f(),
            quarantined: None,
            l8_family: None,
            build: build_j3,
        },
    ]
}

/// The two `xi''' = 4 kappa xi'` generators for the entry's `kappa`.
fn xi_generators(ctx: &Ctx) -> Result<Vec<Expected>, CatalogError> {
    // (name, xi, eta factor): generator xi d/dx + eta (y d/dy + z d/dz), eta = xi'/2
    let rows: [(&str, &str, &str); 2] = match ctx.get("kappa") {
        0.0 => [("Y2", "2*x", "1"), ("Y3", "x^2", "x")],
        -1.0 => [("Y7", "cos(2*x)", "-sin(2*x)"), ("Y8", "sin(2*x)", "cos(2*x)")],
        1.0 => [("Y9", "exp(-2*x)", "-exp(-2*x)"), ("Y10", "exp(2*x)", "exp(2*x)")],
        _ => return Err(ctx.fail("kappa must be 0, -1 or 1")),
    };
    rows.iter()
        .map(|(name, xi, eta)| {
            let mut g = ctx.field(name, xi, &format!("({eta})*y"), &format!("({eta})*z"))?;
            g.triple = Some(Triple { xi: (ctx.expr(xi)? / Expr::num(2.0)).fold_constants(), a: Mat2::ZERO, zeta: [Expr::zero(), Expr::zero()] });
            Ok(g)
        })
        .collect()
}

fn jordan_generator(name: &str, a: Mat2) -> Expected {
    let mut g = Expected::from_element(name, AlgebraElement::new([0.0, 0.0, 0.0, 0.0, a.a11, a.a22, a.a12, a.a21]));
    g.triple = Some(Triple { xi: Expr::zero(), a, zeta: [Expr::zero(), Expr::zero()] });
    g
}

fn finish(ctx: &Ctx, f: &str, g: &str, jordan: Expected) -> Result<Built, CatalogError> {
    let mut generators = xi_generators(ctx)?;
    generators.push(jordan);
    Ok(Built { system: ctx.system(f, g)?, generators, domain: SamplingDomain::new() })
}

fn build_j1(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    let y4 = jordan_generator("Y4", Mat2::diag(ctx.get("gamma"), 1.0));
    finish(
        ctx,
        "kappa*y + f0*y/z^4*(z/y)^(-4/(gamma-1))",
        "kappa*z + f1/z^3*(z/y)^(-4/(gamma-1))",
        y4,
    )
}

fn build_j2(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    let alpha = ctx.get("alpha");
    let y5 = jordan_generator("Y5", Mat2::new(alpha, -1.0, 1.0, alpha));
    let tau = "exp(4*alpha*atan2(z, y))*(y^2 + z^2)^(-2)";
    finish(ctx, &format!("kappa*y + (f0*y - f1*z)*{tau}"), &format!("kappa*z + (f0*z + f1*y)*{tau}"), y5)
}

fn build_j3(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    let y6 = jordan_generator("Y6", Mat2::new(1.0, 4.0, 0.0, 1.0));
    finish(ctx, "kappa*y + exp(y/z)*z^(-4)*(f0*y + f1*z)", "kappa*z + f0*z^(-3)*exp(y/z)", y6)
}
