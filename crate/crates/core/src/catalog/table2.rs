//! Families whose admitted generators all have `xi'' = 0`, one generator
//! beyond the kernel, with two arbitrary functions `f`, `g`.

use super::{laurent, laurent_params, Built, CatalogEntry, CatalogError, Constraint, Ctx, ParamSpec};
use crate::expr::{self, Bindings, Chart, SamplingDomain};
use crate::odesys::{reducibility_hint, ReducibilityHint};

/// `f`, `g` as Laurent polynomials in `u` are not a reducible pair.
fn irreducible(b: &Bindings) -> bool {
    let parse = |prefix: &str| {
        let e = expr::parse(&laurent(prefix, "u")).ok()?;
        let pairs: Vec<(&str, f64)> = b.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        Some(e.bind_constants(&pairs).fold_constants())
    };
    let (Some(f), Some(g)) = (parse("fa"), parse("ga")) else { return false };
    let dom = SamplingDomain::new().interval("u", 0.2, 3.0).samples(50);
    matches!(reducibility_hint(&f, &g, &dom), Ok(ReducibilityHint::NoHint))
}

fn row(
    id: &'static str,
    description: &'static str,
    extra: Vec<ParamSpec>,
    family: u8,
    build: fn(&mut Ctx) -> Result<Built, CatalogError>,
) -> CatalogEntry {
    let mut params = vec![ParamSpec::new("gamma", 1.5, 0.5, 2.0)];
    params.extend(extra);
    params.extend(laurent_params());
    let mut constraints = vec![Constraint { text: "f, g irreducible (f' g' != 0, g not proportional to f)", holds: irreducible }];
    if params.iter().any(|p| p.name == "alpha") {
        constraints.push(if id == "T2.1" {
            Constraint { text: "-1 <= alpha <= 1", holds: |b| b.get("alpha").is_some_and(|a| (-1.0..=1.0).contains(&a)) }
        } else {
            Constraint { text: "alpha > 0", holds: |b| b.get("alpha").is_some_and(|a| a > 0.0) }
        });
    }
    CatalogEntry {
        id,
        table: 2,
        description,
        params,
        constraints,
        quarantined: if id == "T2.3" { Some(T2_3_QUARANTINE) } else { None },
        l8_family: Some(family),
        build,
    }
}

const T2_3_QUARANTINE: &str = "as printed, G = -exp(-2 gamma u) theta2 is not admitted by gamma X2 - X7 + X8; \
with G = +exp(-2 gamma u) theta2 it is";

pub(super) fn entries() -> Vec<CatalogEntry> {
    let alpha_row1 = || vec![ParamSpec::new("alpha", 0.5, -1.0, 1.0)];
    let alpha_pos = || vec![ParamSpec::new("alpha", 0.5, 0.3, 1.5)];
    vec![
        row("T2.1", "F = f(u) y^(1-2 gamma), G = g(u) y^(alpha-2 gamma), u = y^alpha/z; gamma X2 + X5 + alpha X6", alpha_row1(), 1, build_1),
        row("T2.2", "F = f(u) y^(1-2 gamma), G = g(u) y^(-2 gamma), u = y exp(-z); gamma X2 + X4 + X5", vec![], 2, build_2),
        row("T2.3", "F = exp(-2 gamma u) theta1(u, v), G = -exp(-2 gamma u) theta2(u, v), y = v cos u, z = v sin u; gamma X2 - X7 + X8", vec![], 3, build_3),
        row("T2.4", "F = exp((alpha-2 gamma) u) theta1, G = exp((alpha-2 gamma) u) theta2, y = v exp(alpha u) cos u + chi1, z = v exp(alpha u) sin u - chi2; gamma X2 - X3 + alpha (X5 + X6) - X7 + X8", alpha_pos(), 4, build_4),
        row("T2.5", "F = exp((alpha-2 gamma) u) theta1, G = exp((alpha-2 gamma) u) theta2, y = v exp(alpha u) cos u - chi1, z = v exp(alpha u) sin u + chi2; gamma X2 + X3 + alpha (X5 + X6) - X7 + X8", alpha_pos(), 4, build_5),
        row("T2.6", "F = exp((alpha-2 gamma) u) theta1, G = exp((alpha-2 gamma) u) theta2, y = v exp(alpha u) cos u, z = v exp(alpha u) sin u; gamma X2 + alpha (X5 + X6) - X7 + X8", alpha_pos(), 4, build_6),
        row("T2.7", "F = (g(v) u + f(v)) exp(-2 gamma u), G = g(v) exp(-2 gamma u), y = u v, z = v; gamma X2 + X7", vec![], 5, build_7),
        row("T2.8", "F = (g(u) z + f(u)) exp(-2 gamma z), G = g(u) exp(-2 gamma z), u = z^2 - 2 y; gamma X2 + X4 + X7", vec![], 5, build_8),
        row("T2.9", "F = ((y/z) g(u) + f(u)) exp((1-2 gamma) y/z), G = g(u) exp((1-2 gamma) y/z), u = z exp(-y/z); gamma X2 + X5 + X6 + X7", vec![], 6, build_9),
        row("T2.10", "F = f(z) exp(-2 gamma y), G = g(z) exp(-2 gamma y); gamma X2 + X3", vec![], 7, build_10),
    ]
}

fn f(u: &str) -> String {
    laurent("fa", u)
}

fn g(u: &str) -> String {
    laurent("ga", u)
}

fn finish(ctx: &Ctx, big_f: &str, big_g: &str, c: [&str; 8], domain: SamplingDomain) -> Result<Built, CatalogError> {
    let mut gen = ctx.linear("", c)?;
    gen.name = gen.element.map(|e| e.to_string()).unwrap_or_default();
    Ok(Built { system: ctx.system(big_f, big_g)?, generators: vec![gen], domain })
}

fn build_1(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    let u = "y^alpha/z";
    finish(ctx, &format!("{}*y^(1-2*gamma)", f(u)), &format!("{}*y^(alpha-2*gamma)", g(u)), ["0", "gamma", "0", "0", "1", "alpha", "0", "0"], SamplingDomain::new())
}

fn build_2(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    let u = "y*exp(-z)";
    finish(ctx, &format!("{}*y^(1-2*gamma)", f(u)), &format!("{}*y^(-2*gamma)", g(u)), ["0", "gamma", "0", "1", "1", "0", "0", "0"], SamplingDomain::new())
}

/// `theta1`, `theta2` at `(u, v)` given as formulas.
fn thetas(u: &str, v: &str) -> (String, String) {
    let (fv, gv) = (f(v), g(v));
    (format!("(cos({u})*{fv} + sin({u})*{gv})"), format!("(sin({u})*{fv} - cos({u})*{gv})"))
}

fn build_3(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    let (u, v) = ("atan2(z, y)", "sqrt(y^2 + z^2)");
    let (t1, t2) = thetas(u, v);
    finish(
        ctx,
        &format!("exp(-2*gamma*{u})*{t1}"),
        &format!("-exp(-2*gamma*{u})*{t2}"),
        ["0", "gamma", "0", "0", "0", "0", "-1", "1"],
        SamplingDomain::new(),
    )
}

/// Rows 4-6: the spiral chart centred at `(s chi1, -s chi2)`. Sampling is in
/// `(u, v)`; `F`, `G` are written in `y`, `z` through the inverse chart.
fn spiral(ctx: &mut Ctx, s: f64) -> Result<Built, CatalogError> {
    let a = ctx.get("alpha");
    ctx.set("chi1", a / (a * a + 1.0));
    ctx.set("chi2", 1.0 / (a * a + 1.0));
    ctx.set("s", s);
    let (dy, dz) = ("(y - s*chi1)", "(z + s*chi2)");
    let u = format!("atan2({dz}, {dy})");
    let v = format!("(exp(-alpha*{u})*sqrt({dy}^2 + {dz}^2))");
    let (t1, t2) = thetas(&u, &v);
    let chart = Chart {
        y: ctx.expr("s*chi1 + v*exp(alpha*u)*cos(u)")?,
        z: ctx.expr("-s*chi2 + v*exp(alpha*u)*sin(u)")?,
    };
    let domain = SamplingDomain::new().chart(chart, &[("u", 0.2, 1.3), ("v", 0.5, 2.0)]);
    let b = format!("{}", -s);
    finish(
        ctx,
        &format!("exp((alpha - 2*gamma)*{u})*{t1}"),
        &format!("exp((alpha - 2*gamma)*{u})*{t2}"),
        ["0", "gamma", &b, "0", "alpha", "alpha", "-1", "1"],
        domain,
    )
}

fn build_4(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    spiral(ctx, 1.0)
}

fn build_5(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    spiral(ctx, -1.0)
}

fn build_6(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    spiral(ctx, 0.0)
}

fn build_7(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    let (u, v) = ("(y/z)", "z");
    finish(
        ctx,
        &format!("({}*{u} + {})*exp(-2*gamma*{u})", g(v), f(v)),
        &format!("{}*exp(-2*gamma*{u})", g(v)),
        ["0", "gamma", "0", "0", "0", "0", "1", "0"],
        SamplingDomain::new(),
    )
}

fn build_8(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    let u = "(z^2 - 2*y)";
    let domain = SamplingDomain::new().exclude(ctx.expr(u)?).guard(0.2);
    finish(
        ctx,
        &format!("({}*z + {})*exp(-2*gamma*z)", g(u), f(u)),
        &format!("{}*exp(-2*gamma*z)", g(u)),
        ["0", "gamma", "0", "1", "0", "0", "1", "0"],
        domain,
    )
}

fn build_9(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    let u = "(z*exp(-y/z))";
    finish(
        ctx,
        &format!("((y/z)*{} + {})*exp((1 - 2*gamma)*(y/z))", g(u), f(u)),
        &format!("{}*exp((1 - 2*gamma)*(y/z))", g(u)),
        ["0", "gamma", "0", "0", "1", "1", "1", "0"],
        SamplingDomain::new(),
    )
}

fn build_10(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    finish(
        ctx,
        &format!("{}*exp(-2*gamma*y)", f("z")),
        &format!("{}*exp(-2*gamma*y)", g("z")),
        ["0", "gamma", "1", "0", "0", "0", "0", "0"],
        SamplingDomain::new(),
    )
}
