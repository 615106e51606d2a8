//! Subalgebra families: a defining generator from the L8 optimal system and
//! the additional extension of the kernel.

use super::{nonzero, Built, CatalogEntry, CatalogError, Constraint, Ctx, ParamSpec};
use crate::expr::{Bindings, Chart, SamplingDomain};

fn v(b: &Bindings, name: &str) -> f64 {
    b.get(name).unwrap_or(f64::NAN)
}

struct Row {
    id: &'static str,
    subalgebra: &'static str,
    params: &'static [ParamSpec],
    constraints: &'static [Constraint],
    derive: fn(&mut Ctx),
    /// Substituted for `{U}` and `{V}` in `f` and `g` (`{V}` first).
    u: &'static str,
    v: &'static str,
    f: &'static str,
    g: &'static str,
    sub: [&'static str; 8],
    ext: (&'static str, [&'static str; 8]),
    domain: fn(&Ctx) -> Result<SamplingDomain, CatalogError>,
    quarantined: Option<&'static str>,
}

const F0: ParamSpec = ParamSpec::nonzero("f0", 1.3);
const G0: ParamSpec = ParamSpec::nonzero("g0", 0.7);
const GAMMA: ParamSpec = ParamSpec::new("gamma", 0.75, 0.6, 1.0);
const KAPPA: ParamSpec = ParamSpec::new("kappa", 1.5, 1.0, 2.0);

const F0_NZ: Constraint = Constraint { text: "f0 != 0", holds: |b| nonzero(v(b, "f0")) };
const G0_NZ: Constraint = Constraint { text: "g0 != 0", holds: |b| nonzero(v(b, "g0")) };
const GAMMA_NZ: Constraint = Constraint { text: "gamma != 0", holds: |b| nonzero(v(b, "gamma")) };
const KAPPA_NZ: Constraint = Constraint { text: "kappa != 0", holds: |b| nonzero(v(b, "kappa")) };
const BETA_NZ: Constraint = Constraint { text: "beta != 0", holds: |b| nonzero(v(b, "beta")) };

fn plain(_: &Ctx) -> Result<SamplingDomain, CatalogError> {
    Ok(SamplingDomain::new())
}

fn no_derive(_: &mut Ctx) {}

fn minus_two_gamma(ctx: &mut Ctx) {
    ctx.set("gt", -2.0 * ctx.get("gamma"));
}

fn two_gamma(ctx: &mut Ctx) {
    ctx.set("gt", 2.0 * ctx.get("gamma"));
}

fn spiral_centre(ctx: &mut Ctx, s: f64) {
    let a = ctx.get("alpha");
    ctx.set("chi1", a / (a * a + 1.0));
    ctx.set("chi2", 1.0 / (a * a + 1.0));
    ctx.set("s", s);
}

/// Sampling in the spiral coordinates `(u, v)` around the entry's centre.
fn spiral_domain(ctx: &Ctx) -> Result<SamplingDomain, CatalogError> {
    let chart = Chart {
        y: ctx.expr("s*chi1 + v*exp(alpha*u)*cos(u)")?,
        z: ctx.expr("-s*chi2 + v*exp(alpha*u)*sin(u)")?,
    };
    Ok(SamplingDomain::new().chart(chart, &[("u", 0.2, 1.3), ("v", 0.5, 2.0)]))
}

const POLAR_U: &str = "atan2(z, y)";
const POLAR_V: &str = "sqrt(y^2 + z^2)";
const SPIRAL_U: &str = "atan2(z + s*chi2, y - s*chi1)";
const SPIRAL_V: &str = "(exp(-alpha*{U})*sqrt((y - s*chi1)^2 + (z + s*chi2)^2))";
const SPIRAL_F: &str = "exp((alpha - 2*gamma)*{U})*(f0*cos({U}) + g0*sin({U}))*{V}^kappa";
const SPIRAL_G: &str = "exp((alpha - 2*gamma)*{U})*(f0*sin({U}) - g0*cos({U}))*{V}^kappa";
const SPIRAL_PARAMS: &[ParamSpec] = &[GAMMA, KAPPA, ParamSpec::new("alpha", 0.5, 0.3, 1.0), F0, G0];
const SPIRAL_CONSTRAINTS: &[Constraint] =
    &[Constraint { text: "alpha > 0", holds: |b| v(b, "alpha") > 0.0 }, F0_NZ, G0_NZ];
const SPIRAL_SUB: [&str; 8] = ["0", "gamma", "-s", "0", "alpha", "alpha", "-1", "1"];
const SPIRAL_EXT: (&str, [&str; 8]) =
    ("(1-kappa)/2 X2 + X5 + X6 - s chi1 X3 + s chi2 X4", ["0", "(1 - kappa)/2", "-s*chi1", "s*chi2", "1", "1", "0", "0"]);

const PSI_PARAMS_TAIL: [ParamSpec; 4] =
    [GAMMA, ParamSpec::nonzero("alpha", 0.5), ParamSpec::new("mu", 1.0 / 3.0, 0.2, 0.6), F0];
const PSI_F: &str = "f0*(z - alpha*y)/{U}^gamma*{V}";
const PSI_G: &str = "-f0*(kappa*y + (lambda + alpha)*z)/{U}^gamma*{V}";
const PSI_Q: &str = "(z^2 + lambda*y*z + kappa*y^2)";
const PSI_SUB: [&str; 8] = ["0", "gamma", "0", "0", "1", "1", "0", "0"];
const PSI_EXT: (&str, [&str; 8]) = (
    "(lambda gamma - mu) X5 - mu X6 + gamma X7 - kappa gamma X8",
    ["0", "0", "0", "0", "lambda*gamma - mu", "-mu", "gamma", "-kappa*gamma"],
);
const PSI_CONSTRAINTS: &[Constraint] = &[
    Constraint { text: "alpha != 0", holds: |b| nonzero(v(b, "alpha")) },
    Constraint { text: "p != 0", holds: |b| b.get("p").is_none_or(nonzero) },
    F0_NZ,
];

const S5A_QUARANTINE: &str =
    "as printed, neither gamma X2 + X7 nor the extension is admitted unless gamma = 1/2";

static ROWS: &[Row] = &[
    Row {
        id: "T3.S1a",
        subalgebra: "gamma X2 + X5",
        params: &[GAMMA, ParamSpec::new("beta", 1.5, 0.8, 2.0), F0, G0],
        constraints: &[GAMMA_NZ, BETA_NZ],
        derive: minus_two_gamma,
        u: "",
        v: "",
        f: "f0*z^beta*y^(1 + gt)",
        g: "g0*z^(beta + 1)*y^gt",
        sub: ["0", "gamma", "0", "0", "1", "0", "0", "0"],
        ext: ("beta X5 - gt X6", ["0", "0", "0", "0", "beta", "-gt", "0", "0"]),
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S1b",
        subalgebra: "gamma X2 + X5",
        params: &[GAMMA, ParamSpec::nonzero("kappa", 0.5), F0, G0],
        constraints: &[GAMMA_NZ, KAPPA_NZ],
        derive: minus_two_gamma,
        u: "",
        v: "",
        f: "f0*y^(1 + gt)*exp(kappa*z)",
        g: "g0*y^gt*exp(kappa*z)",
        sub: ["0", "gamma", "0", "0", "1", "0", "0", "0"],
        ext: ("kappa X5 - gt X4", ["0", "0", "0", "-gt", "kappa", "0", "0", "0"]),
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S1c",
        subalgebra: "gamma X2 + X5 + 1/2 X6",
        params: &[GAMMA, F0, G0],
        constraints: &[Constraint { text: "gt = (1 - 4 gamma)/2 != 0", holds: |b| nonzero(1.0 - 4.0 * v(b, "gamma")) }],
        derive: |ctx| ctx.set("gt", (1.0 - 4.0 * ctx.get("gamma")) / 2.0),
        u: "(y - z^2)",
        v: "",
        f: "(f0*{U}^(1/2) + 2*g0*z)*{U}^gt",
        g: "g0*{U}^gt",
        sub: ["0", "gamma", "0", "0", "1", "1/2", "0", "0"],
        ext: ("X4 + 2 X7", ["0", "0", "0", "1", "0", "0", "2", "0"]),
        domain: |_| Ok(SamplingDomain::new().interval("y", 3.0, 5.0).interval("z", 0.3, 1.5)),
        quarantined: None,
    },
    Row {
        id: "T3.S1d",
        subalgebra: "gamma X2 + X5 + 1/2 X6",
        params: &[GAMMA, ParamSpec::new("kappa", 0.5, 0.3, 0.8), F0, G0],
        constraints: &[
            Constraint { text: "kappa + 1 != 0", holds: |b| nonzero(v(b, "kappa") + 1.0) },
            Constraint { text: "gt = (kappa + 1 - 4 gamma)/2 != 0", holds: |b| nonzero(v(b, "kappa") + 1.0 - 4.0 * v(b, "gamma")) },
        ],
        derive: |ctx| ctx.set("gt", (ctx.get("kappa") + 1.0 - 4.0 * ctx.get("gamma")) / 2.0),
        u: "",
        v: "",
        f: "f0*z^(-(kappa + 1))*y^(gt + 1)",
        g: "g0*z^(-kappa)*y^gt",
        sub: ["0", "gamma", "0", "0", "1", "1/2", "0", "0"],
        ext: ("(kappa + 1) X2 + 2 X6", ["0", "kappa + 1", "0", "0", "0", "2", "0", "0"]),
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S1e.psi1",
        subalgebra: "gamma X2 + X5 + X6, 4 kappa - lambda^2 = p^2",
        params: &[
            ParamSpec::new("lambda", 1.0, 0.5, 1.5),
            ParamSpec::new("p", 1.732_050_807_568_877_2, 1.4, 2.0),
            PSI_PARAMS_TAIL[0],
            PSI_PARAMS_TAIL[1],
            PSI_PARAMS_TAIL[2],
            PSI_PARAMS_TAIL[3],
        ],
        constraints: PSI_CONSTRAINTS,
        derive: |ctx| {
            let (l, p) = (ctx.get("lambda"), ctx.get("p"));
            ctx.set("kappa", (l * l + p * p) / 4.0);
        },
        u: PSI_Q,
        v: "exp((2*lambda*gamma - 4*mu)/p*atan((lambda*z + 2*kappa*y)/(p*z)))",
        f: PSI_F,
        g: PSI_G,
        sub: PSI_SUB,
        ext: PSI_EXT,
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S1e.psi2",
        subalgebra: "gamma X2 + X5 + X6, 4 kappa - lambda^2 = -p^2",
        params: &[
            ParamSpec::new("lambda", 3.0, 2.8, 3.2),
            ParamSpec::new("p", 2.236_067_977_499_79, 2.1, 2.4),
            PSI_PARAMS_TAIL[0],
            PSI_PARAMS_TAIL[1],
            PSI_PARAMS_TAIL[2],
            PSI_PARAMS_TAIL[3],
        ],
        constraints: PSI_CONSTRAINTS,
        derive: |ctx| {
            let (l, p) = (ctx.get("lambda"), ctx.get("p"));
            ctx.set("kappa", (l * l - p * p) / 4.0);
        },
        u: PSI_Q,
        v: "((2*kappa*y + (lambda + p)*z)/(2*kappa*y + (lambda - p)*z))^((2*mu - lambda*gamma)/p)",
        f: PSI_F,
        g: PSI_G,
        sub: PSI_SUB,
        ext: PSI_EXT,
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S1e.psi3",
        subalgebra: "gamma X2 + X5 + X6, 4 kappa - lambda^2 = 0",
        params: &[
            ParamSpec::new("lambda", 2.0, 1.5, 2.5),
            PSI_PARAMS_TAIL[0],
            PSI_PARAMS_TAIL[1],
            PSI_PARAMS_TAIL[2],
            PSI_PARAMS_TAIL[3],
        ],
        constraints: PSI_CONSTRAINTS,
        derive: |ctx| {
            let l = ctx.get("lambda");
            ctx.set("kappa", l * l / 4.0);
        },
        u: PSI_Q,
        v: "exp(-4*(mu*y + gamma*z)/(lambda*y + 2*z))",
        f: PSI_F,
        g: PSI_G,
        sub: PSI_SUB,
        ext: PSI_EXT,
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S1f",
        subalgebra: "gamma X2 + X5 + X6",
        params: &[GAMMA, KAPPA, F0, G0],
        constraints: &[GAMMA_NZ, KAPPA_NZ],
        derive: no_derive,
        u: "(y/(y + z))",
        v: "",
        f: "f0*{U}^kappa*y^(1 - 2*gamma)",
        g: "(g0 - f0*{U})*{U}^(kappa - 1)*y^(1 - 2*gamma)",
        sub: ["0", "gamma", "0", "0", "1", "1", "0", "0"],
        ext: ("kappa X2 + 2 (X6 + X8)", ["0", "kappa", "0", "0", "0", "2", "0", "2"]),
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S1g",
        subalgebra: "gamma X2 + X5 + alpha X6",
        params: &[GAMMA, KAPPA, ParamSpec::new("alpha", -1.0 / 3.0, -0.8, -0.3), F0, G0],
        constraints: &[
            Constraint {
                text: "alpha not in {0, 1/2, 1}",
                holds: |b| [0.0, 0.5, 1.0].iter().all(|a| nonzero(v(b, "alpha") - a)),
            },
            KAPPA_NZ,
        ],
        derive: |ctx| ctx.set("gt", ctx.get("alpha") * ctx.get("kappa") - 2.0 * ctx.get("gamma")),
        u: "",
        v: "",
        f: "f0*z^(-kappa)*y^(gt + 1)",
        g: "g0*z^(1 - kappa)*y^gt",
        sub: ["0", "gamma", "0", "0", "1", "alpha", "0", "0"],
        ext: ("kappa X2 + 2 X6", ["0", "kappa", "0", "0", "0", "2", "0", "0"]),
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S2",
        subalgebra: "gamma X2 + X4 + X5, gamma = (alpha - kappa)/2",
        params: &[ParamSpec::new("alpha", 1.5, 1.0, 2.0), ParamSpec::new("kappa", 0.5, 0.3, 0.8), F0, G0],
        constraints: &[Constraint { text: "kappa alpha != 0", holds: |b| nonzero(v(b, "kappa") * v(b, "alpha")) }],
        derive: |ctx| ctx.set("gamma", (ctx.get("alpha") - ctx.get("kappa")) / 2.0),
        u: "",
        v: "",
        f: "f0*y^(kappa + 1)*exp(-alpha*z)",
        g: "g0*y^kappa*exp(-alpha*z)",
        sub: ["0", "gamma", "0", "1", "1", "0", "0", "0"],
        ext: ("alpha X5 + kappa X4", ["0", "0", "0", "kappa", "alpha", "0", "0", "0"]),
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S3a",
        subalgebra: "-X7 + X8",
        params: &[KAPPA, F0, G0],
        constraints: &[F0_NZ, G0_NZ],
        derive: no_derive,
        u: POLAR_U,
        v: POLAR_V,
        f: "(f0*cos({U}) + g0*sin({U}))*{V}^kappa",
        g: "(f0*sin({U}) - g0*cos({U}))*{V}^kappa",
        sub: ["0", "0", "0", "0", "0", "0", "-1", "1"],
        ext: ("(1-kappa)/2 X2 + X5 + X6", ["0", "(1 - kappa)/2", "0", "0", "1", "1", "0", "0"]),
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S3b",
        subalgebra: "gamma X2 - X7 + X8",
        params: &[GAMMA, KAPPA, F0, G0],
        constraints: &[GAMMA_NZ, F0_NZ, G0_NZ],
        derive: minus_two_gamma,
        u: POLAR_U,
        v: POLAR_V,
        f: "exp(gt*{U})*(f0*cos({U}) + g0*sin({U}))*{V}^(-gt*kappa - 3)",
        g: "exp(gt*{U})*(f0*sin({U}) - g0*cos({U}))*{V}^(-gt*kappa - 3)",
        sub: ["0", "gamma", "0", "0", "0", "0", "-1", "1"],
        ext: ("2 X2 + X5 + X6 + kappa (X8 - X7)", ["0", "2", "0", "0", "1", "1", "-kappa", "kappa"]),
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S4a",
        subalgebra: "gamma X2 - X3 + alpha (X5 + X6) - X7 + X8",
        params: SPIRAL_PARAMS,
        constraints: SPIRAL_CONSTRAINTS,
        derive: |ctx| spiral_centre(ctx, 1.0),
        u: SPIRAL_U,
        v: SPIRAL_V,
        f: SPIRAL_F,
        g: SPIRAL_G,
        sub: SPIRAL_SUB,
        ext: SPIRAL_EXT,
        domain: spiral_domain,
        quarantined: None,
    },
    Row {
        id: "T3.S4b",
        subalgebra: "gamma X2 + X3 + alpha (X5 + X6) - X7 + X8",
        params: SPIRAL_PARAMS,
        constraints: SPIRAL_CONSTRAINTS,
        derive: |ctx| spiral_centre(ctx, -1.0),
        u: SPIRAL_U,
        v: SPIRAL_V,
        f: SPIRAL_F,
        g: SPIRAL_G,
        sub: SPIRAL_SUB,
        ext: SPIRAL_EXT,
        domain: spiral_domain,
        quarantined: None,
    },
    Row {
        id: "T3.S4c",
        subalgebra: "gamma X2 + alpha (X5 + X6) - X7 + X8",
        params: SPIRAL_PARAMS,
        constraints: SPIRAL_CONSTRAINTS,
        derive: |ctx| spiral_centre(ctx, 0.0),
        u: SPIRAL_U,
        v: SPIRAL_V,
        f: SPIRAL_F,
        g: SPIRAL_G,
        sub: SPIRAL_SUB,
        ext: SPIRAL_EXT,
        domain: spiral_domain,
        quarantined: None,
    },
    Row {
        id: "T3.S5a",
        subalgebra: "gamma X2 + X7",
        params: &[GAMMA, ParamSpec::new("beta", 2.0, 1.5, 2.5), KAPPA, G0],
        constraints: &[G0_NZ],
        derive: two_gamma,
        u: "",
        v: "",
        f: "g0*z^(beta - 1)*exp(-y/z)*(y + kappa*gt*z)",
        g: "g0*z^beta*exp(-y/z)",
        sub: ["0", "gamma", "0", "0", "0", "0", "1", "0"],
        ext: ("X5 + gt X6 + (beta - 1) X7", ["0", "0", "0", "0", "1", "gt", "beta - 1", "0"]),
        domain: plain,
        quarantined: Some(S5A_QUARANTINE),
    },
    Row {
        id: "T3.S5b",
        subalgebra: "gamma X2 + X4 + X7",
        params: &[GAMMA, ParamSpec::new("beta", 0.5, 0.3, 0.8), F0, G0],
        constraints: &[BETA_NZ],
        derive: no_derive,
        u: "(z^2 - 2*y)",
        v: "",
        f: "(g0*z + f0)*exp(beta*{U} - 2*gamma*z)",
        g: "g0*exp(beta*{U} - 2*gamma*z)",
        sub: ["0", "gamma", "0", "1", "0", "0", "1", "0"],
        ext: ("beta X2 + X3", ["0", "beta", "1", "0", "0", "0", "0", "0"]),
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S5c",
        subalgebra: "X4 + X7",
        params: &[ParamSpec::new("beta", 5.0, 4.5, 5.5), ParamSpec::new("kappa", 0.5, 0.3, 0.8), F0, G0],
        constraints: &[KAPPA_NZ],
        derive: no_derive,
        u: "(beta + z^2 - 2*y)",
        v: "",
        f: "(g0*z + f0*{U}^(1/2))*{U}^kappa",
        g: "g0*{U}^kappa",
        sub: ["0", "0", "0", "1", "0", "0", "1", "0"],
        ext: ("(1 - 2 kappa) X2 + 2 (-beta X3 + 2 X5 + X6)", ["0", "1 - 2*kappa", "-2*beta", "0", "4", "2", "0", "0"]),
        // beta + z^2 - 2 y stays above beta - 4
        domain: |_| Ok(SamplingDomain::new().interval("y", 0.2, 2.0)),
        quarantined: None,
    },
    Row {
        id: "T3.S6",
        subalgebra: "gamma X2 + X5 + X6 + X7",
        params: &[GAMMA, KAPPA, F0, G0],
        constraints: &[Constraint {
            text: "gt = 2 gamma + kappa - 1 != 0",
            holds: |b| nonzero(2.0 * v(b, "gamma") + v(b, "kappa") - 1.0),
        }],
        derive: |ctx| ctx.set("gt", 2.0 * ctx.get("gamma") + ctx.get("kappa") - 1.0),
        u: "",
        v: "",
        f: "(g0*y + f0*z)*z^(kappa - 1)*exp(-gt*y/z)",
        g: "g0*z^kappa*exp(-gt*y/z)",
        sub: ["0", "gamma", "0", "0", "1", "1", "1", "0"],
        ext: ("(kappa - 1) X2 - 2 (X5 + X6)", ["0", "kappa - 1", "0", "0", "-2", "-2", "0", "0"]),
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S7a",
        subalgebra: "gamma X2 + X3, f0 = g0/gt",
        params: &[GAMMA, KAPPA, ParamSpec::new("beta", 2.5, 2.0, 3.0), ParamSpec::new("phi1", 1.0 / 3.0, 0.2, 0.6), G0],
        constraints: &[GAMMA_NZ],
        derive: |ctx| {
            two_gamma(ctx);
            ctx.set("f0", ctx.get("g0") / ctx.get("gt"));
        },
        u: "",
        v: "",
        f: "f0*z^(beta - 1)*exp(kappa*z - gt*y)*(kappa*z + gt*phi1)",
        g: "g0*z^beta*exp(kappa*z - gt*y)",
        sub: ["0", "gamma", "1", "0", "0", "0", "0", "0"],
        ext: ("(beta - 1) X3 + kappa X7 + gt X6", ["0", "0", "beta - 1", "0", "0", "gt", "kappa", "0"]),
        domain: plain,
        quarantined: None,
    },
    Row {
        id: "T3.S7b",
        subalgebra: "gamma X2 + X3, kappa = gt phi0/2",
        params: &[
            GAMMA,
            ParamSpec::nonzero("phi0", 0.5),
            ParamSpec::new("beta", 0.5, 0.3, 0.8),
            ParamSpec::new("phi1", 1.0 / 3.0, 0.2, 0.6),
            G0,
        ],
        constraints: &[GAMMA_NZ, Constraint { text: "phi0 != 0", holds: |b| nonzero(v(b, "phi0")) }],
        derive: |ctx| {
            two_gamma(ctx);
            ctx.set("kappa", ctx.get("gt") * ctx.get("phi0") / 2.0);
        },
        u: "",
        v: "",
        f: "g0*exp(beta*z + kappa*z^2 - gt*y)*(phi0*z + phi1)",
        g: "g0*exp(beta*z + kappa*z^2 - gt*y)",
        sub: ["0", "gamma", "1", "0", "0", "0", "0", "0"],
        ext: ("beta X3 + 2 kappa X7 + gt X4", ["0", "0", "beta", "gt", "0", "0", "2*kappa", "0"]),
        domain: plain,
        quarantined: None,
    },
];

fn row(id: &str) -> Result<&'static Row, CatalogError> {
    ROWS.iter().find(|r| r.id == id).ok_or_else(|| CatalogError::UnknownEntry(id.to_string()))
}

fn fill(template: &str, r: &Row) -> String {
    template.replace("{V}", r.v).replace("{U}", r.u)
}

fn build(ctx: &mut Ctx) -> Result<Built, CatalogError> {
    let r = row(ctx.id)?;
    (r.derive)(ctx);
    let system = ctx.system(&fill(r.f, r), &fill(r.g, r))?;
    let sub = ctx.linear(r.subalgebra.split(',').next().unwrap_or(r.subalgebra), r.sub)?;
    let ext = ctx.linear(r.ext.0, r.ext.1)?;
    Ok(Built { system, generators: vec![sub, ext], domain: (r.domain)(ctx)? })
}

pub(super) fn entries() -> Vec<CatalogEntry> {
    ROWS.iter()
        .map(|r| {
            let description = Box::leak(
                format!("Subalgebra {}: F = {}, G = {}; extension {}", r.subalgebra, fill(r.f, r), fill(r.g, r), r.ext.0)
                    .into_boxed_str(),
            );
            CatalogEntry {
                id: r.id,
                table: 3,
                description,
                params: r.params.to_vec(),
                constraints: r.constraints.to_vec(),
                quarantined: r.quarantined,
                l8_family: None,
                build,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{instantiate, verify_instance, CATALOG_TOL};
    use crate::expr::Bindings;

    #[test]
    fn s5a_passes_only_at_half() {
        let inst = instantiate("T3.S5a", &Bindings::new().with("gamma", 0.5)).unwrap();
        assert!(verify_instance(&inst, None, CATALOG_TOL).unwrap().pass);
        let inst = instantiate("T3.S5a", &Bindings::new()).unwrap();
        assert!(!verify_instance(&inst, None, CATALOG_TOL).unwrap().pass);
    }

    #[test]
    fn extension_of_s7b_uses_x4() {
        let inst = instantiate("T3.S7b", &Bindings::new()).unwrap();
        let c = inst.generators[1].element.unwrap().c;
        assert_eq!((c[3], c[7]), (1.5, 0.0));
    }
}
