//! The classification tables as instantiable, verifiable families.
//!
//! Each entry maps parameter values to a concrete system, the generators it
//! is claimed to admit besides `X1 = d/dx`, and a sampling domain that avoids
//! the family's singular loci.

mod table1;
mod table2;
mod table3;

use crate::expr::{self, Bindings, Expr, SampleError, SamplingDomain, ZeroVerdict};
use crate::liealg::AlgebraElement;
use crate::odesys::{reducibility_hint, Mat2, OdeError, OdeSystem, ReducibilityHint};
use crate::symmetry::{admits, Generator, SymmetryError};
use rand::Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::OnceLock;
use thiserror::Error;

/// Verification tolerance used by the table suites.
pub const CATALOG_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("no catalog entry with id {0}")]
    UnknownEntry(String),
    #[error("entry {id} has no parameter {name}")]
    UnknownParam { id: String, name: String },
    #[error("entry {id}: constraint violated: {message}")]
    Constraint { id: String, message: String },
    #[error("bad built-in formula: {0}")]
    Formula(String),
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("while checking {generator}: {source}")]
    Sample { generator: String, source: SampleError },
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: f64,
    /// Interval random draws come from; for `signed` specs, the magnitude.
    pub range: (f64, f64),
    /// Draws take either sign.
    pub signed: bool,
    /// Only these values are allowed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub choices: Option<&'static [f64]>,
}

impl ParamSpec {
    pub const fn new(name: &'static str, default: f64, lo: f64, hi: f64) -> Self {
        ParamSpec { name, default, range: (lo, hi), signed: false, choices: None }
    }

    /// A nonzero parameter drawn with random sign.
    pub const fn nonzero(name: &'static str, default: f64) -> Self {
        ParamSpec { name, default, range: (0.3, 1.5), signed: true, choices: None }
    }

    pub const fn choice(name: &'static str, default: f64, choices: &'static [f64]) -> Self {
        ParamSpec { name, default, range: (default, default), signed: false, choices: Some(choices) }
    }

    pub fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        if let Some(c) = self.choices {
            return c[rng.gen_range(0..c.len())];
        }
        let (lo, hi) = self.range;
        let v = lo + (hi - lo) * rng.gen::<f64>();
        if self.signed && rng.gen::<bool>() {
            -v
        } else {
            v
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Constraint {
    pub text: &'static str,
    #[serde(skip)]
    pub holds: fn(&Bindings) -> bool,
}

pub(crate) fn nonzero(v: f64) -> bool {
    v.abs() > 1e-9
}

/// Generator-independent data needed by the `(xi, A, zeta)` determining form.
#[derive(Debug, Clone, PartialEq)]
pub struct Triple {
    pub xi: Expr,
    pub a: Mat2,
    pub zeta: [Expr; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expected {
    pub name: String,
    pub generator: Generator,
    /// Coordinates in `X1..X8` when the generator is in that span.
    pub element: Option<AlgebraElement>,
    pub triple: Option<Triple>,
}

impl Expected {
    pub fn from_element(name: &str, element: AlgebraElement) -> Self {
        Expected { name: name.to_string(), generator: Generator::from_element(&element), element: Some(element), triple: None }
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub id: &'static str,
    pub params: Bindings,
    pub system: OdeSystem,
    /// Claimed extension of the kernel; `X1` is implied.
    pub generators: Vec<Expected>,
    pub domain: SamplingDomain,
}

pub(crate) struct Built {
    pub system: OdeSystem,
    pub generators: Vec<Expected>,
    pub domain: SamplingDomain,
}

pub struct CatalogEntry {
    pub id: &'static str,
    pub table: u8,
    pub description: &'static str,
    pub params: Vec<ParamSpec>,
    pub constraints: Vec<Constraint>,
    /// Why the entry fails as printed, if it does.
    pub quarantined: Option<&'static str>,
    /// L8 optimal-system family of the row's generator (Table 2).
    pub l8_family: Option<u8>,
    pub(crate) build: fn(&mut Ctx) -> Result<Built, CatalogError>,
}

impl CatalogEntry {
    pub fn defaults(&self) -> Bindings {
        self.params.iter().map(|p| (p.name, p.default)).collect()
    }

    /// Random admissible parameters; retries until the constraints hold.
    pub fn draw<R: Rng>(&self, rng: &mut R) -> Bindings {
        loop {
            let b: Bindings = self.params.iter().map(|p| (p.name, p.draw(rng))).collect();
            if self.check(&b).is_ok() {
                return b;
            }
        }
    }

    fn check(&self, b: &Bindings) -> Result<(), CatalogError> {
        let fail = |message: String| Err(CatalogError::Constraint { id: self.id.to_string(), message });
        for p in &self.params {
            let v = b.get(p.name).unwrap_or(p.default);
            if !v.is_finite() {
                return fail(format!("{} must be finite", p.name));
            }
            if let Some(c) = p.choices {
                if !c.contains(&v) {
                    return fail(format!("{} must be one of {c:?}", p.name));
                }
            }
        }
        for c in &self.constraints {
            if !(c.holds)(b) {
                return fail(c.text.to_string());
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogEntry").field("id", &self.id).field("params", &self.params).finish()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntrySummary {
    pub id: &'static str,
    pub table: u8,
    pub description: &'static str,
    pub params: Vec<ParamSpec>,
    pub constraints: Vec<Constraint>,
    pub quarantined: Option<&'static str>,
}

fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut v = table1::entries();
        v.extend(table2::entries());
        v.extend(table3::entries());
        v
    })
}

pub fn entries() -> &'static [CatalogEntry] {
    catalog()
}

pub fn entry(id: &str) -> Result<&'static CatalogEntry, CatalogError> {
    catalog().iter().find(|e| e.id == id).ok_or_else(|| CatalogError::UnknownEntry(id.to_string()))
}

pub fn list_entries() -> Vec<EntrySummary> {
    catalog()
        .iter()
        .map(|e| EntrySummary {
            id: e.id,
            table: e.table,
            description: e.description,
            params: e.params.clone(),
            constraints: e.constraints.clone(),
            quarantined: e.quarantined,
        })
        .collect()
}

/// Build entry `id` with `params` overriding the defaults.
pub fn instantiate(id: &str, params: &Bindings) -> Result<Instance, CatalogError> {
    let e = entry(id)?;
    let mut values = e.defaults();
    for (name, v) in params.iter() {
        if !e.params.iter().any(|p| p.name == name) {
            return Err(CatalogError::UnknownParam { id: id.to_string(), name: name.clone() });
        }
        values.set(name, *v);
    }
    e.check(&values)?;
    let mut ctx = Ctx { id: e.id, b: values.clone() };
    let built = (e.build)(&mut ctx)?;
    Ok(Instance { id: e.id, params: values, system: built.system, generators: built.generators, domain: built.domain })
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorVerdict {
    pub name: String,
    pub generator: String,
    pub admitted: bool,
    pub verdict: ZeroVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub id: String,
    pub params: BTreeMap<String, f64>,
    pub f: String,
    pub g: String,
    pub pass: bool,
    pub quarantined: Option<String>,
    pub generators: Vec<GeneratorVerdict>,
    pub worst_ratio: f64,
}

pub fn describe(g: &Generator) -> String {
    format!("[{}, {}, {}]", g.xi, g.eta1, g.eta2)
}

/// Check `X1` and every expected generator of `inst`. `dom` replaces the
/// instance's own domain when given.
pub fn verify_instance(inst: &Instance, dom: Option<&SamplingDomain>, tol: f64) -> Result<VerifyReport, CatalogError> {
    let dom = dom.unwrap_or(&inst.domain);
    let kernel = Expected { name: "X1".into(), generator: Generator::basis(1), element: None, triple: None };
    let mut verdicts = Vec::new();
    for g in std::iter::once(&kernel).chain(&inst.generators) {
        let verdict = admits(&inst.system, &g.generator, dom, tol)
            .map_err(|source| CatalogError::Sample { generator: g.name.clone(), source })?;
        verdicts.push(GeneratorVerdict {
            name: g.name.clone(),
            generator: describe(&g.generator),
            admitted: verdict.zero,
            verdict,
        });
    }
    let quarantined = entry(inst.id).ok().and_then(|e| e.quarantined).map(str::to_string);
    Ok(VerifyReport {
        id: inst.id.to_string(),
        params: inst.params.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        f: inst.system.f.to_string(),
        g: inst.system.g.to_string(),
        pass: verdicts.iter().all(|v| v.admitted),
        quarantined,
        worst_ratio: verdicts.iter().map(|v| v.verdict.worst_ratio).fold(0.0, f64::max),
        generators: verdicts,
    })
}

pub fn verify_entry(
    id: &str,
    params: &Bindings,
    dom: Option<&SamplingDomain>,
    tol: f64,
) -> Result<VerifyReport, CatalogError> {
    verify_instance(&instantiate(id, params)?, dom, tol)
}

/// Basis of the solutions of `xi''' = a xi'`.
pub fn xi_family(a: f64) -> Vec<Expr> {
    let x = Expr::sym(expr::X);
    let p = a.abs().sqrt();
    let px = || Expr::num(p) * x.clone();
    let basis = if a == 0.0 {
        vec![Expr::one(), x.clone(), x.clone().powf(2.0)]
    } else if a < 0.0 {
        vec![Expr::one(), px().cos(), px().sin()]
    } else {
        vec![Expr::one(), px().exp(), (-px()).exp()]
    };
    basis.into_iter().map(|e| e.fold_constants()).collect()
}

/// `F = b/3 + a y/4 + y^-3 f(z/y)`, `G = c/3 + a z/4 + z^-3 g(z/y)` for
/// functions `f`, `g` of `u`.
pub fn general_solution_system(a: f64, b: f64, c: f64, f: &Expr, g: &Expr) -> Result<OdeSystem, CatalogError> {
    let dom = SamplingDomain::new().interval("u", 0.2, 3.0);
    let hint = reducibility_hint(f, g, &dom).map_err(|source| CatalogError::Sample { generator: "f, g".into(), source })?;
    if hint == ReducibilityHint::ReducibleFPrimeGPrimeZero {
        return Err(CatalogError::Constraint {
            id: "general solution".into(),
            message: "f' g' vanishes identically: the system is reducible".into(),
        });
    }
    let (y, z) = (Expr::sym(expr::Y), Expr::sym(expr::Z));
    let ratio = z.clone() / y.clone();
    let f_of = f.substitute(&[("u", &ratio)]);
    let g_of = g.substitute(&[("u", &ratio)]);
    let big_f = Expr::num(b / 3.0) + Expr::num(a / 4.0) * y.clone() + y.powf(-3.0) * f_of;
    let big_g = Expr::num(c / 3.0) + Expr::num(a / 4.0) * z.clone() + z.powf(-3.0) * g_of;
    Ok(OdeSystem::new(big_f.fold_constants(), big_g.fold_constants())?)
}

/// `3 F + (y . grad) F - (a y + b, a z + c)`, zero for the general solution.
pub fn reduced_form_residual(sys: &OdeSystem, a: f64, b: f64, c: f64) -> [Expr; 2] {
    let (y, z) = (Expr::sym(expr::Y), Expr::sym(expr::Z));
    let rhs = [(&sys.f, &y, b), (&sys.g, &z, c)];
    rhs.map(|(f, v, k)| {
        let euler = y.clone() * f.differentiate(expr::Y) + z.clone() * f.differentiate(expr::Z);
        (Expr::num(3.0) * f.clone() + euler - Expr::num(a) * v.clone() - Expr::num(k)).fold_constants()
    })
}

/// Formula builder over the current parameter values.
pub(crate) struct Ctx {
    id: &'static str,
    b: Bindings,
}

impl Ctx {
    pub fn get(&self, name: &str) -> f64 {
        self.b.get(name).unwrap_or(f64::NAN)
    }

    /// Record a derived constant usable in later formulas.
    pub fn set(&mut self, name: &str, v: f64) {
        self.b.set(name, v);
    }

    pub fn fail(&self, message: &str) -> CatalogError {
        CatalogError::Constraint { id: self.id.to_string(), message: message.to_string() }
    }

    pub fn expr(&self, text: &str) -> Result<Expr, CatalogError> {
        let e = expr::parse(text).map_err(|err| CatalogError::Formula(format!("{text}: {err}")))?;
        let pairs: Vec<(&str, f64)> = self.b.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        Ok(e.bind_constants(&pairs).fold_constants())
    }

    pub fn system(&self, f: &str, g: &str) -> Result<OdeSystem, CatalogError> {
        Ok(OdeSystem::new(self.expr(f)?, self.expr(g)?)?)
    }

    pub fn value(&self, text: &str) -> Result<f64, CatalogError> {
        self.expr(text)?.as_const().ok_or_else(|| CatalogError::Formula(format!("{text} is not a constant")))
    }

    /// `sum c_i X_i` with coefficient formulas.
    pub fn linear(&self, name: &str, c: [&str; 8]) -> Result<Expected, CatalogError> {
        let mut v = [0.0; 8];
        for (slot, text) in v.iter_mut().zip(c) {
            *slot = self.value(text)?;
        }
        Ok(Expected::from_element(name, AlgebraElement::new(v)))
    }

    pub fn field(&self, name: &str, xi: &str, eta1: &str, eta2: &str) -> Result<Expected, CatalogError> {
        let generator = Generator::new(self.expr(xi)?, self.expr(eta1)?, self.expr(eta2)?)?;
        Ok(Expected { name: name.to_string(), generator, element: None, triple: None })
    }
}

/// `f(u) = a_-1 / u + a_0 + a_1 u + a_2 u^2` with coefficients `{prefix}_m1` etc.
pub(crate) fn laurent(prefix: &str, u: &str) -> String {
    format!("({prefix}_m1/({u}) + {prefix}_0 + {prefix}_1*({u}) + {prefix}_2*({u})^2)")
}

pub(crate) fn laurent_params() -> Vec<ParamSpec> {
    vec![
        ParamSpec::nonzero("fa_m1", -0.4),
        ParamSpec::nonzero("fa_0", 0.2),
        ParamSpec::nonzero("fa_1", 0.7),
        ParamSpec::nonzero("fa_2", 1.3),
        ParamSpec::nonzero("ga_m1", 0.3),
        ParamSpec::nonzero("ga_0", 1.1),
        ParamSpec::nonzero("ga_1", 0.9),
        ParamSpec::nonzero("ga_2", -0.5),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{is_zero_numeric, parse};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ids_are_unique_and_cover_the_tables() {
        let ids: Vec<_> = entries().iter().map(|e| e.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        for id in ["T1.J1", "T1.J2", "T1.J3", "T2.1", "T2.10", "T3.S2", "T3.S5a", "T3.S7b"] {
            assert!(ids.contains(&id), "{id}");
        }
        assert_eq!(entries().iter().filter(|e| e.table == 2).count(), 10);
    }

    #[test]
    fn every_entry_passes_at_defaults_and_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for e in entries() {
            for params in [e.defaults(), e.draw(&mut rng)] {
                let r = verify_entry(e.id, &params, None, CATALOG_TOL).unwrap();
                if e.quarantined.is_some() {
                    assert!(!r.pass, "{} passes but is quarantined", e.id);
                } else {
                    assert!(r.pass, "{}: {:#?}", e.id, r.generators.iter().filter(|g| !g.admitted).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn t1_j3_example() {
        let inst = instantiate("T1.J3", &Bindings::new().with("kappa", 0.0).with("f0", 1.0).with("f1", 1.0)).unwrap();
        let dom = SamplingDomain::new();
        let f = parse("exp(y/z)*z^(-4)*(y + z)").unwrap();
        assert!(is_zero_numeric(&(inst.system.f.clone() - f), &dom, 1e-12).unwrap().zero);
        let names: Vec<_> = inst.generators.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["Y2", "Y3", "Y6"]);
    }

    #[test]
    fn t2_2_example() {
        let p = Bindings::new().with("gamma", 1.0);
        let coeffs = [("fa_m1", 0.0), ("fa_0", 0.0), ("fa_1", 1.0), ("fa_2", 0.0), ("ga_m1", 0.0), ("ga_0", 0.0), ("ga_1", 0.0), ("ga_2", 1.0)];
        let p = coeffs.iter().fold(p, |b, (k, v)| b.with(k, *v));
        let r = verify_entry("T2.2", &p, None, CATALOG_TOL).unwrap();
        assert!(r.pass);
        let inst = instantiate("T2.2", &p).unwrap();
        let f = parse("y*exp(-z)*y^(-1)").unwrap();
        assert!(is_zero_numeric(&(inst.system.f.clone() - f), &SamplingDomain::new(), 1e-12).unwrap().zero);
        assert_eq!(inst.generators[0].element.unwrap().c, [0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn t3_s5a_example_extension() {
        let p = Bindings::new().with("g0", 1.0).with("beta", 2.0);
        let inst = instantiate("T3.S5a", &p).unwrap();
        let gt = 2.0 * entry("T3.S5a").unwrap().defaults().get("gamma").unwrap();
        assert_eq!(inst.generators[1].element.unwrap().c, [0.0, 0.0, 0.0, 0.0, 1.0, gt, 1.0, 0.0]);
    }

    #[test]
    fn wrong_family_generator_fails() {
        let mut inst = instantiate("T1.J1", &Bindings::new()).unwrap();
        let y5 = instantiate("T1.J2", &Bindings::new()).unwrap().generators.pop().unwrap();
        assert_eq!(y5.name, "Y5");
        inst.generators.push(y5);
        let r = verify_instance(&inst, None, CATALOG_TOL).unwrap();
        assert!(!r.pass);
        let bad: Vec<_> = r.generators.iter().filter(|g| !g.admitted).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].name, "Y5");
        assert!(bad[0].verdict.witness.is_some());
    }

    #[test]
    fn constraints_are_enforced() {
        let err = instantiate("T1.J1", &Bindings::new().with("gamma", 1.0)).unwrap_err();
        assert!(matches!(err, CatalogError::Constraint { .. }), "{err}");
        let err = instantiate("T1.J1", &Bindings::new().with("kappa", 2.0)).unwrap_err();
        assert!(matches!(err, CatalogError::Constraint { .. }));
        let err = instantiate("T1.J1", &Bindings::new().with("nope", 2.0)).unwrap_err();
        assert!(matches!(err, CatalogError::UnknownParam { .. }));
        assert!(matches!(instantiate("T9", &Bindings::new()), Err(CatalogError::UnknownEntry(_))));
    }

    #[test]
    fn xi_families() {
        let dom = SamplingDomain::new().interval("x", -2.0, 2.0);
        for a in [0.0, -4.0, 4.0, 2.5] {
            let basis = xi_family(a);
            assert_eq!(basis.len(), 3);
            for xi in basis {
                let d1 = xi.differentiate("x");
                let d3 = d1.differentiate("x").differentiate("x");
                let r = d3 - Expr::num(a) * d1;
                assert!(is_zero_numeric(&r, &dom, 1e-10).unwrap().zero, "{a}: {xi}");
            }
        }
        assert_eq!(xi_family(0.0)[2].to_string(), "x^2");
    }

    #[test]
    fn general_solution() {
        let u = |s: &str| parse(s).unwrap();
        assert!(general_solution_system(0.0, 0.0, 0.0, &u("1"), &u("1")).is_err());
        let sys = general_solution_system(0.0, 0.0, 0.0, &u("u"), &u("u^2")).unwrap();
        let dom = SamplingDomain::new();
        let f = u("y^(-3)*(z/y)");
        assert!(is_zero_numeric(&(sys.f.clone() - f), &dom, 1e-12).unwrap().zero);
        let sys = general_solution_system(1.5, -0.5, 2.0, &u("u + u^3"), &u("exp(u)")).unwrap();
        for r in reduced_form_residual(&sys, 1.5, -0.5, 2.0) {
            assert!(is_zero_numeric(&r, &dom, 1e-9).unwrap().zero);
        }
    }
}
