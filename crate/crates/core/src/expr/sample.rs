//! Deterministic sampling domains and the numerical zero test.

use super::{Bindings, EvalError, Expr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub const DEFAULT_SEED: u64 = 0x5EED_2024;

/// Rejection-sampling budget per requested point.
const ATTEMPTS_PER_POINT: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("invalid sampling domain: {0}")]
    InvalidDomain(String),
    #[error("only {found} of {wanted} valid sample points after {attempts} attempts")]
    Exhausted { wanted: usize, found: usize, attempts: usize },
    #[error("evaluation failed at {point}: {source}")]
    Eval { point: Box<Point>, source: EvalError },
}

/// Dependent variables expressed through chart coordinates.
///
/// When a chart is present, `y` and `z` are not sampled directly: the chart
/// coordinates are sampled from their intervals and `y`, `z` are computed.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub y: Expr,
    pub z: Expr,
}

/// A sample point: every sampled or derived coordinate with its value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Point {
    pub values: BTreeMap<String, f64>,
    #[serde(skip)]
    bindings: Bindings,
}

impl Point {
    /// Coordinates plus the domain's fixed parameters.
    pub fn bindings(&self) -> &Bindings {
        &self.bindings
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (k, v)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplingDomain {
    pub intervals: BTreeMap<String, (f64, f64)>,
    pub chart: Option<Chart>,
    pub excluded: Vec<Expr>,
    pub guard: f64,
    pub samples: usize,
    pub seed: u64,
    pub params: Bindings,
}

impl Default for SamplingDomain {
    /// `x, yp, zp` in (-1, 1), `y, z` in (0.2, 3.0), 200 samples.
    fn default() -> Self {
        let mut intervals = BTreeMap::new();
        intervals.insert("x".to_string(), (-1.0, 1.0));
        intervals.insert("y".to_string(), (0.2, 3.0));
        intervals.insert("z".to_string(), (0.2, 3.0));
        intervals.insert("yp".to_string(), (-1.0, 1.0));
        intervals.insert("zp".to_string(), (-1.0, 1.0));
        SamplingDomain {
            intervals,
            chart: None,
            excluded: Vec::new(),
            guard: 1e-3,
            samples: 200,
            seed: DEFAULT_SEED,
            params: Bindings::new(),
        }
    }
}

impl SamplingDomain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn interval(mut self, name: &str, lo: f64, hi: f64) -> Self {
        self.intervals.insert(name.to_string(), (lo, hi));
        self
    }

    /// Replace direct sampling of `y, z` by a chart over the given coordinates.
    pub fn chart(mut self, chart: Chart, coords: &[(&str, f64, f64)]) -> Self {
        self.intervals.remove("y");
        self.intervals.remove("z");
        for (name, lo, hi) in coords {
            self.intervals.insert(name.to_string(), (*lo, *hi));
        }
        self.chart = Some(chart);
        self
    }

    pub fn exclude(mut self, locus: Expr) -> Self {
        self.excluded.push(locus);
        self
    }

    pub fn guard(mut self, eps: f64) -> Self {
        self.guard = eps;
        self
    }

    pub fn samples(mut self, n: usize) -> Self {
        self.samples = n;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.set(name, value);
        self
    }

    pub fn params(mut self, values: &Bindings) -> Self {
        self.params.extend(values.iter());
        self
    }

    pub fn validate(&self) -> Result<(), SampleError> {
        for (name, (lo, hi)) in &self.intervals {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(SampleError::InvalidDomain(format!(
                    "interval for {name} must satisfy lo < hi, got ({lo}, {hi})"
                )));
            }
        }
        if self.guard.is_nan() || self.guard <= 0.0 {
            return Err(SampleError::InvalidDomain(format!("guard must be positive, got {}", self.guard)));
        }
        if self.samples == 0 {
            return Err(SampleError::InvalidDomain("sample count must be at least 1".into()));
        }
        Ok(())
    }

    fn try_point(&self, rng: &mut ChaCha8Rng) -> Option<Point> {
        let mut values = BTreeMap::new();
        let mut bindings = self.params.clone();
        for (name, (lo, hi)) in &self.intervals {
            let v = lo + (hi - lo) * rng.gen::<f64>();
            values.insert(name.clone(), v);
            bindings.set(name, v);
        }
        if let Some(chart) = &self.chart {
            let y = chart.y.evaluate(&bindings).ok()?;
            let z = chart.z.evaluate(&bindings).ok()?;
            values.insert("y".into(), y);
            values.insert("z".into(), z);
            bindings.set("y", y);
            bindings.set("z", z);
        }
        for locus in &self.excluded {
            match locus.evaluate(&bindings) {
                Ok(v) if v.abs() > self.guard => {}
                _ => return None,
            }
        }
        Some(Point { values, bindings })
    }

    /// The deterministic list of sample points for this domain.
    pub fn points(&self) -> Result<Vec<Point>, SampleError> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let budget = ATTEMPTS_PER_POINT * self.samples;
        let mut out = Vec::with_capacity(self.samples);
        let mut attempts = 0;
        while out.len() < self.samples {
            if attempts == budget {
                return Err(SampleError::Exhausted { wanted: self.samples, found: out.len(), attempts });
            }
            attempts += 1;
            if let Some(p) = self.try_point(&mut rng) {
                out.push(p);
            }
        }
        Ok(out)
    }
}

/// Outcome of a numerical zero test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroVerdict {
    pub zero: bool,
    /// Largest `|value| / (1 + scale)` over the samples.
    pub worst_ratio: f64,
    /// Largest absolute value over the samples.
    pub max_abs: f64,
    /// Point attaining `worst_ratio`.
    pub witness: Option<Point>,
    pub samples: usize,
}

/// Value of `e` and the largest magnitude among its top-level additive terms.
pub fn evaluate_with_scale(e: &Expr, b: &Bindings) -> Result<(f64, f64), EvalError> {
    match e {
        Expr::Sum(terms) => {
            let mut acc = 0.0;
            let mut scale: f64 = 0.0;
            for t in terms {
                let v = t.evaluate(b)?;
                acc += v;
                scale = scale.max(v.abs());
            }
            Ok((acc, scale))
        }
        Expr::Neg(inner) => evaluate_with_scale(inner, b).map(|(v, s)| (-v, s)),
        _ => {
            let v = e.evaluate(b)?;
            Ok((v, v.abs()))
        }
    }
}

/// Zero test of several expressions at once over shared sample points.
pub fn zero_test(exprs: &[Expr], dom: &SamplingDomain, tol: f64) -> Result<ZeroVerdict, SampleError> {
    let points = dom.points()?;
    let mut worst = 0.0;
    let mut max_abs: f64 = 0.0;
    let mut witness = None;
    for p in &points {
        for e in exprs {
            let (v, scale) = evaluate_with_scale(e, p.bindings())
                .map_err(|source| SampleError::Eval { point: Box::new(p.clone()), source })?;
            let ratio = v.abs() / (1.0 + scale);
            max_abs = max_abs.max(v.abs());
            if ratio > worst || witness.is_none() {
                worst = ratio;
                witness = Some(p.clone());
            }
        }
    }
    Ok(ZeroVerdict { zero: worst <= tol, worst_ratio: worst, max_abs, witness, samples: points.len() })
}

/// Probabilistic test that `e` vanishes identically on `dom`:
/// `|e(p)| <= tol * (1 + scale(p))` at every sample point.
pub fn is_zero_numeric(e: &Expr, dom: &SamplingDomain, tol: f64) -> Result<ZeroVerdict, SampleError> {
    zero_test(std::slice::from_ref(e), dom, tol)
}
