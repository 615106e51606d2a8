use super::{Expr, Func};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unbound symbol `{0}`")]
    Unbound(String),
    #[error("domain error: {0}")]
    Domain(String),
}

/// Symbol values used during evaluation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Bindings {
    values: HashMap<String, f64>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn set(&mut self, name: &str, value: f64) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &f64)> {
        self.values.iter()
    }

    pub fn extend<'a>(&mut self, iter: impl IntoIterator<Item = (&'a String, &'a f64)>) {
        for (k, v) in iter {
            self.values.insert(k.clone(), *v);
        }
    }
}

impl<'a> FromIterator<(&'a str, f64)> for Bindings {
    fn from_iter<T: IntoIterator<Item = (&'a str, f64)>>(iter: T) -> Self {
        let mut b = Bindings::new();
        for (k, v) in iter {
            b.set(k, v);
        }
        b
    }
}

fn domain(msg: impl Into<String>) -> EvalError {
    EvalError::Domain(msg.into())
}

fn finite(v: f64, what: &str) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain(format!("non-finite result in {what}")))
    }
}

/// `base^exponent` with an error instead of NaN/inf.
pub(crate) fn power(base: f64, exponent: f64) -> Result<f64, EvalError> {
    let integral = exponent.fract() == 0.0 && exponent.abs() <= i32::MAX as f64;
    if base == 0.0 && exponent < 0.0 {
        return Err(domain("zero raised to a negative power"));
    }
    let v = if integral {
        base.powi(exponent as i32)
    } else {
        if base < 0.0 {
            return Err(domain(format!("negative base {base} raised to non-integer power {exponent}")));
        }
        base.powf(exponent)
    };
    finite(v, "power")
}

pub(crate) fn apply(func: Func, args: &[f64]) -> Result<f64, EvalError> {
    let a = args[0];
    let v = match func {
        Func::Sin => a.sin(),
        Func::Cos => a.cos(),
        Func::Exp => a.exp(),
        Func::Ln => {
            if a <= 0.0 {
                return Err(domain(format!("ln of non-positive value {a}")));
            }
            a.ln()
        }
        Func::Sqrt => {
            if a < 0.0 {
                return Err(domain(format!("sqrt of negative value {a}")));
            }
            a.sqrt()
        }
        Func::Atan => a.atan(),
        Func::Atan2 => {
            let b = args[1];
            if a == 0.0 && b == 0.0 {
                return Err(domain("atan2(0, 0) is undefined"));
            }
            a.atan2(b)
        }
    };
    finite(v, func.name())
}

impl Expr {
    /// Evaluate in IEEE double precision.
    pub fn evaluate(&self, b: &Bindings) -> Result<f64, EvalError> {
        match self {
            Expr::Const(v) => Ok(*v),
            Expr::Sym(s) => b.get(s).ok_or_else(|| EvalError::Unbound(s.to_string())),
            Expr::Sum(terms) => {
                let mut acc = 0.0;
                for t in terms {
                    acc += t.evaluate(b)?;
                }
                finite(acc, "sum")
            }
            Expr::Product(factors) => {
                let mut acc = 1.0;
                for t in factors {
                    acc *= t.evaluate(b)?;
                }
                finite(acc, "product")
            }
            Expr::Quotient(n, d) => {
                let num = n.evaluate(b)?;
                let den = d.evaluate(b)?;
                if den == 0.0 {
                    return Err(domain("division by zero"));
                }
                finite(num / den, "quotient")
            }
            Expr::Power(base, exp) => power(base.evaluate(b)?, exp.evaluate(b)?),
            Expr::Neg(a) => Ok(-a.evaluate(b)?),
            Expr::Call(f, args) => {
                let mut vals = [0.0; 2];
                for (slot, a) in vals.iter_mut().zip(args) {
                    *slot = a.evaluate(b)?;
                }
                apply(*f, &vals[..args.len()])
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn at(pairs: &[(&str, f64)]) -> Bindings {
        pairs.iter().copied().collect()
    }

    #[test]
    fn constants_and_arithmetic() {
        assert_eq!(Expr::Const(7.0).evaluate(&at(&[("y", 1.0)])).unwrap(), 7.0);
        assert_eq!(parse("y^2+z^2").unwrap().evaluate(&at(&[("y", 3.0), ("z", 4.0)])).unwrap(), 25.0);
        assert_eq!(parse("z/y").unwrap().evaluate(&at(&[("y", 2.0), ("z", 5.0)])).unwrap(), 2.5);
    }

    #[test]
    fn tau_with_zero_alpha() {
        let e = parse("exp(4*alpha*atan2(z,y))*(y^2+z^2)^(-2)").unwrap();
        let v = e.evaluate(&at(&[("alpha", 0.0), ("y", 1.0), ("z", 1.0)])).unwrap();
        assert_eq!(v, 0.25);
    }

    #[test]
    fn failures_are_reported_not_nan() {
        let b = at(&[("y", -1.0), ("z", 0.0)]);
        assert!(matches!(parse("ln(y)").unwrap().evaluate(&b), Err(EvalError::Domain(_))));
        assert!(matches!(parse("1/z").unwrap().evaluate(&b), Err(EvalError::Domain(_))));
        assert!(matches!(parse("y^0.5").unwrap().evaluate(&b), Err(EvalError::Domain(_))));
        assert!(matches!(parse("sqrt(y)").unwrap().evaluate(&b), Err(EvalError::Domain(_))));
        assert!(matches!(parse("z^(-1)").unwrap().evaluate(&b), Err(EvalError::Domain(_))));
        assert!(matches!(parse("exp(1000)").unwrap().evaluate(&b), Err(EvalError::Domain(_))));
        assert_eq!(parse("q").unwrap().evaluate(&b), Err(EvalError::Unbound("q".into())));
        // integer powers of negative bases are fine
        assert_eq!(parse("y^3").unwrap().evaluate(&b).unwrap(), -1.0);
    }
}
