//! Expression trees over variables and named parameters.
//!
//! An [`Expr`] is an immutable tree built either by [`parse`] or by the
//! arithmetic operator impls. The reserved variables are `x` (independent
//! variable), `y`, `z` (dependent variables) and `yp`, `zp` (their first
//! derivatives). Every other symbol is a parameter that must be bound at
//! evaluation time.
//!
//! There is no canonical simplifier. Identities are decided numerically with
//! [`is_zero_numeric`] over a [`SamplingDomain`].

mod diff;
mod eval;
mod fold;
mod parse;
mod print;
mod sample;

use std::collections::BTreeSet;
use std::fmt;
use std::ops;
use std::sync::Arc;

pub use eval::{Bindings, EvalError};
pub use parse::{parse, ParseError};
pub use sample::{
    evaluate_with_scale, is_zero_numeric, zero_test, Chart, Point, SampleError, SamplingDomain,
    ZeroVerdict, DEFAULT_SEED,
};

/// Name of the independent variable.
pub const X: &str = "x";
/// First dependent variable.
pub const Y: &str = "y";
/// Second dependent variable.
pub const Z: &str = "z";
/// First derivative of `y`.
pub const YP: &str = "yp";
/// First derivative of `z`.
pub const ZP: &str = "zp";

/// Reserved variable names, in canonical order.
pub const VARIABLES: [&str; 5] = [X, Y, Z, YP, ZP];

/// Builtin functions callable from the expression grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
    Atan,
    /// `atan2(num, den)`, the angle of the point `(den, num)`.
    Atan2,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Atan => "atan",
            Func::Atan2 => "atan2",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "atan" => Func::Atan,
            "atan2" => Func::Atan2,
            _ => return None,
        })
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Atan2 => 2,
            _ => 1,
        }
    }
}

/// Expression tree node.
///
/// `Sum` and `Product` are n-ary; subtraction is a `Sum` with a negated term.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Sym(Arc<str>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Quotient(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Call(Func, Vec<Expr>),
}

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Const(v)
    }

    pub fn zero() -> Expr {
        Expr::Const(0.0)
    }

    pub fn one() -> Expr {
        Expr::Const(1.0)
    }

    pub fn sym(name: &str) -> Expr {
        Expr::Sym(Arc::from(name))
    }

    pub fn pow(self, exponent: Expr) -> Expr {
        Expr::Power(Box::new(self), Box::new(exponent))
    }

    pub fn powf(self, exponent: f64) -> Expr {
        self.pow(Expr::Const(exponent))
    }

    pub fn call(f: Func, args: Vec<Expr>) -> Expr {
        debug_assert_eq!(f.arity(), args.len());
        Expr::Call(f, args)
    }

    pub fn sin(self) -> Expr {
        Expr::Call(Func::Sin, vec![self])
    }

    pub fn cos(self) -> Expr {
        Expr::Call(Func::Cos, vec![self])
    }

    pub fn exp(self) -> Expr {
        Expr::Call(Func::Exp, vec![self])
    }

    pub fn ln(self) -> Expr {
        Expr::Call(Func::Ln, vec![self])
    }

    pub fn sqrt(self) -> Expr {
        Expr::Call(Func::Sqrt, vec![self])
    }

    pub fn atan(self) -> Expr {
        Expr::Call(Func::Atan, vec![self])
    }

    pub fn atan2(num: Expr, den: Expr) -> Expr {
        Expr::Call(Func::Atan2, vec![num, den])
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(v) if *v == 0.0)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Const(v) if *v == 1.0)
    }

    /// Immediate children, in order.
    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Const(_) | Expr::Sym(_) => Vec::new(),
            Expr::Sum(v) | Expr::Product(v) | Expr::Call(_, v) => v.iter().collect(),
            Expr::Quotient(a, b) | Expr::Power(a, b) => vec![a, b],
            Expr::Neg(a) => vec![a],
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// All symbol names occurring in the tree.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Sym(s) => {
                out.insert(s.to_string());
            }
            _ => {
                for c in self.children() {
                    c.collect_symbols(out);
                }
            }
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        match self {
            Expr::Sym(s) => &**s == name,
            _ => self.children().iter().any(|c| c.contains(name)),
        }
    }

    pub fn contains_any(&self, names: &[&str]) -> bool {
        names.iter().any(|n| self.contains(n))
    }

    /// Simultaneous substitution of symbols by expressions.
    pub fn substitute(&self, map: &[(&str, &Expr)]) -> Expr {
        match self {
            Expr::Sym(s) => match map.iter().find(|(n, _)| *n == &**s) {
                Some((_, e)) => (*e).clone(),
                None => self.clone(),
            },
            Expr::Const(_) => self.clone(),
            Expr::Sum(v) => Expr::Sum(v.iter().map(|c| c.substitute(map)).collect()),
            Expr::Product(v) => Expr::Product(v.iter().map(|c| c.substitute(map)).collect()),
            Expr::Call(f, v) => Expr::Call(*f, v.iter().map(|c| c.substitute(map)).collect()),
            Expr::Quotient(a, b) => {
                Expr::Quotient(Box::new(a.substitute(map)), Box::new(b.substitute(map)))
            }
            Expr::Power(a, b) => {
                Expr::Power(Box::new(a.substitute(map)), Box::new(b.substitute(map)))
            }
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(map))),
        }
    }

    /// Substitute parameter values by constants.
    pub fn bind_constants(&self, values: &[(&str, f64)]) -> Expr {
        let exprs: Vec<(&str, Expr)> = values.iter().map(|(n, v)| (*n, Expr::Const(*v))).collect();
        let map: Vec<(&str, &Expr)> = exprs.iter().map(|(n, e)| (*n, e)).collect();
        self.substitute(&map)
    }
}

impl From<f64> for Expr {
    fn from(v: f64) -> Self {
        Expr::Const(v)
    }
}

impl From<&str> for Expr {
    fn from(name: &str) -> Self {
        Expr::sym(name)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_expr(f, self)
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Sum(vec![self, rhs])
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sum(vec![self, Expr::Neg(Box::new(rhs))])
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Product(vec![self, rhs])
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Quotient(Box::new(self), Box::new(rhs))
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl ops::Mul<Expr> for f64 {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Product(vec![Expr::Const(self), rhs])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_is_simultaneous() {
        let e = parse("y + 2*z").unwrap();
        let swapped = e.substitute(&[("y", &Expr::sym("z")), ("z", &Expr::sym("y"))]);
        assert_eq!(swapped, parse("z + 2*y").unwrap());
    }

    #[test]
    fn symbols_are_collected() {
        let e = parse("exp(4*alpha*atan2(z,y))*(y^2+z^2)^(-2)").unwrap();
        let names: Vec<String> = e.symbols().into_iter().collect();
        assert_eq!(names, vec!["alpha", "y", "z"]);
        assert!(e.contains("alpha"));
        assert!(!e.contains("x"));
    }
}
