//! Closed-form inversion of `t = phi(x)` when `x` occurs exactly once.

use crate::expr::{Expr, Func};

fn occurrences(e: &Expr, var: &str) -> usize {
    match e {
        Expr::Sym(s) => usize::from(&**s == var),
        _ => e.children().iter().map(|c| occurrences(c, var)).sum(),
    }
}

fn peel(e: &Expr, var: &str, rhs: Expr) -> Option<Expr> {
    match e {
        Expr::Sym(s) if &**s == var => Some(rhs),
        Expr::Sum(terms) => {
            let idx = terms.iter().position(|t| t.contains(var))?;
            let mut rest: Vec<Expr> = terms.clone();
            let inner = rest.remove(idx);
            peel(&inner, var, rhs - Expr::Sum(rest))
        }
        Expr::Product(factors) => {
            let idx = factors.iter().position(|t| t.contains(var))?;
            let mut rest: Vec<Expr> = factors.clone();
            let inner = rest.remove(idx);
            peel(&inner, var, rhs / Expr::Product(rest))
        }
        Expr::Quotient(n, d) => {
            if n.contains(var) {
                peel(n, var, rhs * (**d).clone())
            } else {
                peel(d, var, (**n).clone() / rhs)
            }
        }
        Expr::Neg(a) => peel(a, var, -rhs),
        Expr::Power(b, ex) => {
            if b.contains(var) {
                let k = ex.as_const()?;
                if k == 0.0 {
                    return None;
                }
                peel(b, var, rhs.powf(1.0 / k))
            } else {
                peel(ex, var, rhs.ln() / (**b).clone().ln())
            }
        }
        Expr::Call(f, args) => {
            let a = &args[0];
            match f {
                Func::Exp => peel(a, var, rhs.ln()),
                Func::Ln => peel(a, var, rhs.exp()),
                Func::Sqrt => peel(a, var, rhs.powf(2.0)),
                Func::Atan => peel(a, var, rhs.clone().sin() / rhs.cos()),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Solve `target = phi(var)` for `var`, as an expression in `target`.
///
/// Returns `None` unless `var` occurs exactly once and every node on the
/// path to it has an inverse in the grammar (sin, cos and atan2 do not).
/// Branch choices are the principal ones; callers verify the result.
pub fn invert(phi: &Expr, var: &str, target: &Expr) -> Option<Expr> {
    if occurrences(phi, var) != 1 {
        return None;
    }
    peel(phi, var, target.clone()).map(|e| e.fold_constants())
}
