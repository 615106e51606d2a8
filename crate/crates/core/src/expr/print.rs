//! Printing in the same grammar [`super::parse`] accepts.
//!
//! Parentheses are inserted wherever dropping them would make the parser
//! build a different tree, so `parse(print(e)) == e` for parser-built trees.

use super::Expr;
use std::fmt::{self, Write};

fn is_negative_const(e: &Expr) -> bool {
    matches!(e, Expr::Const(v) if v.is_sign_negative())
}

fn write_paren(f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool) -> fmt::Result {
    if paren {
        f.write_char('(')?;
        write_expr(f, e)?;
        f.write_char(')')
    } else {
        write_expr(f, e)
    }
}

/// Operand of a unary minus: anything looser than a power needs parentheses.
fn needs_paren_under_neg(e: &Expr) -> bool {
    matches!(e, Expr::Sum(_) | Expr::Product(_) | Expr::Quotient(..))
}

pub(super) fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Const(v) => write!(f, "{v}"),
        Expr::Sym(s) => f.write_str(s),
        Expr::Sum(terms) => {
            for (i, t) in terms.iter().enumerate() {
                if i == 0 {
                    write_paren(f, t, matches!(t, Expr::Sum(_)))?;
                    continue;
                }
                match t {
                    Expr::Neg(inner) => {
                        f.write_str(" - ")?;
                        write_paren(f, inner, matches!(**inner, Expr::Sum(_)))?;
                    }
                    Expr::Const(v) if v.is_sign_negative() => write!(f, " - {}", -v)?,
                    _ => {
                        f.write_str(" + ")?;
                        write_paren(f, t, matches!(t, Expr::Sum(_)))?;
                    }
                }
            }
            Ok(())
        }
        Expr::Product(factors) => {
            for (i, t) in factors.iter().enumerate() {
                if i > 0 {
                    f.write_str("*")?;
                }
                let paren = match t {
                    Expr::Sum(_) | Expr::Product(_) => true,
                    Expr::Quotient(..) => i > 0,
                    _ => false,
                };
                write_paren(f, t, paren)?;
            }
            Ok(())
        }
        Expr::Quotient(a, b) => {
            write_paren(f, a, matches!(**a, Expr::Sum(_)))?;
            f.write_str("/")?;
            write_paren(f, b, matches!(**b, Expr::Sum(_) | Expr::Product(_) | Expr::Quotient(..)))
        }
        Expr::Power(a, b) => {
            let base_paren = matches!(
                **a,
                Expr::Sum(_) | Expr::Product(_) | Expr::Quotient(..) | Expr::Neg(_) | Expr::Power(..)
            ) || is_negative_const(a);
            write_paren(f, a, base_paren)?;
            f.write_str("^")?;
            write_paren(f, b, matches!(**b, Expr::Sum(_) | Expr::Product(_) | Expr::Quotient(..)))
        }
        Expr::Neg(a) => {
            f.write_char('-')?;
            // `-(3)` would re-parse as the constant -3; keep the node explicit
            let paren = needs_paren_under_neg(a) || matches!(**a, Expr::Const(_));
            write_paren(f, a, paren)
        }
        Expr::Call(func, args) => {
            f.write_str(func.name())?;
            f.write_char('(')?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write_expr(f, a)?;
            }
            f.write_char(')')
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse;

    #[test]
    fn prints_readably() {
        for (src, shown) in [
            ("y^(-3)", "y^-3"),
            ("a - b + -3", "a - b - 3"),
            ("-(a+b)*c", "-(a + b)*c"),
            ("exp(4*alpha*atan2(z,y))*(y^2+z^2)^(-2)", "exp(4*alpha*atan2(z, y))*(y^2 + z^2)^-2"),
            ("(a/b)*(c/d)", "a/b*(c/d)"),
        ] {
            let e = parse(src).unwrap();
            assert_eq!(e.to_string(), shown);
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src}");
        }
    }
}
