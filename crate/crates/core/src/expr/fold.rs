use super::eval::{apply, power};
use super::Expr;

impl Expr {
    /// Collapse constant subtrees and apply the neutral-element rules
    /// (`0*e -> 0`, `1*e -> e`, `e + 0 -> e`, `e^1 -> e`, `e^0 -> 1`).
    ///
    /// Nested sums and products are flattened; the folded constant of a sum
    /// goes last and that of a product goes first. The result is a fixed
    /// point: folding it again returns the same tree.
    pub fn fold_constants(&self) -> Expr {
        match self {
            Expr::Const(_) | Expr::Sym(_) => self.clone(),
            Expr::Neg(a) => match a.fold_constants() {
                Expr::Const(v) => Expr::Const(-v),
                Expr::Neg(inner) => *inner,
                other => Expr::Neg(Box::new(other)),
            },
            Expr::Sum(terms) => {
                let mut konst = 0.0;
                let mut saw_const = false;
                let mut rest = Vec::with_capacity(terms.len());
                let mut push = |t: Expr, konst: &mut f64, saw: &mut bool| match t {
                    Expr::Const(v) => {
                        *konst += v;
                        *saw = true;
                    }
                    other => rest.push(other),
                };
                for t in terms {
                    match t.fold_constants() {
                        Expr::Sum(inner) => {
                            for i in inner {
                                push(i, &mut konst, &mut saw_const);
                            }
                        }
                        other => push(other, &mut konst, &mut saw_const),
                    }
                }
                if rest.is_empty() {
                    return Expr::Const(if saw_const { konst } else { 0.0 });
                }
                if konst != 0.0 {
                    rest.push(Expr::Const(konst));
                }
                if rest.len() == 1 {
                    rest.pop().unwrap()
                } else {
                    Expr::Sum(rest)
                }
            }
            Expr::Product(factors) => {
                let mut konst = 1.0;
                let mut rest = Vec::with_capacity(factors.len());
                for t in factors {
                    match t.fold_constants() {
                        Expr::Product(inner) => {
                            for i in inner {
                                match i {
                                    Expr::Const(v) => konst *= v,
                                    other => rest.push(other),
                                }
                            }
                        }
                        Expr::Const(v) => konst *= v,
                        other => rest.push(other),
                    }
                }
                if konst == 0.0 {
                    return Expr::Const(0.0);
                }
                if rest.is_empty() {
                    return Expr::Const(konst);
                }
                if konst != 1.0 {
                    rest.insert(0, Expr::Const(konst));
                }
                if rest.len() == 1 {
                    rest.pop().unwrap()
                } else {
                    Expr::Product(rest)
                }
            }
            Expr::Quotient(n, d) => {
                let n = n.fold_constants();
                let d = d.fold_constants();
                if d.is_one() {
                    return n;
                }
                if n.is_zero() && !d.is_zero() {
                    return Expr::Const(0.0);
                }
                if let (Expr::Const(a), Expr::Const(b)) = (&n, &d) {
                    if *b != 0.0 && (a / b).is_finite() {
                        return Expr::Const(a / b);
                    }
                }
                Expr::Quotient(Box::new(n), Box::new(d))
            }
            Expr::Power(a, b) => {
                let a = a.fold_constants();
                let b = b.fold_constants();
                if b.is_one() {
                    return a;
                }
                if b.is_zero() || a.is_one() {
                    return Expr::Const(1.0);
                }
                if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
                    if let Ok(v) = power(*x, *y) {
                        return Expr::Const(v);
                    }
                }
                Expr::Power(Box::new(a), Box::new(b))
            }
            Expr::Call(f, args) => {
                let args: Vec<Expr> = args.iter().map(|a| a.fold_constants()).collect();
                let consts: Option<Vec<f64>> = args.iter().map(|a| a.as_const()).collect();
                if let Some(vals) = consts {
                    if let Ok(v) = apply(*f, &vals) {
                        return Expr::Const(v);
                    }
                }
                Expr::Call(*f, args)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse;

    fn folded(s: &str) -> String {
        parse(s).unwrap().fold_constants().to_string()
    }

    #[test]
    fn documented_rules() {
        assert_eq!(folded("2*3*y"), "6*y");
        assert_eq!(folded("y + 0"), "y");
        assert_eq!(folded("(1-1)*exp(x)"), "0");
        assert_eq!(folded("y^1"), "y");
        assert_eq!(folded("1*y"), "y");
        assert_eq!(folded("(y + 2) + (3 + z)"), "y + z + 5");
        assert_eq!(folded("--y"), "y");
        assert_eq!(folded("sqrt(4) + ln(1)"), "2");
        assert_eq!(folded("y/1"), "y");
        assert_eq!(folded("0/y"), "0");
    }

    #[test]
    fn leaves_invalid_constants_alone() {
        assert_eq!(folded("ln(0-1)"), "ln(-1)");
        assert_eq!(folded("1/0"), "1/0");
    }

    #[test]
    fn idempotent_on_samples() {
        for s in ["2*(3*(y*4))", "x + (y + (z + 1)) - 1", "(y*1)^(2-1)*z^0", "-(2*-y)"] {
            let once = parse(s).unwrap().fold_constants();
            assert_eq!(once.fold_constants(), once, "{s}");
        }
    }
}
