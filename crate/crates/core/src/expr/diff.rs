use super::{Expr, Func};

fn raw_derivative(e: &Expr, var: &str) -> Expr {
    if !e.contains(var) {
        return Expr::zero();
    }
    match e {
        Expr::Const(_) => Expr::zero(),
        Expr::Sym(s) => {
            if &**s == var {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Expr::Sum(terms) => Expr::Sum(
            terms.iter().filter(|t| t.contains(var)).map(|t| raw_derivative(t, var)).collect(),
        ),
        Expr::Product(factors) => {
            let mut terms = Vec::new();
            for (i, f) in factors.iter().enumerate() {
                if !f.contains(var) {
                    continue;
                }
                let mut prod = Vec::with_capacity(factors.len());
                for (j, g) in factors.iter().enumerate() {
                    if i == j {
                        prod.push(raw_derivative(f, var));
                    } else {
                        prod.push(g.clone());
                    }
                }
                terms.push(Expr::Product(prod));
            }
            Expr::Sum(terms)
        }
        Expr::Quotient(n, d) => {
            let dn = raw_derivative(n, var);
            if !d.contains(var) {
                return dn / (**d).clone();
            }
            let dd = raw_derivative(d, var);
            let num = dn * (**d).clone() - (**n).clone() * dd;
            num / (**d).clone().powf(2.0)
        }
        Expr::Power(base, exponent) => {
            let base = (**base).clone();
            let exponent = (**exponent).clone();
            if !exponent.contains(var) {
                let lowered = match &exponent {
                    Expr::Const(c) => Expr::Const(c - 1.0),
                    other => other.clone() - Expr::one(),
                };
                let db = raw_derivative(&base, var);
                return Expr::Product(vec![exponent, base.pow(lowered), db]);
            }
            let whole = base.clone().pow(exponent.clone());
            let de = raw_derivative(&exponent, var);
            if !base.contains(var) {
                return Expr::Product(vec![whole, base.ln(), de]);
            }
            let db = raw_derivative(&base, var);
            let inner = de * base.clone().ln() + exponent * db / base;
            whole * inner
        }
        Expr::Neg(a) => -raw_derivative(a, var),
        Expr::Call(func, args) => {
            let u = args[0].clone();
            let du = raw_derivative(&args[0], var);
            match func {
                Func::Sin => u.cos() * du,
                Func::Cos => -(u.sin() * du),
                Func::Exp => u.exp() * du,
                Func::Ln => du / u,
                Func::Sqrt => du / (Expr::num(2.0) * u.sqrt()),
                Func::Atan => du / (Expr::one() + u.powf(2.0)),
                Func::Atan2 => {
                    // d atan2(n, d) = (d n' - n d') / (n^2 + d^2)
                    let den = args[1].clone();
                    let dden = raw_derivative(&args[1], var);
                    let num = den.clone() * du - u.clone() * dden;
                    num / (u.powf(2.0) + den.powf(2.0))
                }
            }
        }
    }
}

impl Expr {
    /// Exact symbolic derivative with respect to `var`, constant-folded.
    ///
    /// Every other symbol is treated as independent of `var`.
    pub fn differentiate(&self, var: &str) -> Expr {
        raw_derivative(self, var).fold_constants()
    }
}
