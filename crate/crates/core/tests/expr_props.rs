//! Property tests for the expression layer against a reference evaluator
//! that works on the generating tree, never on the parsed `Expr`.

use liesym::expr::{self, evaluate_with_scale, Bindings, Expr, SamplingDomain};
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Node {
    Num(f64),
    Var(&'static str),
    /// first operand, then (subtract?, operand)
    Sum(Box<Node>, Vec<(bool, Node)>),
    /// first operand, then (divide?, operand)
    Term(Box<Node>, Vec<(bool, Node)>),
    Pow(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Call(&'static str, Vec<Node>),
}

fn atomic(n: &Node) -> bool {
    matches!(n, Node::Num(_) | Node::Var(_) | Node::Call(..))
}

fn render(n: &Node) -> String {
    let wrap = |n: &Node| if atomic(n) { render(n) } else { format!("({})", render(n)) };
    match n {
        Node::Num(v) => format!("{v}"),
        Node::Var(s) => s.to_string(),
        Node::Sum(first, rest) => {
            let op = |n: &Node| if matches!(n, Node::Sum(..)) { format!("({})", render(n)) } else { render(n) };
            let mut s = op(first);
            for (minus, t) in rest {
                s.push_str(if *minus { " - " } else { " + " });
                s.push_str(&op(t));
            }
            s
        }
        Node::Term(first, rest) => {
            let op = |n: &Node| if matches!(n, Node::Sum(..) | Node::Term(..)) { format!("({})", render(n)) } else { render(n) };
            let mut s = op(first);
            for (div, t) in rest {
                s.push_str(if *div { "/" } else { "*" });
                s.push_str(&op(t));
            }
            s
        }
        Node::Pow(b, e) => format!("{}^{}", wrap(b), wrap(e)),
        Node::Neg(a) => format!("-({})", render(a)),
        Node::Call(f, args) => {
            let a: Vec<String> = args.iter().map(render).collect();
            format!("{f}({})", a.join(", "))
        }
    }
}

fn ok(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn reference_power(b: f64, e: f64) -> Option<f64> {
    if b == 0.0 && e < 0.0 {
        return None;
    }
    if e.fract() == 0.0 && e.abs() <= i32::MAX as f64 {
        ok(b.powi(e as i32))
    } else if b < 0.0 {
        None
    } else {
        ok(b.powf(e))
    }
}

fn reference(n: &Node, p: &[(&str, f64)]) -> Option<f64> {
    match n {
        Node::Num(v) => Some(*v),
        Node::Var(s) => p.iter().find(|(k, _)| k == s).map(|(_, v)| *v),
        Node::Sum(first, rest) => {
            let mut acc = reference(first, p)?;
            for (minus, t) in rest {
                let v = reference(t, p)?;
                acc = if *minus { acc - v } else { acc + v };
            }
            ok(acc)
        }
        Node::Term(first, rest) => {
            let mut acc = reference(first, p)?;
            for (div, t) in rest {
                let v = reference(t, p)?;
                if *div {
                    if v == 0.0 || !acc.is_finite() {
                        return None;
                    }
                    acc /= v;
                } else {
                    acc *= v;
                }
            }
            ok(acc)
        }
        Node::Pow(b, e) => reference_power(reference(b, p)?, reference(e, p)?),
        Node::Neg(a) => Some(-reference(a, p)?),
        Node::Call(f, args) => {
            let a = reference(&args[0], p)?;
            let v = match *f {
                "sin" => a.sin(),
                "cos" => a.cos(),
                "exp" => a.exp(),
                "ln" if a > 0.0 => a.ln(),
                "sqrt" if a >= 0.0 => a.sqrt(),
                "atan" => a.atan(),
                "atan2" => {
                    let b = reference(&args[1], p)?;
                    if a == 0.0 && b == 0.0 {
                        return None;
                    }
                    a.atan2(b)
                }
                _ => return None,
            };
            ok(v)
        }
    }
}

fn var() -> impl Strategy<Value = Node> {
    prop::sample::select(vec!["x", "y", "z", "k"]).prop_map(Node::Var)
}

fn node() -> impl Strategy<Value = Node> {
    let leaf = prop_oneof![prop::sample::select(vec![0.5, 1.0, 2.0, 3.0, 1.7, 0.3, 4.25]).prop_map(Node::Num), var()];
    tree(leaf.boxed(), true)
}

fn tree(leaf: BoxedStrategy<Node>, numeric_exponents: bool) -> impl Strategy<Value = Node> {
    leaf.prop_recursive(4, 40, 3, move |inner| {
        let exponent = if numeric_exponents {
            prop_oneof![prop::sample::select(vec![2.0, 3.0, 0.5, 1.5]).prop_map(Node::Num), inner.clone()].boxed()
        } else {
            inner.clone()
        };
        prop_oneof![
            (inner.clone(), prop::collection::vec((any::<bool>(), inner.clone()), 1..4))
                .prop_map(|(a, r)| Node::Sum(Box::new(a), r)),
            (inner.clone(), prop::collection::vec((any::<bool>(), inner.clone()), 1..4))
                .prop_map(|(a, r)| Node::Term(Box::new(a), r)),
            (inner.clone(), exponent).prop_map(|(b, e)| Node::Pow(Box::new(b), Box::new(e))),
            inner.clone().prop_map(|a| Node::Neg(Box::new(a))),
            (prop::sample::select(vec!["sin", "cos", "exp", "ln", "sqrt", "atan"]), inner.clone())
                .prop_map(|(f, a)| Node::Call(f, vec![a])),
            (inner.clone(), inner).prop_map(|(a, b)| Node::Call("atan2", vec![a, b])),
        ]
    })
}

fn point() -> impl Strategy<Value = [(&'static str, f64); 4]> {
    (0.2..3.0f64, 0.2..3.0f64, 0.2..3.0f64, -2.0..2.0f64).prop_map(|(x, y, z, k)| [("x", x), ("y", y), ("z", z), ("k", k)])
}

fn bindings(p: &[(&str, f64)]) -> Bindings {
    p.iter().copied().collect()
}

fn dom(seed: u64) -> SamplingDomain {
    SamplingDomain::new().interval("x", 0.2, 3.0).param("k", 0.7).samples(100).seed(seed)
}

/// Sample points of `dom` with the parameter `k` filled in.
fn sample_points(seed: u64) -> Vec<Bindings> {
    dom(seed).points().unwrap().into_iter().map(|p| p.bindings().clone().with("k", 0.7)).collect()
}

/// A sum inside a sum or a product inside a product: folding flattens these.
fn reassociates(e: &Expr) -> bool {
    let nested = match e {
        Expr::Sum(t) => t.iter().any(|c| matches!(c, Expr::Sum(_))),
        Expr::Product(t) => t.iter().any(|c| matches!(c, Expr::Product(_))),
        _ => false,
    };
    nested || e.children().into_iter().any(reassociates)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn evaluator_matches_reference_bitwise(n in node(), p in point()) {
        let text = render(&n);
        let e = expr::parse(&text).unwrap();
        let got = e.evaluate(&bindings(&p)).ok();
        let want = reference(&n, &p);
        prop_assert_eq!(got.map(f64::to_bits), want.map(f64::to_bits), "{} at {:?}", text, p);
    }

    #[test]
    fn print_parse_round_trip(n in node()) {
        let e = expr::parse(&render(&n)).unwrap();
        let shown = e.to_string();
        prop_assert_eq!(expr::parse(&shown).unwrap(), e, "{}", shown);
    }

    #[test]
    fn fold_preserves_value(n in node(), p in point()) {
        let e = expr::parse(&render(&n)).unwrap();
        let b = bindings(&p);
        if let Ok((v, scale)) = evaluate_with_scale(&e, &b) {
            let folded = e.fold_constants().evaluate(&b);
            prop_assert!(folded.is_ok(), "{} folded to {} fails: {:?}", e, e.fold_constants(), folded);
            let w = folded.unwrap();
            prop_assert!((v - w).abs() <= 1e-12 * (1.0 + v.abs().max(scale)), "{} = {} but folded {} = {}", e, v, e.fold_constants(), w);
        }
    }

    #[test]
    fn fold_is_exact_without_constants(n in tree(var().boxed(), false), p in point()) {
        let e = expr::parse(&render(&n)).unwrap();
        prop_assume!(!reassociates(&e));
        let b = bindings(&p);
        prop_assert_eq!(e.evaluate(&b).ok().map(f64::to_bits), e.fold_constants().evaluate(&b).ok().map(f64::to_bits), "{}", e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differentiation_is_linear(n1 in node(), n2 in node(), a in -3.0..3.0f64, b in -3.0..3.0f64, seed in any::<u64>()) {
        let e1 = expr::parse(&render(&n1)).unwrap();
        let e2 = expr::parse(&render(&n2)).unwrap();
        let combo = Expr::Sum(vec![Expr::Product(vec![Expr::num(a), e1.clone()]), Expr::Product(vec![Expr::num(b), e2.clone()])]);
        for var in ["x", "y", "z"] {
            let lhs = combo.differentiate(var);
            let (d1, d2) = (e1.differentiate(var), e2.differentiate(var));
            for p in sample_points(seed) {
                let (Ok(l), Ok(v1), Ok(v2)) = (lhs.evaluate(&p), d1.evaluate(&p), d2.evaluate(&p)) else { continue };
                let r = a * v1 + b * v2;
                prop_assert!((l - r).abs() <= 1e-10 * (1.0 + (a * v1).abs() + (b * v2).abs()), "d/d{} at {:?}: {} vs {}", var, p, l, r);
            }
        }
    }

    #[test]
    fn derivative_matches_finite_differences(n in node(), p in point()) {
        let e = expr::parse(&render(&n)).unwrap();
        let d = e.differentiate("y");
        let y = p[1].1;
        let at = |t: f64| {
            let mut q = p;
            q[1].1 = t;
            e.evaluate(&bindings(&q)).ok()
        };
        let central = |h: f64| Some((at(y + h)? - at(y - h)?) / (2.0 * h));
        let Ok(dv) = d.evaluate(&bindings(&p)) else { return Ok(()) };
        let (Some(c1), Some(c2)) = (central(1e-4), central(5e-5)) else { return Ok(()) };
        // skip points where the difference quotient itself has not settled
        // (nearby poles, huge higher derivatives)
        let settled = (c1 - c2).abs() <= 1e-6 * (1.0 + c2.abs());
        if settled {
            let richardson = (4.0 * c2 - c1) / 3.0;
            prop_assert!((dv - richardson).abs() <= 1e-6 * (1.0 + dv.abs()), "{}: d/dy = {} vs {}", e, dv, richardson);
        }
    }
}

#[test]
fn derivative_closed_form() {
    // (y^3 e^y)' = (3y^2 + y^3) e^y
    let e = expr::parse("y^3*exp(y)").unwrap();
    let d = e.differentiate("y");
    for y in [0.3f64, 1.0, 2.5] {
        let want = (3.0 * y * y + y * y * y) * y.exp();
        let got = d.evaluate(&Bindings::new().with("y", y)).unwrap();
        assert!((got - want).abs() <= 1e-13 * want.abs());
    }
}
