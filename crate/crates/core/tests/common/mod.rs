#![allow(dead_code)]

use liesym::expr::{self, Bindings, Chart, Expr, SamplingDomain};
use liesym::liealg::{Algebra, AlgebraElement};
use liesym::odesys::{Mat2, OdeSystem};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonsingular `P` with condition number below about 20.
pub fn random_p(rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let p = Mat2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let cond = p.norm().powi(2) / p.det().abs();
        if p.det().abs() > 0.3 && cond < 20.0 {
            return p;
        }
    }
}

/// The domain whose points are `P` applied to the points of `dom`.
pub fn image_domain(dom: &SamplingDomain, p: &Mat2) -> SamplingDomain {
    let pi = p.inverse().expect("nonsingular");
    let mut out = dom.clone();
    let (cy, cz) = match &dom.chart {
        Some(c) => (c.y.clone(), c.z.clone()),
        None => {
            let (ylo, yhi) = out.intervals.remove("y").unwrap();
            let (zlo, zhi) = out.intervals.remove("z").unwrap();
            out.intervals.insert("y_pre".into(), (ylo, yhi));
            out.intervals.insert("z_pre".into(), (zlo, zhi));
            (Expr::sym("y_pre"), Expr::sym("z_pre"))
        }
    };
    out.chart = Some(Chart {
        y: (Expr::num(p.a11) * cy.clone() + Expr::num(p.a12) * cz.clone()).fold_constants(),
        z: (Expr::num(p.a21) * cy + Expr::num(p.a22) * cz).fold_constants(),
    });
    let (y, z) = (Expr::sym(expr::Y), Expr::sym(expr::Z));
    let y_old = Expr::num(pi.a11) * y.clone() + Expr::num(pi.a12) * z.clone();
    let z_old = Expr::num(pi.a21) * y + Expr::num(pi.a22) * z;
    out.excluded = dom.excluded.iter().map(|l| l.substitute(&[(expr::Y, &y_old), (expr::Z, &z_old)])).collect();
    out
}

/// Random element of the given algebra with frequent exact degeneracies
/// (zeroed coordinates, `c5 = c6`), so every family is reached.
pub fn random_element(rng: &mut ChaCha8Rng, algebra: Algebra) -> AlgebraElement {
    let first = match algebra {
        Algebra::L4 => 5,
        Algebra::L6 => 3,
        Algebra::L8 => 1,
    };
    let mut c = [0.0; 8];
    for slot in c.iter_mut().skip(first - 1) {
        if rng.gen_bool(0.7) {
            *slot = rng.gen_range(-2.0..2.0);
        }
    }
    if rng.gen_bool(0.3) {
        c[5] = c[4];
    }
    if rng.gen_bool(0.15) {
        c[6] = -c[7];
    }
    AlgebraElement::new(c)
}

/// `y'' = F`, `z'' = G` from `(y, z, y', z')` at `x0` to `x1`, classical RK4.
pub fn rk4(sys: &OdeSystem, x0: f64, x1: f64, state: [f64; 4], steps: usize) -> [f64; 4] {
    let rhs = |x: f64, s: [f64; 4]| {
        let b = sys.params.clone().with("x", x).with("y", s[0]).with("z", s[1]);
        [s[2], s[3], sys.f.evaluate(&b).unwrap(), sys.g.evaluate(&b).unwrap()]
    };
    let h = (x1 - x0) / steps as f64;
    let axpy = |s: [f64; 4], k: [f64; 4], t: f64| std::array::from_fn::<f64, 4, _>(|i| s[i] + t * k[i]);
    let mut s = state;
    for n in 0..steps {
        let x = x0 + n as f64 * h;
        let k1 = rhs(x, s);
        let k2 = rhs(x + h / 2.0, axpy(s, k1, h / 2.0));
        let k3 = rhs(x + h / 2.0, axpy(s, k2, h / 2.0));
        let k4 = rhs(x + h, axpy(s, k3, h));
        s = std::array::from_fn(|i| s[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
    }
    s
}

pub fn eval_x(e: &Expr, x: f64) -> f64 {
    e.evaluate(&Bindings::new().with("x", x)).unwrap()
}
