use super::simplify::{add, cos, div, exp, mul, neg, pow, simplify, sin, sub};
use super::{Expr, Shift, Var};
use crate::numerics::{ONE, ZERO};

/// Exact partial derivative with respect to `v`, simplified.
pub fn differentiate(e: &Expr, v: Var) -> Expr {
    match e {
        Expr::Const(_) => Expr::Const(ZERO),
        Expr::Var(w) => Expr::Const(if *w == v { ONE } else { ZERO }),
        Expr::Add(a, b) => add(differentiate(a, v), differentiate(b, v)),
        Expr::Sub(a, b) => sub(differentiate(a, v), differentiate(b, v)),
        Expr::Mul(a, b) => {
            let a = simplify(a);
            let b = simplify(b);
            add(
                mul(differentiate(&a, v), b.clone()),
                mul(a.clone(), differentiate(&b, v)),
            )
        }
        Expr::Div(a, b) => {
            let a = simplify(a);
            let b = simplify(b);
            let numerator = sub(
                mul(differentiate(&a, v), b.clone()),
                mul(a.clone(), differentiate(&b, v)),
            );
            div(numerator, mul(b.clone(), b))
        }
        Expr::Neg(a) => neg(differentiate(a, v)),
        Expr::Exp(a) => {
            let a = simplify(a);
            mul(exp(a.clone()), differentiate(&a, v))
        }
        Expr::Sin(a) => {
            let a = simplify(a);
            mul(cos(a.clone()), differentiate(&a, v))
        }
        Expr::Cos(a) => {
            let a = simplify(a);
            neg(mul(sin(a.clone()), differentiate(&a, v)))
        }
        Expr::Pow(a, p) => {
            let a = simplify(a);
            let outer = mul(Expr::Const(*p), pow(a.clone(), *p - ONE));
            mul(outer, differentiate(&a, v))
        }
    }
}

/// `e(z1 + c1, z2 + c2)`, simplified.
pub fn shift(e: &Expr, s: Shift) -> Expr {
    simplify(&substitute(e, s))
}

fn substitute(e: &Expr, s: Shift) -> Expr {
    let rec = |x: &Expr| substitute(x, s);
    match e {
        Expr::Const(_) => e.clone(),
        Expr::Var(Var::Z1) => Expr::z1() + Expr::Const(s.c1),
        Expr::Var(Var::Z2) => Expr::z2() + Expr::Const(s.c2),
        Expr::Add(a, b) => rec(a) + rec(b),
        Expr::Sub(a, b) => rec(a) - rec(b),
        Expr::Mul(a, b) => rec(a) * rec(b),
        Expr::Div(a, b) => rec(a) / rec(b),
        Expr::Neg(a) => -rec(a),
        Expr::Exp(a) => rec(a).exp(),
        Expr::Sin(a) => rec(a).sin(),
        Expr::Cos(a) => rec(a).cos(),
        Expr::Pow(a, p) => rec(a).pow(*p),
    }
}
