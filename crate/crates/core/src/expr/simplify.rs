//! Local rewriting: constant folding, additive and multiplicative identities,
//! double negation. No trig or exponential identities are applied.

use std::sync::Arc;

use super::Expr;
use crate::numerics::{is_finite, principal_power, ComplexScalar, ONE, ZERO};

/// Bottom-up rebuild through the smart constructors below.
pub fn simplify(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::Var(_) => e.clone(),
        Expr::Add(a, b) => add(simplify(a), simplify(b)),
        Expr::Sub(a, b) => sub(simplify(a), simplify(b)),
        Expr::Mul(a, b) => mul(simplify(a), simplify(b)),
        Expr::Div(a, b) => div(simplify(a), simplify(b)),
        Expr::Neg(a) => neg(simplify(a)),
        Expr::Exp(a) => exp(simplify(a)),
        Expr::Sin(a) => sin(simplify(a)),
        Expr::Cos(a) => cos(simplify(a)),
        Expr::Pow(a, p) => pow(simplify(a), *p),
    }
}

fn fold(v: ComplexScalar, otherwise: impl FnOnce() -> Expr) -> Expr {
    if is_finite(v) {
        Expr::Const(v)
    } else {
        otherwise()
    }
}

fn is(e: &Expr, v: ComplexScalar) -> bool {
    e.as_const() == Some(v)
}

pub(crate) fn add(a: Expr, b: Expr) -> Expr {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) => fold(x + y, || Expr::Add(Arc::new(a), Arc::new(b))),
        (Some(x), _) if x == ZERO => b,
        (_, Some(y)) if y == ZERO => a,
        _ => Expr::Add(Arc::new(a), Arc::new(b)),
    }
}

pub(crate) fn sub(a: Expr, b: Expr) -> Expr {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) => fold(x - y, || Expr::Sub(Arc::new(a), Arc::new(b))),
        (Some(x), _) if x == ZERO => neg(b),
        (_, Some(y)) if y == ZERO => a,
        _ => Expr::Sub(Arc::new(a), Arc::new(b)),
    }
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) => fold(x * y, || Expr::Mul(Arc::new(a), Arc::new(b))),
        (Some(x), _) | (_, Some(x)) if x == ZERO => Expr::Const(ZERO),
        (Some(x), _) if x == ONE => b,
        (_, Some(y)) if y == ONE => a,
        (Some(x), _) if x == -ONE => neg(b),
        (_, Some(y)) if y == -ONE => neg(a),
        _ => Expr::Mul(Arc::new(a), Arc::new(b)),
    }
}

pub(crate) fn div(a: Expr, b: Expr) -> Expr {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) if y != ZERO => fold(x / y, || Expr::Div(Arc::new(a), Arc::new(b))),
        (_, Some(y)) if y == ONE => a,
        _ => Expr::Div(Arc::new(a), Arc::new(b)),
    }
}

pub(crate) fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(x) => Expr::Const(-x),
        Expr::Neg(inner) => Arc::unwrap_or_clone(inner),
        other => Expr::Neg(Arc::new(other)),
    }
}

pub(crate) fn exp(a: Expr) -> Expr {
    match a.as_const() {
        Some(x) => fold(x.exp(), || Expr::Exp(Arc::new(a))),
        None => Expr::Exp(Arc::new(a)),
    }
}

pub(crate) fn sin(a: Expr) -> Expr {
    match a.as_const() {
        Some(x) => fold(x.sin(), || Expr::Sin(Arc::new(a))),
        None => Expr::Sin(Arc::new(a)),
    }
}

pub(crate) fn cos(a: Expr) -> Expr {
    match a.as_const() {
        Some(x) => fold(x.cos(), || Expr::Cos(Arc::new(a))),
        None => Expr::Cos(Arc::new(a)),
    }
}

pub(crate) fn pow(a: Expr, p: ComplexScalar) -> Expr {
    if p == ZERO {
        return Expr::Const(ONE);
    }
    if p == ONE {
        return a;
    }
    if is(&a, ONE) {
        return a;
    }
    match a.as_const().map(|x| principal_power(x, p)) {
        Some(Ok(v)) => Expr::Const(v),
        _ => Expr::Pow(Arc::new(a), p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn identities() {
        assert_eq!(simplify(&(Expr::real(0.0) + Expr::z1())), Expr::z1());
        assert_eq!(
            simplify(&(Expr::real(1.0) * Expr::z2().sin())),
            Expr::z2().sin()
        );
        assert_eq!(simplify(&-(-Expr::z1())), Expr::z1());
        assert_eq!(simplify(&parse("2*3 + z1*0").unwrap()), Expr::real(6.0));
        assert_eq!(simplify(&parse("z1^0").unwrap()), Expr::real(1.0));
    }

    #[test]
    fn idempotent_on_samples() {
        for text in [
            "exp(-(z1+z2)) * 1 + 0",
            "-(-(sin(z1*0 + z2)))",
            "(1+2)*z1 - 0*cos(z2) + (z1/1)^1",
            "0 - z2 + -(3)",
        ] {
            let once = simplify(&parse(text).unwrap());
            assert_eq!(simplify(&once), once, "{text}");
        }
    }

    #[test]
    fn keeps_division_by_zero_unfolded() {
        let e = simplify(&parse("1/0").unwrap());
        assert!(matches!(e, Expr::Div(..)));
    }
}
