use super::{Expr, Var};
use crate::error::{Error, Result};
use crate::numerics::{finite, principal_power, ComplexScalar, ToleranceConfig};

/// Evaluate with the default tolerances.
pub fn evaluate(e: &Expr, z1: ComplexScalar, z2: ComplexScalar) -> Result<ComplexScalar> {
    evaluate_with(e, z1, z2, &ToleranceConfig::default())
}

/// Evaluate at `(z1, z2)`. Division by anything smaller than `cfg.abs_tol`
/// in modulus is an error, as is any non-finite intermediate.
pub fn evaluate_with(
    e: &Expr,
    z1: ComplexScalar,
    z2: ComplexScalar,
    cfg: &ToleranceConfig,
) -> Result<ComplexScalar> {
    let rec = |x: &Expr| evaluate_with(x, z1, z2, cfg);
    let value = match e {
        Expr::Const(v) => *v,
        Expr::Var(Var::Z1) => z1,
        Expr::Var(Var::Z2) => z2,
        Expr::Add(a, b) => rec(a)? + rec(b)?,
        Expr::Sub(a, b) => rec(a)? - rec(b)?,
        Expr::Mul(a, b) => rec(a)? * rec(b)?,
        Expr::Div(a, b) => {
            let num = rec(a)?;
            let den = rec(b)?;
            if den.norm() < cfg.abs_tol {
                return Err(Error::DivisionNearZero {
                    modulus: den.norm(),
                });
            }
            num / den
        }
        Expr::Neg(a) => -rec(a)?,
        Expr::Exp(a) => rec(a)?.exp(),
        Expr::Sin(a) => rec(a)?.sin(),
        Expr::Cos(a) => rec(a)?.cos(),
        Expr::Pow(a, p) => principal_power(rec(a)?, *p)?,
    };
    finite(value)
}
