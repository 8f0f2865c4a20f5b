use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::conic::{Branch, QuadraticForm};
use crate::error::{Error, Result};
use crate::numerics::{principal_sqrt, ComplexScalar, ToleranceConfig};

/// Closed-form amplitudes for `a x^2 + 2 alpha x y + b y^2 = 1`.
///
/// For these forms `a11, a12, b11, b12` coincide with `d11, d12, e11, e12` of
/// the reduced normal form on the same branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrinomialConstants {
    pub k11: ComplexScalar,
    pub k12: ComplexScalar,
    pub k13: ComplexScalar,
    pub k14: ComplexScalar,
    pub a11: ComplexScalar,
    pub a12: ComplexScalar,
    pub b11: ComplexScalar,
    pub b12: ComplexScalar,
    pub s11: ComplexScalar,
    pub s12: ComplexScalar,
    pub s13: ComplexScalar,
    pub s14: ComplexScalar,
}

impl TrinomialConstants {
    /// The two trig amplitudes of the M1M3 template at a root `alpha1`.
    pub fn trig_amplitudes(&self, alpha1: ComplexScalar) -> Result<(ComplexScalar, ComplexScalar)> {
        let den = alpha1 * alpha1 + 1.0;
        if den.norm() == 0.0 {
            return Err(Error::DegenerateAmplitude);
        }
        let s15 = ((self.a11 * alpha1 + self.b12) - alpha1 * (self.a12 * alpha1 + self.b11)) / den;
        let s16 = ((self.a12 * alpha1 + self.b11) + alpha1 * (self.a11 * alpha1 + self.b12)) / den;
        Ok((s15, s16))
    }
}

/// Requires `beta = gamma = 0` and `C = -1`.
pub fn trinomial_constants(
    q: &QuadraticForm,
    sign: Branch,
    cfg: &ToleranceConfig,
) -> Result<TrinomialConstants> {
    let zero = |z: ComplexScalar| z.norm() <= cfg.abs_tol;
    if !zero(q.beta) || !zero(q.gamma) || !zero(q.cc + 1.0) {
        return Err(Error::HypothesisViolated(
            "trinomial constants need beta = gamma = 0 and C = -1".into(),
        ));
    }
    let (a, b, alpha) = (q.a, q.b, q.alpha);
    let s = sign.sign() * principal_sqrt((a - b) * (a - b) + 4.0 * alpha * alpha);
    let k11 = principal_sqrt(a + b + s);
    let k14 = (b - a) + s;
    let k12 = principal_sqrt(k14 * k14 + 4.0 * alpha * alpha);
    let k13 = principal_sqrt(a + b - s);
    for (name, v) in [("K11", k11), ("K12", k12), ("K13", k13)] {
        if zero(v) {
            return Err(Error::DegenerateDenominator(format!("{name} = 0")));
        }
    }
    let a11 = 2.0 * SQRT_2 * alpha / (k11 * k12);
    let a12 = SQRT_2 * k14 / (k12 * k13);
    let b11 = SQRT_2 * k14 / (k11 * k12);
    let b12 = 2.0 * SQRT_2 * alpha / (k12 * k13);
    Ok(TrinomialConstants {
        k11,
        k12,
        k13,
        k14,
        a11,
        a12,
        b11,
        b12,
        s11: SQRT_2 * (2.0 * alpha - k14) / (k11 * k12),
        s12: SQRT_2 * (2.0 * alpha + k14) / (k11 * k12),
        s13: b11 * (a11 - b11) - b12 * (a12 + b12),
        s14: a11 * (a11 - b11) + a12 * (a12 + b12),
    })
}
