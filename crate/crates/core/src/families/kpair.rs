use serde::{Deserialize, Serialize};

use crate::conic::{Branch, NormalForm};
use crate::error::{Error, Result};
use crate::numerics::{principal_sqrt, ComplexScalar, ToleranceConfig};

/// A point `(k1, k2)` on `k1^2 + k2^2 = 1` with `k1 r1 - k2 r2 + r3 = 0`.
///
/// `(k1, k2)` plays the role of `(cos h, sin h)` for a constant `h`, chosen
/// so that both coordinates of the parametric point coincide. That common
/// value is [`KPair::a0`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KPair {
    pub k1: ComplexScalar,
    pub k2: ComplexScalar,
    pub r1: ComplexScalar,
    pub r2: ComplexScalar,
    pub r3: ComplexScalar,
    pub a0: ComplexScalar,
}

impl KPair {
    pub fn unit_residual(&self) -> ComplexScalar {
        self.k1 * self.k1 + self.k2 * self.k2 - 1.0
    }

    pub fn consistency_residual(&self) -> ComplexScalar {
        self.k1 * self.r1 - self.k2 * self.r2 + self.r3
    }
}

/// Solve for the K-pair of a normal form. `sign` picks the root of the
/// quadratic in `k2`.
///
/// With `r1 = d11 - e11`, `r2 = d12 + e12`, `r3 = t1 - t2` and
/// `w = sqrt(r1^2 + r2^2 - r3^2)`:
///
/// ```text
/// k2 = ( r2 r3 + s r1 w) / (r1^2 + r2^2)
/// k1 = (-r1 r3 + s r2 w) / (r1^2 + r2^2)
/// ```
///
/// The `k1` expression equals `(k2 r2 - r3) / r1` but needs no division by
/// `r1`.
pub fn solve_k_pair(nf: &NormalForm, sign: Branch, cfg: &ToleranceConfig) -> Result<KPair> {
    let r1 = nf.d11 - nf.e11;
    let r2 = nf.d12 + nf.e12;
    let r3 = nf.t1 - nf.t2;
    let den = r1 * r1 + r2 * r2;
    if den.norm() <= cfg.abs_tol {
        return Err(Error::DegenerateKSystem(den.norm()));
    }
    let w = principal_sqrt(den - r3 * r3);
    let s = sign.sign();
    let k2 = (r2 * r3 + s * r1 * w) / den;
    let k1 = (-r1 * r3 + s * r2 * w) / den;
    let a0 = k1 * nf.d11 - k2 * nf.d12 + nf.t1;
    let pair = KPair {
        k1,
        k2,
        r1,
        r2,
        r3,
        a0,
    };
    let scale = 1.0 + r1.norm() + r2.norm() + r3.norm();
    let consistency = pair.consistency_residual().norm();
    if consistency.is_nan() || consistency > cfg.rel_tol.max(cfg.abs_tol) * scale {
        return Err(Error::NoRealization(consistency));
    }
    Ok(pair)
}
