//! Scalar kernels shared by every other module.
//!
//! All square roots, logarithms and powers go through the principal-branch
//! helpers here, so every `±` that the reduction leaves open is resolved in
//! exactly one place. Discrete sign choices are carried separately by
//! [`crate::conic::Branch`].

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex scalar used for every coefficient, constant and sample value.
pub type ComplexScalar = Complex64;

pub const I: ComplexScalar = Complex64::new(0.0, 1.0);
pub const ONE: ComplexScalar = Complex64::new(1.0, 0.0);
pub const ZERO: ComplexScalar = Complex64::new(0.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> ComplexScalar {
    Complex64::new(re, im)
}

#[inline]
pub fn is_finite(z: ComplexScalar) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Fail with [`Error::NonFiniteResult`] unless `z` is finite.
pub fn finite(z: ComplexScalar) -> Result<ComplexScalar> {
    if is_finite(z) {
        Ok(z)
    } else {
        Err(Error::NonFiniteResult)
    }
}

/// Numerical tolerances threaded through the library.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub fd_step: f64,
    pub max_iter: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            fd_step: 1e-6,
            max_iter: 100,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.abs_tol) || !positive(self.rel_tol) || !positive(self.fd_step) {
            return Err(Error::InvalidConfig(format!(
                "tolerances must be finite and strictly positive: {self:?}"
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        Ok(())
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

/// Seeded description of a point cloud in the box `|Re z_i|, |Im z_i| <= radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub count: usize,
    pub radius: f64,
    pub seed: u64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        Self {
            count: 200,
            radius: 2.0,
            seed: 42,
        }
    }
}

impl SampleSpec {
    pub fn new(count: usize, radius: f64, seed: u64) -> Self {
        Self {
            count,
            radius,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "sample radius must be finite and positive, got {}",
                self.radius
            )));
        }
        Ok(())
    }
}

/// Principal square root; the result has argument in `(-pi/2, pi/2]`.
///
/// A negative zero imaginary part is treated as `+0` so that the negative real
/// axis maps to the positive imaginary axis.
pub fn principal_sqrt(z: ComplexScalar) -> ComplexScalar {
    let z = normalize_zero_im(z);
    let w = z.sqrt();
    if w.re == 0.0 && w.im < 0.0 {
        -w
    } else {
        w
    }
}

/// Principal logarithm with argument in `(-pi, pi]`.
pub fn principal_log(z: ComplexScalar) -> Result<ComplexScalar> {
    if z == ZERO {
        return Err(Error::ZeroBase {
            exponent: "log".into(),
        });
    }
    let z = normalize_zero_im(z);
    finite(c(z.norm().ln(), z.im.atan2(z.re)))
}

/// `exp(exponent * Log(base))` on the principal branch.
///
/// Integer exponents are evaluated by repeated squaring, which agrees with the
/// principal definition and avoids the rounding of the log/exp round trip.
pub fn principal_power(base: ComplexScalar, exponent: ComplexScalar) -> Result<ComplexScalar> {
    let integer = (exponent.im == 0.0 && exponent.re.fract() == 0.0 && exponent.re.abs() <= 1024.0)
        .then_some(exponent.re as i32);
    if base == ZERO {
        return match integer {
            Some(n) if n > 0 => Ok(ZERO),
            _ => Err(Error::ZeroBase {
                exponent: format!("{exponent}"),
            }),
        };
    }
    let value = match integer {
        Some(n) => base.powi(n),
        None => (exponent * principal_log(base)?).exp(),
    };
    finite(value)
}

/// Principal branch `W0` of the Lambert W function: the solution of
/// `w e^w = z` with `w -> 0` as `z -> 0`.
///
/// Halley iteration from a branch-aware starting guess, run until the step
/// stalls at rounding level. The result is accepted if
/// `|w e^w - z| <= abs_tol * max(1, |z|)`.
pub fn lambert_w0(z: ComplexScalar, cfg: &ToleranceConfig) -> Result<ComplexScalar> {
    if !is_finite(z) {
        return Err(Error::LambertFailure(format!("non-finite argument {z}")));
    }
    if z == ZERO {
        return Ok(ZERO);
    }
    let branch_point = c(-1.0 / E, 0.0);
    if (z - branch_point).norm() == 0.0 {
        return Err(Error::LambertFailure(
            "argument is the branch point -1/e".into(),
        ));
    }

    let mut w = lambert_initial_guess(z);
    let target = cfg.abs_tol * z.norm().max(1.0);
    for _ in 0..cfg.max_iter {
        let ew = w.exp();
        let f = w * ew - z;
        if f == ZERO {
            return finite(w);
        }
        let wp1 = w + ONE;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom.norm() == 0.0 || !is_finite(denom) {
            break;
        }
        let step = f / denom;
        w -= step;
        if step.norm() <= f64::EPSILON * (1.0 + w.norm()) {
            break;
        }
    }
    let residual = (w * w.exp() - z).norm();
    if residual <= target && is_finite(w) {
        Ok(w)
    } else {
        Err(Error::NoConvergence {
            what: "lambert_w0",
            iterations: cfg.max_iter,
        })
    }
}

fn lambert_initial_guess(z: ComplexScalar) -> ComplexScalar {
    if (z + c(1.0 / E, 0.0)).norm() < 0.7 {
        // series about the branch point -1/e
        let p = principal_sqrt(2.0 * (E * z + ONE));
        return -ONE + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    }
    if z.norm() < 1.0 {
        return z * (ONE + 4.0 / 3.0 * z) / (ONE + 7.0 / 3.0 * z + 5.0 / 6.0 * z * z);
    }
    if z.re >= 0.0 && z.norm() < 3.0 {
        return (ONE + z).ln();
    }
    let l1 = normalize_zero_im(z).ln();
    let l2 = l1.ln();
    l1 - l2 + l2 / l1
}

fn normalize_zero_im(z: ComplexScalar) -> ComplexScalar {
    if z.im == 0.0 {
        c(z.re, 0.0)
    } else {
        z
    }
}

/// Evaluate `sum coeffs[k] z^k` by Horner's rule.
pub fn poly_eval(coeffs: &[ComplexScalar], z: ComplexScalar) -> ComplexScalar {
    coeffs.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
}

fn poly_derivative(coeffs: &[ComplexScalar]) -> Vec<ComplexScalar> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &a)| a * k as f64)
        .collect()
}

/// All complex roots of `sum coeffs[k] z^k` (ascending order, constant first),
/// repeated according to multiplicity.
///
/// Aberth–Ehrlich simultaneous iteration from a deterministic circle of
/// starting points, followed by a Newton polish on the original coefficients.
/// Every returned root satisfies `|p(r)| <= abs_tol * (1 + max|coeff|)`.
pub fn poly_roots(coeffs: &[ComplexScalar], cfg: &ToleranceConfig) -> Result<Vec<ComplexScalar>> {
    if coeffs.iter().any(|&a| !is_finite(a)) {
        return Err(Error::InvalidConfig(
            "non-finite polynomial coefficient".into(),
        ));
    }
    let degree = coeffs.len().saturating_sub(1);
    let lead = *coeffs.last().ok_or(Error::DegenerateLeadingCoefficient)?;
    if degree < 1 || lead == ZERO {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let scale = 1.0 + coeffs.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let bound = cfg.abs_tol * scale;

    if degree == 1 {
        return Ok(vec![-coeffs[0] / coeffs[1]]);
    }

    let monic: Vec<ComplexScalar> = coeffs.iter().map(|&a| a / lead).collect();
    let dmonic = poly_derivative(&monic);

    // Fujiwara bound on root moduli
    let radius = (0..degree)
        .map(|k| (monic[k].norm()).powf(1.0 / (degree - k) as f64))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let start_radius = radius.clamp(1e-3, 1e6);
    let mut roots: Vec<ComplexScalar> = (0..degree)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(start_radius, theta)
        })
        .collect();

    let sweeps = cfg.max_iter.max(1) * 5;
    for _ in 0..sweeps {
        let mut max_step: f64 = 0.0;
        for k in 0..degree {
            let zk = roots[k];
            let p = poly_eval(&monic, zk);
            if p == ZERO {
                continue;
            }
            let dp = poly_eval(&dmonic, zk);
            let ratio = p / dp;
            let repulsion: ComplexScalar = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &zj)| {
                    let d = zk - zj;
                    if d == ZERO {
                        ZERO
                    } else {
                        ONE / d
                    }
                })
                .sum();
            let step = ratio / (ONE - ratio * repulsion);
            if is_finite(step) {
                roots[k] = zk - step;
                max_step = max_step.max(step.norm() / (1.0 + zk.norm()));
            }
        }
        if max_step <= 4.0 * f64::EPSILON {
            break;
        }
    }

    let dcoeffs = poly_derivative(coeffs);
    for root in roots.iter_mut() {
        for _ in 0..3 {
            let p = poly_eval(coeffs, *root);
            let dp = poly_eval(&dcoeffs, *root);
            if dp == ZERO {
                break;
            }
            let candidate = *root - p / dp;
            if is_finite(candidate) && poly_eval(coeffs, candidate).norm() < p.norm() {
                *root = candidate;
            } else {
                break;
            }
        }
    }

    if roots
        .iter()
        .all(|&r| is_finite(r) && poly_eval(coeffs, r).norm() <= bound)
    {
        Ok(roots)
    } else {
        Err(Error::NoConvergence {
            what: "poly_roots",
            iterations: sweeps,
        })
    }
}

/// Deterministic points `(z1, z2)` drawn uniformly from the sampling box.
pub fn sample_points(spec: &SampleSpec) -> Vec<(ComplexScalar, ComplexScalar)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let r = spec.radius.abs();
    let draw = |rng: &mut ChaCha8Rng| c(rng.random_range(-r..=r), rng.random_range(-r..=r));
    (0..spec.count)
        .map(|_| {
            let z1 = draw(&mut rng);
            let z2 = draw(&mut rng);
            (z1, z2)
        })
        .collect()
}
