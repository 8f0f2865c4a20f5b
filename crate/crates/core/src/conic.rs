//! Reduction of `a x^2 + 2 alpha x y + b y^2 + 2 beta x + 2 gamma y + C = 0`
//! to the unit circle `u^2 + v^2 = 1`.
//!
//! The chain is: translate the centre to the origin, rotate onto the
//! eigenvectors of `[[a, alpha], [alpha, b]]`, then scale each axis. The
//! parametric solution `(u, v) = (cos h, sin h)` pulled back through the chain
//! gives `x = d11 cos h - d12 sin h + t1`, `y = e11 cos h + e12 sin h + t2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::numerics::{c, principal_sqrt, ComplexScalar, ToleranceConfig};

/// Coefficients of `a x^2 + 2 alpha x y + b y^2 + 2 beta x + 2 gamma y + C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub a: ComplexScalar,
    pub alpha: ComplexScalar,
    pub b: ComplexScalar,
    pub beta: ComplexScalar,
    pub gamma: ComplexScalar,
    #[serde(rename = "C")]
    pub cc: ComplexScalar,
}

impl QuadraticForm {
    pub fn new(
        a: ComplexScalar,
        alpha: ComplexScalar,
        b: ComplexScalar,
        beta: ComplexScalar,
        gamma: ComplexScalar,
        cc: ComplexScalar,
    ) -> Self {
        Self {
            a,
            alpha,
            b,
            beta,
            gamma,
            cc,
        }
    }

    pub fn real(a: f64, alpha: f64, b: f64, beta: f64, gamma: f64, cc: f64) -> Self {
        let r = |x| c(x, 0.0);
        Self::new(r(a), r(alpha), r(b), r(beta), r(gamma), r(cc))
    }

    /// `x^2 + y^2 = 1`.
    pub fn unit_circle() -> Self {
        Self::real(1.0, 0.0, 1.0, 0.0, 0.0, -1.0)
    }

    pub fn coefficients(&self) -> [ComplexScalar; 6] {
        [self.a, self.alpha, self.b, self.beta, self.gamma, self.cc]
    }

    pub fn validate(&self) -> Result<()> {
        if self
            .coefficients()
            .iter()
            .all(|z| crate::numerics::is_finite(*z))
        {
            Ok(())
        } else {
            Err(Error::InvalidConfig(
                "form coefficients must be finite".into(),
            ))
        }
    }

    /// Largest coefficient modulus.
    pub fn norm_inf(&self) -> f64 {
        self.coefficients()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, x: ComplexScalar, y: ComplexScalar) -> ComplexScalar {
        self.a * x * x
            + 2.0 * self.alpha * x * y
            + self.b * y * y
            + 2.0 * self.beta * x
            + 2.0 * self.gamma * y
            + self.cc
    }

    /// The same form in coordinates `X = x - x0`, `Y = y - y0`.
    pub fn translate(&self, x0: ComplexScalar, y0: ComplexScalar) -> Self {
        Self {
            beta: self.a * x0 + self.alpha * y0 + self.beta,
            gamma: self.alpha * x0 + self.b * y0 + self.gamma,
            cc: self.eval(x0, y0),
            ..*self
        }
    }

    /// The same form as an expression in `x` and `y`.
    pub fn apply(&self, x: &Expr, y: &Expr) -> Expr {
        let k = |v: ComplexScalar| Expr::constant(v);
        k(self.a) * (x * x)
            + k(2.0 * self.alpha) * (x * y)
            + k(self.b) * (y * y)
            + k(2.0 * self.beta) * x
            + k(2.0 * self.gamma) * y
            + k(self.cc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discriminants {
    /// Determinant of the 3x3 companion matrix.
    pub delta: ComplexScalar,
    /// `ab - alpha^2`.
    #[serde(rename = "D")]
    pub dee: ComplexScalar,
}

pub fn discriminants(q: &QuadraticForm) -> Discriminants {
    let QuadraticForm {
        a,
        alpha,
        b,
        beta,
        gamma,
        cc,
    } = *q;
    Discriminants {
        delta: a * b * cc + 2.0 * alpha * beta * gamma
            - a * gamma * gamma
            - b * beta * beta
            - cc * alpha * alpha,
        dee: a * b - alpha * alpha,
    }
}

/// `det [[a, alpha, beta], [alpha, b, gamma], [beta, gamma, C]]` by cofactor
/// expansion along the first row.
pub fn companion_determinant(q: &QuadraticForm) -> ComplexScalar {
    let m = [
        [q.a, q.alpha, q.beta],
        [q.alpha, q.b, q.gamma],
        [q.beta, q.gamma, q.cc],
    ];
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    NondegenerateReducible,
    DegenerateParallelLines,
    DegenerateIntersectingLines,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn delta_threshold(q: &QuadraticForm, cfg: &ToleranceConfig) -> f64 {
    cfg.abs_tol * (1.0 + q.norm_inf().powi(3))
}

fn dee_threshold(q: &QuadraticForm, cfg: &ToleranceConfig) -> f64 {
    cfg.abs_tol * (1.0 + q.norm_inf().powi(2))
}

pub fn classify(q: &QuadraticForm, cfg: &ToleranceConfig) -> Result<Classification> {
    let d = discriminants(q);
    let delta_zero = d.delta.norm() <= delta_threshold(q, cfg);
    let dee_zero = d.dee.norm() <= dee_threshold(q, cfg);
    match (delta_zero, dee_zero) {
        (true, true) => Ok(Classification::DegenerateParallelLines),
        (true, false) => Ok(Classification::DegenerateIntersectingLines),
        (false, false) => Ok(Classification::NondegenerateReducible),
        (false, true) => Err(Error::UnsupportedCase(
            "parabolic form: alpha^2 = ab with nonzero discriminant".into(),
        )),
    }
}

/// Which eigenvalue goes with the first rotated axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        })
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plus" | "+" => Ok(Branch::Plus),
            "minus" | "-" => Ok(Branch::Minus),
            other => Err(Error::InvalidConfig(format!("unknown branch {other:?}"))),
        }
    }
}

/// Translation, rotation and scaling data for one branch of a form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub form: QuadraticForm,
    pub branch: Branch,
    pub delta: ComplexScalar,
    pub dee: ComplexScalar,
    pub x1: ComplexScalar,
    pub y1: ComplexScalar,
    pub xi: ComplexScalar,
    pub eta: ComplexScalar,
    /// Eigenvalue paired with `(xi, eta)`.
    pub a_pm: ComplexScalar,
    /// Eigenvalue paired with `(-eta, xi)`.
    pub b_mp: ComplexScalar,
    pub scale_u: ComplexScalar,
    pub scale_v: ComplexScalar,
    pub d11: ComplexScalar,
    pub d12: ComplexScalar,
    pub e11: ComplexScalar,
    pub e12: ComplexScalar,
    pub t1: ComplexScalar,
    pub t2: ComplexScalar,
}

/// Unit eigenvector for the eigenvalue `(a + b + sign*s)/2`.
///
/// The textbook choice `(2 alpha, b - a + sign*s)` vanishes or becomes
/// isotropic in some cases (e.g. `alpha = 0` with the branch that picks
/// `a`), so the row-two eigenvector `(a - b + sign*s, 2 alpha)` is tried next.
/// When both fail and the matrix is already diagonal with equal entries the
/// identity is used.
fn rotation(
    q: &QuadraticForm,
    s: ComplexScalar,
    sign: f64,
    cfg: &ToleranceConfig,
) -> Result<(ComplexScalar, ComplexScalar)> {
    let candidates = [
        (2.0 * q.alpha, q.b - q.a + sign * s),
        (q.a - q.b + sign * s, 2.0 * q.alpha),
    ];
    for (v1, v2) in candidates {
        let n2 = v1 * v1 + v2 * v2;
        let size = v1.norm_sqr() + v2.norm_sqr();
        if size > 0.0 && n2.norm() > 1e-8 * size {
            let n = principal_sqrt(n2);
            return Ok((v1 / n, v2 / n));
        }
    }
    let scale = 1.0 + q.a.norm().max(q.b.norm());
    if q.alpha.norm() <= cfg.abs_tol * scale && (q.a - q.b).norm() <= cfg.abs_tol * scale {
        return Ok((c(1.0, 0.0), c(0.0, 0.0)));
    }
    Err(Error::BranchUndefined(
        "quadratic part has no normalizable eigenvector".into(),
    ))
}

pub fn reduce(q: &QuadraticForm, branch: Branch, cfg: &ToleranceConfig) -> Result<NormalForm> {
    q.validate()?;
    match classify(q, cfg)? {
        Classification::NondegenerateReducible => {}
        other => {
            return Err(Error::DegenerateForm(format!(
                "{other} forms have no circle normal form"
            )))
        }
    }
    let Discriminants { delta, dee } = discriminants(q);
    let x1 = (q.alpha * q.gamma - q.b * q.beta) / dee;
    let y1 = (q.alpha * q.beta - q.a * q.gamma) / dee;

    let sign = branch.sign();
    let s = principal_sqrt((q.a - q.b) * (q.a - q.b) + 4.0 * q.alpha * q.alpha);
    let a_pm = (q.a + q.b + sign * s) / 2.0;
    let b_mp = (q.a + q.b - sign * s) / 2.0;
    let (xi, eta) = rotation(q, s, sign, cfg)?;

    let scale_u = principal_sqrt(dee * a_pm / -delta);
    let scale_v = principal_sqrt(dee * b_mp / -delta);
    for (name, value) in [("u", scale_u), ("v", scale_v)] {
        if value.norm() <= cfg.abs_tol || !crate::numerics::is_finite(value) {
            return Err(Error::BranchUndefined(format!(
                "scale factor {name} vanishes on the {branch} branch"
            )));
        }
    }

    Ok(NormalForm {
        form: *q,
        branch,
        delta,
        dee,
        x1,
        y1,
        xi,
        eta,
        a_pm,
        b_mp,
        scale_u,
        scale_v,
        d11: xi / scale_u,
        d12: eta / scale_v,
        e11: eta / scale_u,
        e12: xi / scale_v,
        t1: x1,
        t2: y1,
    })
}

impl NormalForm {
    /// Pointwise `(x, y)` for a given value of `h`.
    pub fn point(&self, h: ComplexScalar) -> (ComplexScalar, ComplexScalar) {
        let (ch, sh) = (h.cos(), h.sin());
        (
            self.d11 * ch - self.d12 * sh + self.t1,
            self.e11 * ch + self.e12 * sh + self.t2,
        )
    }
}

/// `(x, y) = (d11 cos h - d12 sin h + t1, e11 cos h + e12 sin h + t2)`.
pub fn parametric_solution(nf: &NormalForm, h: &Expr) -> Result<(Expr, Expr)> {
    h.check_entire()?;
    let k = |v: ComplexScalar| Expr::constant(v);
    let x = k(nf.d11) * h.clone().cos() - k(nf.d12) * h.clone().sin() + k(nf.t1);
    let y = k(nf.e11) * h.clone().cos() + k(nf.e12) * h.clone().sin() + k(nf.t2);
    Ok((x, y))
}

/// Map a point of the original plane to the scaled, rotated, centred frame in
/// which the conic is `u^2 + v^2 = 1`.
pub fn forward_map(
    nf: &NormalForm,
    x: ComplexScalar,
    y: ComplexScalar,
) -> (ComplexScalar, ComplexScalar) {
    let (dx, dy) = (x - nf.x1, y - nf.y1);
    let u = nf.xi * dx + nf.eta * dy;
    let v = -nf.eta * dx + nf.xi * dy;
    (nf.scale_u * u, nf.scale_v * v)
}
