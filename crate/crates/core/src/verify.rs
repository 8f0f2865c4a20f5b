//! Operators, residuals and sampled verification.
//!
//! Every candidate is checked the same way: build the two operator outputs
//! symbolically, plug them into the quadratic form, and evaluate the result on
//! a seeded point cloud.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conic::QuadraticForm;
use crate::error::{Error, Result};
use crate::expr::{evaluate_with, Expr, Shift, Var};
use crate::numerics::{c, sample_points, ComplexScalar, SampleSpec, ToleranceConfig};

/// `L1 = f + f_1`, `L2 = f + f_2`, `L3 = f + f_11`, `L4 = f + f_12`, and
/// `M1..M3` the same with `f` replaced by `f(z + c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Operator {
    L1,
    L2,
    L3,
    L4,
    M1,
    M2,
    M3,
}

impl Operator {
    pub fn needs_shift(self) -> bool {
        matches!(self, Operator::M1 | Operator::M2 | Operator::M3)
    }

    fn name(self) -> &'static str {
        match self {
            Operator::L1 => "L1",
            Operator::L2 => "L2",
            Operator::L3 => "L3",
            Operator::L4 => "L4",
            Operator::M1 => "M1",
            Operator::M2 => "M2",
            Operator::M3 => "M3",
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn apply_operator(op: Operator, f: &Expr, shift: Option<Shift>) -> Result<Expr> {
    let base = if op.needs_shift() {
        let s = shift.ok_or(Error::MissingShift(op.name()))?;
        f.shift(s)
    } else {
        f.simplify()
    };
    let derivative = match op {
        Operator::L1 | Operator::M1 => f.differentiate(Var::Z1),
        Operator::L2 | Operator::M2 => f.differentiate(Var::Z2),
        Operator::L3 | Operator::M3 => f.differentiate(Var::Z1).differentiate(Var::Z1),
        Operator::L4 => f.differentiate(Var::Z1).differentiate(Var::Z2),
    };
    Ok((base + derivative).simplify())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationTag {
    L1L2,
    L1L3,
    L1L4,
    M1M2,
    M1M3,
}

impl EquationTag {
    pub const ALL: [EquationTag; 5] = [
        EquationTag::L1L2,
        EquationTag::L1L3,
        EquationTag::L1L4,
        EquationTag::M1M2,
        EquationTag::M1M3,
    ];

    pub fn operators(self) -> (Operator, Operator) {
        match self {
            EquationTag::L1L2 => (Operator::L1, Operator::L2),
            EquationTag::L1L3 => (Operator::L1, Operator::L3),
            EquationTag::L1L4 => (Operator::L1, Operator::L4),
            EquationTag::M1M2 => (Operator::M1, Operator::M2),
            EquationTag::M1M3 => (Operator::M1, Operator::M3),
        }
    }

    pub fn needs_shift(self) -> bool {
        matches!(self, EquationTag::M1M2 | EquationTag::M1M3)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EquationTag::L1L2 => "l1l2",
            EquationTag::L1L3 => "l1l3",
            EquationTag::L1L4 => "l1l4",
            EquationTag::M1M2 => "m1m2",
            EquationTag::M1M3 => "m1m3",
        }
    }
}

impl fmt::Display for EquationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EquationTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EquationTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown equation kind {s:?}")))
    }
}

/// Which pair of operators is plugged into the quadratic form, plus the shift
/// for the difference kinds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquationKind {
    pub tag: EquationTag,
    pub shift: Option<Shift>,
}

impl EquationKind {
    /// Checks that a nonzero shift is given exactly for the difference kinds.
    pub fn new(tag: EquationTag, shift: Option<Shift>) -> Result<Self> {
        match (tag.needs_shift(), shift) {
            (true, None) => Err(Error::MissingShift(tag.operators().0.name())),
            (true, Some(s)) if s.is_zero() => {
                Err(Error::InvalidShift("shift must be nonzero".into()))
            }
            (true, Some(s))
                if !(crate::numerics::is_finite(s.c1) && crate::numerics::is_finite(s.c2)) =>
            {
                Err(Error::InvalidShift("shift must be finite".into()))
            }
            (false, Some(_)) => Err(Error::InvalidShift(format!("{tag} takes no shift"))),
            _ => Ok(Self { tag, shift }),
        }
    }

    pub fn l1l2() -> Self {
        Self::plain(EquationTag::L1L2)
    }

    pub fn l1l3() -> Self {
        Self::plain(EquationTag::L1L3)
    }

    pub fn l1l4() -> Self {
        Self::plain(EquationTag::L1L4)
    }

    pub fn m1m2(shift: Shift) -> Result<Self> {
        Self::new(EquationTag::M1M2, Some(shift))
    }

    pub fn m1m3(shift: Shift) -> Result<Self> {
        Self::new(EquationTag::M1M3, Some(shift))
    }

    fn plain(tag: EquationTag) -> Self {
        Self { tag, shift: None }
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.tag.fmt(f)
    }
}

/// `a x^2 + 2 alpha x y + b y^2 + 2 beta x + 2 gamma y + C` with `x`, `y` the
/// two operator outputs.
pub fn residual_expr(kind: &EquationKind, q: &QuadraticForm, f: &Expr) -> Result<Expr> {
    let (op1, op2) = kind.tag.operators();
    let x = apply_operator(op1, f, kind.shift)?;
    let y = apply_operator(op2, f, kind.shift)?;
    Ok(q.apply(&x, &y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Constant,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Constant => "CONSTANT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub equation: EquationKind,
    pub candidate: String,
    pub max_abs_residual: f64,
    pub mean_abs_residual: f64,
    /// Sample with the largest residual; the lowest index wins ties.
    pub worst_point: Option<(ComplexScalar, ComplexScalar)>,
    pub constraint_residuals: Vec<(String, f64)>,
    pub verdict: Verdict,
    /// Residual bound `abs_tol * (1 + max|coeff|)`.
    pub threshold: f64,
    /// Whether the residual bound held, independent of the constancy check.
    pub within_tolerance: bool,
    pub evaluation_failures: usize,
    pub samples: SampleSpec,
}

struct PointResult {
    residual: f64,
    value: ComplexScalar,
}

pub fn verify(
    kind: &EquationKind,
    q: &QuadraticForm,
    f: &Expr,
    spec: &SampleSpec,
    cfg: &ToleranceConfig,
) -> Result<VerificationReport> {
    spec.validate()?;
    let residual = residual_expr(kind, q, f)?;
    let points = sample_points(spec);
    let results: Vec<Result<PointResult>> = points
        .par_iter()
        .map(|&(z1, z2)| {
            Ok(PointResult {
                residual: evaluate_with(&residual, z1, z2, cfg)?.norm(),
                value: evaluate_with(f, z1, z2, cfg)?,
            })
        })
        .collect();

    let threshold = cfg.abs_tol * (1.0 + q.norm_inf());
    let mut max = 0.0f64;
    let mut sum = 0.0;
    let mut worst = None;
    let mut failures = 0;
    let mut first_value = None;
    let mut spread = 0.0f64;
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(p) => {
                if worst.is_none() || p.residual > max {
                    max = p.residual;
                    worst = Some(points[i]);
                }
                sum += p.residual;
                let v0 = *first_value.get_or_insert(p.value);
                spread = spread.max((p.value - v0).norm());
            }
            Err(_) => failures += 1,
        }
    }
    let evaluated = results.len() - failures;
    let within_tolerance = failures == 0 && max <= threshold;
    let verdict = if points.is_empty() {
        Verdict::Inconclusive
    } else if failures > 0 {
        Verdict::Fail
    } else if spread < cfg.abs_tol {
        Verdict::Constant
    } else if within_tolerance {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(VerificationReport {
        equation: *kind,
        candidate: f.to_string(),
        max_abs_residual: max,
        mean_abs_residual: if evaluated > 0 {
            sum / evaluated as f64
        } else {
            0.0
        },
        worst_point: worst,
        constraint_residuals: Vec::new(),
        verdict,
        threshold,
        within_tolerance,
        evaluation_failures: failures,
        samples: *spec,
    })
}

/// Largest `|symbolic - central difference| / (1 + |symbolic|)` over both
/// partial derivatives and all sample points. A point where any evaluation
/// fails counts as an infinite discrepancy.
pub fn fd_crosscheck(f: &Expr, spec: &SampleSpec, cfg: &ToleranceConfig) -> f64 {
    let d1 = f.differentiate(Var::Z1);
    let d2 = f.differentiate(Var::Z2);
    let h = c(cfg.fd_step, 0.0);
    let eval = |e: &Expr, z1, z2| evaluate_with(e, z1, z2, cfg);
    let at_point = |&(z1, z2): &(ComplexScalar, ComplexScalar)| -> Result<f64> {
        let sym1 = eval(&d1, z1, z2)?;
        let fd1 = (eval(f, z1 + h, z2)? - eval(f, z1 - h, z2)?) / (2.0 * h);
        let sym2 = eval(&d2, z1, z2)?;
        let fd2 = (eval(f, z1, z2 + h)? - eval(f, z1, z2 - h)?) / (2.0 * h);
        Ok(((sym1 - fd1).norm() / (1.0 + sym1.norm()))
            .max((sym2 - fd2).norm() / (1.0 + sym2.norm())))
    };
    sample_points(spec)
        .par_iter()
        .map(|p| at_point(p).unwrap_or(f64::INFINITY))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use std::f64::consts::PI;

    fn zero_everywhere(e: &Expr) {
        for (z1, z2) in sample_points(&SampleSpec::new(20, 2.0, 3)) {
            assert!(e.eval(z1, z2).unwrap().norm() < 1e-12, "{e}");
        }
    }

    #[test]
    fn operator_kernels() {
        let f = parse("exp(-(z1+z2))").unwrap();
        zero_everywhere(&apply_operator(Operator::L1, &f, None).unwrap());
        let f = parse("exp(z1-z2)").unwrap();
        zero_everywhere(&apply_operator(Operator::L4, &f, None).unwrap());

        let a = c(-1.0, PI) / 2.0;
        let f = (Expr::z1() + Expr::constant(a) * Expr::z2()).exp();
        let m1 = apply_operator(Operator::M1, &f, Some(Shift::real(1.0, 2.0))).unwrap();
        // M1 f = f(z+c) + f = (e^{c1 + A c2} + 1) f
        for (z1, z2) in sample_points(&SampleSpec::new(20, 2.0, 3)) {
            let fz = f.eval(z1, z2).unwrap();
            assert!(m1.eval(z1, z2).unwrap().norm() <= 1e-12 * (1.0 + fz.norm()));
        }
    }

    #[test]
    fn shift_is_required() {
        let f = Expr::z1();
        assert_eq!(
            apply_operator(Operator::M2, &f, None),
            Err(Error::MissingShift("M2"))
        );
        assert!(EquationKind::new(EquationTag::M1M3, Some(Shift::real(0.0, 0.0))).is_err());
        assert!(EquationKind::new(EquationTag::L1L2, Some(Shift::real(1.0, 0.0))).is_err());
    }

    #[test]
    fn zero_candidate_leaves_the_constant_term() {
        let q = QuadraticForm::real(1.0, 0.5, 2.0, 0.1, -0.3, -1.5);
        let r = residual_expr(&EquationKind::l1l2(), &q, &Expr::real(0.0)).unwrap();
        assert_eq!(r.simplify(), Expr::real(-1.5));
    }

    #[test]
    fn verdicts() {
        let q = QuadraticForm::unit_circle();
        let spec = SampleSpec::default();
        let cfg = ToleranceConfig::default();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let family = Expr::real(h) + (-(Expr::z1() + Expr::z2())).exp();
        let r = verify(&EquationKind::l1l2(), &q, &family, &spec, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");

        let r = verify(&EquationKind::l1l2(), &q, &Expr::z1(), &spec, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.max_abs_residual > 1e-2);

        let r = verify(&EquationKind::l1l2(), &q, &Expr::real(h), &spec, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Constant);
        assert!(r.within_tolerance);

        let empty = SampleSpec::new(0, 2.0, 1);
        let r = verify(&EquationKind::l1l2(), &q, &family, &empty, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.worst_point, None);

        let r = verify(
            &EquationKind::l1l2(),
            &q,
            &parse("1/(z1-z1)").unwrap(),
            &spec,
            &cfg,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.evaluation_failures, spec.count);
    }

    #[test]
    fn worst_point_is_deterministic() {
        let q = QuadraticForm::real(1.0, 0.2, 0.5, 0.0, 0.3, -1.0);
        let f = parse("sin(z1)*z2").unwrap();
        let spec = SampleSpec::new(64, 2.0, 11);
        let cfg = ToleranceConfig::default();
        let a = verify(&EquationKind::l1l3(), &q, &f, &spec, &cfg).unwrap();
        let b = verify(&EquationKind::l1l3(), &q, &f, &spec, &cfg).unwrap();
        assert_eq!(a, b);
        let worst = a.worst_point.unwrap();
        let r = residual_expr(&EquationKind::l1l3(), &q, &f).unwrap();
        assert_eq!(r.eval(worst.0, worst.1).unwrap().norm(), a.max_abs_residual);
    }

    #[test]
    fn fd_examples() {
        let spec = SampleSpec::new(50, 2.0, 5);
        let cfg = ToleranceConfig::default();
        assert!(fd_crosscheck(&parse("z1^2").unwrap(), &spec, &cfg) < 1e-9);
        assert!(fd_crosscheck(&parse("exp(sin(z1*z2))").unwrap(), &spec, &cfg) < 1e-5);
        assert_eq!(
            fd_crosscheck(&Expr::constant(c(2.0, 1.0)), &spec, &cfg),
            0.0
        );
        assert_eq!(fd_crosscheck(&Expr::real(0.0), &spec, &cfg), 0.0);
    }
}
