//! Closed-form candidate solutions and the constant systems they depend on.
//!
//! Constructed families come with identity constraints that hold to rounding
//! error. Templates whose parameters are only implicitly constrained are built
//! as validate-only families: their constraint residuals and their sampled
//! equation residual are reported, never asserted.

mod constructors;
mod kpair;
mod sweep;
mod trinomial;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::conic::QuadraticForm;
use crate::error::Result;
use crate::expr::Expr;
use crate::numerics::{c, ComplexScalar, SampleSpec, ToleranceConfig};
use crate::verify::{verify, EquationKind};

pub use constructors::{
    l1l2_exponential_family, l1l2_trig_family, l1l4_exponential_family, m1m2_delay_family,
    m1m2_trig_constraints, m1m2_trig_template, m1m3_exponential_family, m1m3_quartic,
    m1m3_trig_templates, DELAY_EXPONENT_LABEL, SHIFT_IDENTITY_LABEL,
};
pub use kpair::{solve_k_pair, KPair};
pub use sweep::{l1l3_nonexistence_sweep, SweepReport, TemplateKind, TemplateResult};
pub use trinomial::{trinomial_constants, TrinomialConstants};

/// Which construction produced a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySource {
    L1L2Exponential,
    L1L2Trig,
    /// The trig family with the amplitudes and frequency as usually stated;
    /// kept only to report how far it is from solving the equation.
    L1L2TrigStated,
    L1L4Exponential,
    /// `-A0 + B e^(z1 - z2)`, kept only for its residual.
    L1L4Stated,
    M1M2Delay,
    M1M2Trig,
    M1M3Exponential,
    M1M3Trig,
}

impl FamilySource {
    pub fn label(self) -> &'static str {
        match self {
            FamilySource::L1L2Exponential => "l1l2-exponential",
            FamilySource::L1L2Trig => "l1l2-trig",
            FamilySource::L1L2TrigStated => "l1l2-trig-stated",
            FamilySource::L1L4Exponential => "l1l4-exponential",
            FamilySource::L1L4Stated => "l1l4-stated",
            FamilySource::M1M2Delay => "m1m2-delay",
            FamilySource::M1M2Trig => "m1m2-trig",
            FamilySource::M1M3Exponential => "m1m3-exponential",
            FamilySource::M1M3Trig => "m1m3-trig",
        }
    }
}

impl fmt::Display for FamilySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyStatus {
    /// Every constraint holds by construction.
    Constructed,
    /// Constraints are reported; nothing is asserted.
    ValidateOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub label: String,
    pub residual: ComplexScalar,
}

impl Constraint {
    pub fn new(label: impl Into<String>, residual: ComplexScalar) -> Self {
        Self {
            label: label.into(),
            residual,
        }
    }
}

/// Label of the sampled equation residual attached to validate-only families.
pub const SAMPLED_RESIDUAL_LABEL: &str = "max |equation residual| on default samples";

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionFamily {
    pub kind: EquationKind,
    pub source: FamilySource,
    pub status: FamilyStatus,
    pub f: Expr,
    pub free_params: BTreeMap<String, ComplexScalar>,
    pub constraints: Vec<Constraint>,
    /// An alternative form of the same family, reported alongside.
    pub secondary: Option<Box<SolutionFamily>>,
}

impl SolutionFamily {
    fn new(kind: EquationKind, source: FamilySource, status: FamilyStatus, f: Expr) -> Self {
        Self {
            kind,
            source,
            status,
            f,
            free_params: BTreeMap::new(),
            constraints: Vec::new(),
            secondary: None,
        }
    }

    fn param(mut self, name: &str, value: ComplexScalar) -> Self {
        self.free_params.insert(name.to_string(), value);
        self
    }

    fn constraint(mut self, label: &str, residual: ComplexScalar) -> Self {
        self.constraints.push(Constraint::new(label, residual));
        self
    }

    /// Largest constraint residual modulus (0 when there are none).
    pub fn max_constraint_residual(&self) -> f64 {
        self.constraints
            .iter()
            .map(|k| k.residual.norm())
            .fold(0.0, f64::max)
    }

    pub fn constraint_residual(&self, label: &str) -> Option<ComplexScalar> {
        self.constraints
            .iter()
            .find(|k| k.label == label)
            .map(|k| k.residual)
    }
}

/// Max equation residual over the default sample set; evaluation failures
/// count as infinite.
pub(crate) fn sampled_residual(
    kind: &EquationKind,
    q: &QuadraticForm,
    f: &Expr,
    cfg: &ToleranceConfig,
) -> Result<f64> {
    let report = verify(kind, q, f, &SampleSpec::default(), cfg)?;
    Ok(if report.evaluation_failures > 0 {
        f64::INFINITY
    } else {
        report.max_abs_residual
    })
}

pub(crate) fn real(x: f64) -> ComplexScalar {
    c(x, 0.0)
}
