use std::collections::BTreeMap;

use clap::ValueEnum;
use quadfermat_core::{
    Branch, ComplexScalar, EquationKind, EquationTag, Error, Expr, QuadraticForm, Result,
    SampleSpec, Shift, ToleranceConfig,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Classify,
    Reduce,
    Solve,
    Verify,
    CheckDerivatives,
    SweepNonexistence,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Reduce => "reduce",
            Command::Solve => "solve",
            Command::Verify => "verify",
            Command::CheckDerivatives => "check-derivatives",
            Command::SweepNonexistence => "sweep-nonexistence",
        }
    }
}

/// Which family `solve` constructs. Each equation kind has a default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FamilyCase {
    Exponential,
    Trig,
    Delay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Free parameters `solve` understands.
pub const PARAM_NAMES: [&str; 10] = [
    "R4", "R5", "R6", "B11", "mu", "B", "k", "alpha1", "alpha2", "P",
];

/// Everything needed to reproduce one run. Deserializes from the JSON report
/// (unknown fields are ignored), which is how reports are replayed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: Command,
    pub form: QuadraticForm,
    #[serde(default)]
    pub kind: Option<EquationTag>,
    #[serde(default)]
    pub shift: Option<Shift>,
    /// Conic branch.
    #[serde(default)]
    pub branch: Branch,
    /// Root of the K-pair quadratic.
    #[serde(default)]
    pub ksign: Branch,
    /// Sign of the odd multiple of `pi i` in the M1M3 exponential family.
    #[serde(default)]
    pub esign: Branch,
    #[serde(default)]
    pub case: Option<FamilyCase>,
    #[serde(default)]
    pub params: BTreeMap<String, ComplexScalar>,
    #[serde(default)]
    pub candidate: Option<String>,
    #[serde(default)]
    pub samples: SampleSpec,
    #[serde(default)]
    pub tol: ToleranceConfig,
    #[serde(default, skip_serializing)]
    pub output: OutputFormat,
}

impl JobConfig {
    pub fn new(command: Command, form: QuadraticForm) -> Self {
        Self {
            command,
            form,
            kind: None,
            shift: None,
            branch: Branch::Plus,
            ksign: Branch::Plus,
            esign: Branch::Plus,
            case: None,
            params: BTreeMap::new(),
            candidate: None,
            samples: SampleSpec::default(),
            tol: ToleranceConfig::default(),
            output: OutputFormat::Text,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.form.validate()?;
        self.samples.validate()?;
        self.tol.validate()?;
        for name in self.params.keys() {
            if !PARAM_NAMES.contains(&name.as_str()) {
                return Err(Error::InvalidConfig(format!(
                    "unknown parameter {name:?}; expected one of {PARAM_NAMES:?}"
                )));
            }
        }
        match self.command {
            Command::Solve | Command::Verify if self.kind.is_none() => {
                return Err(Error::InvalidConfig(format!(
                    "{} needs --kind",
                    self.command.name()
                )))
            }
            Command::Verify | Command::CheckDerivatives if self.candidate.is_none() => {
                return Err(Error::InvalidConfig(format!(
                    "{} needs --candidate",
                    self.command.name()
                )))
            }
            Command::SweepNonexistence if self.kind.is_some_and(|k| k != EquationTag::L1L3) => {
                return Err(Error::InvalidConfig(
                    "the non-existence sweep is for l1l3 only".into(),
                ))
            }
            _ => {}
        }
        self.equation().map(|_| ())
    }

    /// The equation kind with its shift, checked.
    pub fn equation(&self) -> Result<Option<EquationKind>> {
        match self.kind {
            Some(tag) => EquationKind::new(tag, self.shift).map(Some),
            None if self.shift.is_some() && self.command != Command::CheckDerivatives => Err(
                Error::InvalidConfig("--shift given without an equation kind".into()),
            ),
            None => Ok(None),
        }
    }

    pub fn param(&self, name: &str, default: ComplexScalar) -> ComplexScalar {
        self.params.get(name).copied().unwrap_or(default)
    }

    pub fn required_param(&self, name: &str) -> Result<ComplexScalar> {
        self.params
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidConfig(format!("this case needs --param {name}=VALUE")))
    }
}

/// A complex literal such as `-1`, `2i`, `0.5+0.25i` or `1e-3-2i`.
pub fn parse_complex(text: &str) -> Result<ComplexScalar> {
    let e: Expr = text.parse()?;
    let z = e
        .simplify()
        .as_const()
        .ok_or_else(|| Error::InvalidConfig(format!("{text:?} is not a complex constant")))?;
    // drop signed zeros left by negation
    Ok(ComplexScalar::new(z.re + 0.0, z.im + 0.0))
}

/// `c1,c2`, each a complex literal.
pub fn parse_shift(text: &str) -> Result<Shift> {
    let (c1, c2) = text
        .split_once(',')
        .ok_or_else(|| Error::InvalidConfig(format!("shift {text:?} is not of the form c1,c2")))?;
    Ok(Shift::new(
        parse_complex(c1.trim())?,
        parse_complex(c2.trim())?,
    ))
}

/// `NAME=VALUE`.
pub fn parse_param(text: &str) -> Result<(String, ComplexScalar)> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| Error::InvalidConfig(format!("parameter {text:?} is not NAME=VALUE")))?;
    Ok((name.trim().to_string(), parse_complex(value.trim())?))
}
