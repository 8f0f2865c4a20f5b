use clap::{Args, Parser, Subcommand};
use quadfermat_core::{QuadraticForm, Result, SampleSpec, ToleranceConfig};

use crate::config::{
    parse_complex, parse_param, parse_shift, Command, FamilyCase, JobConfig, OutputFormat,
};

#[derive(Debug, Parser)]
#[command(
    name = "quadfermat",
    version,
    about = "Entire solutions of quadratic Fermat-type PDEs and PDDEs in two complex variables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Classify the quadratic form by its discriminants.
    Classify(JobArgs),
    /// Reduce the form to the unit circle and print the normal form.
    Reduce(JobArgs),
    /// Construct a solution family and verify it.
    Solve(JobArgs),
    /// Verify a candidate expression against an equation.
    Verify(JobArgs),
    /// Compare symbolic and finite-difference derivatives of a candidate.
    CheckDerivatives(JobArgs),
    /// Search exponential and trig templates for an L1L3 solution.
    SweepNonexistence(JobArgs),
}

impl Sub {
    pub fn into_parts(self) -> (Command, JobArgs) {
        match self {
            Sub::Classify(a) => (Command::Classify, a),
            Sub::Reduce(a) => (Command::Reduce, a),
            Sub::Solve(a) => (Command::Solve, a),
            Sub::Verify(a) => (Command::Verify, a),
            Sub::CheckDerivatives(a) => (Command::CheckDerivatives, a),
            Sub::SweepNonexistence(a) => (Command::SweepNonexistence, a),
        }
    }
}

/// Complex values are written `re[+im i]`, e.g. `0.5+0.25i`.
#[derive(Debug, Args)]
pub struct JobArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub gamma: String,
    /// Constant term C.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub cc: String,

    /// l1l2, l1l3, l1l4, m1m2 or m1m3.
    #[arg(long)]
    pub kind: Option<String>,
    /// Shift `c1,c2` for m1m2 and m1m3.
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<String>,
    /// Conic branch: plus or minus.
    #[arg(long, default_value = "plus")]
    pub branch: String,
    /// Root of the K-pair quadratic: plus or minus.
    #[arg(long, default_value = "plus")]
    pub ksign: String,
    /// Sign of the odd multiple of pi*i in the m1m3 exponent.
    #[arg(long, default_value = "plus")]
    pub esign: String,
    /// Family built by `solve`.
    #[arg(long, value_enum)]
    pub case: Option<FamilyCase>,
    /// Free parameter NAME=VALUE; repeatable.
    #[arg(long = "param", allow_hyphen_values = true)]
    pub params: Vec<String>,
    /// Candidate expression in z1, z2.
    #[arg(long, allow_hyphen_values = true)]
    pub candidate: Option<String>,

    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 2.0)]
    pub radius: f64,
    /// Defaults to 42.
    #[arg(long, env = "QUADFERMAT_SEED")]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1e-9)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub fd_step: f64,
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,

    /// Emit a JSON report.
    #[arg(long)]
    pub json: bool,
}

pub const DEFAULT_SEED: u64 = 42;

impl JobArgs {
    pub fn into_config(self, command: Command) -> Result<JobConfig> {
        let form = QuadraticForm::new(
            parse_complex(&self.a)?,
            parse_complex(&self.alpha)?,
            parse_complex(&self.b)?,
            parse_complex(&self.beta)?,
            parse_complex(&self.gamma)?,
            parse_complex(&self.cc)?,
        );
        let mut cfg = JobConfig::new(command, form);
        cfg.kind = self.kind.as_deref().map(str::parse).transpose()?;
        cfg.shift = self.shift.as_deref().map(parse_shift).transpose()?;
        cfg.branch = self.branch.parse()?;
        cfg.ksign = self.ksign.parse()?;
        cfg.esign = self.esign.parse()?;
        cfg.case = self.case;
        for p in &self.params {
            let (name, value) = parse_param(p)?;
            cfg.params.insert(name, value);
        }
        cfg.candidate = self.candidate;
        cfg.samples = SampleSpec::new(self.samples, self.radius, self.seed.unwrap_or(DEFAULT_SEED));
        cfg.tol = ToleranceConfig {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            fd_step: self.fd_step,
            max_iter: self.max_iter,
        };
        cfg.output = if self.json {
            OutputFormat::Json
        } else {
            OutputFormat::Text
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
