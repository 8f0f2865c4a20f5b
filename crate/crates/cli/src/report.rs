use std::collections::BTreeMap;
use std::fmt::Write;

use quadfermat_core::conic::Discriminants;
use quadfermat_core::families::{Constraint, SweepReport};
use quadfermat_core::{
    Branch, Classification, ComplexScalar, EquationTag, ErrorKind, FamilyStatus, NormalForm,
    QuadraticForm, SampleSpec, Shift, SolutionFamily, ToleranceConfig, Verdict, VerificationReport,
};
use serde::Serialize;

use crate::config::{Command, FamilyCase, JobConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionReport {
    pub source: String,
    pub status: FamilyStatus,
    pub expr: String,
    pub params: BTreeMap<String, ComplexScalar>,
    pub constraints: Vec<Constraint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secondary: Option<Box<SolutionReport>>,
}

impl From<&SolutionFamily> for SolutionReport {
    fn from(f: &SolutionFamily) -> Self {
        Self {
            source: f.source.label().to_string(),
            status: f.status,
            expr: f.f.to_string(),
            params: f.free_params.clone(),
            constraints: f.constraints.clone(),
            secondary: f.secondary.as_deref().map(|s| Box::new(s.into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationSummary {
    pub max_abs_residual: f64,
    pub mean_abs_residual: f64,
    pub worst_point: Option<[ComplexScalar; 2]>,
    pub verdict: Verdict,
    pub threshold: f64,
    pub within_tolerance: bool,
    pub evaluation_failures: usize,
}

impl From<&VerificationReport> for VerificationSummary {
    fn from(r: &VerificationReport) -> Self {
        Self {
            max_abs_residual: r.max_abs_residual,
            mean_abs_residual: r.mean_abs_residual,
            worst_point: r.worst_point.map(|(z1, z2)| [z1, z2]),
            verdict: r.verdict,
            threshold: r.threshold,
            within_tolerance: r.within_tolerance,
            evaluation_failures: r.evaluation_failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeCheck {
    pub dz1: String,
    pub dz2: String,
    pub max_rel_discrepancy: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: Command,
    pub form: QuadraticForm,
    pub kind: Option<EquationTag>,
    pub shift: Option<Shift>,
    pub branch: Branch,
    pub ksign: Branch,
    pub esign: Branch,
    pub case: Option<FamilyCase>,
    pub params: BTreeMap<String, ComplexScalar>,
    pub candidate: Option<String>,
    pub discriminants: Option<Discriminants>,
    pub classification: Option<Classification>,
    pub normal_form: Option<NormalForm>,
    pub solution: Option<SolutionReport>,
    pub verification: Option<VerificationSummary>,
    pub derivatives: Option<DerivativeCheck>,
    pub sweep: Option<SweepReport>,
    pub error: Option<ErrorReport>,
    pub exit_code: i32,
    pub seed: u64,
    pub samples: SampleSpec,
    pub tol: ToleranceConfig,
}

impl Report {
    pub fn new(cfg: &JobConfig) -> Self {
        Self {
            command: cfg.command,
            form: cfg.form,
            kind: cfg.kind,
            shift: cfg.shift,
            branch: cfg.branch,
            ksign: cfg.ksign,
            esign: cfg.esign,
            case: cfg.case,
            params: cfg.params.clone(),
            candidate: cfg.candidate.clone(),
            discriminants: None,
            classification: None,
            normal_form: None,
            solution: None,
            verification: None,
            derivatives: None,
            sweep: None,
            error: None,
            exit_code: 0,
            seed: cfg.samples.seed,
            samples: cfg.samples,
            tol: cfg.tol,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let f = fmt_complex;
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "command: {}", self.command.name());
        let q = &self.form;
        let _ = writeln!(
            w,
            "form: a={} alpha={} b={} beta={} gamma={} C={}",
            f(q.a),
            f(q.alpha),
            f(q.b),
            f(q.beta),
            f(q.gamma),
            f(q.cc)
        );
        if let Some(k) = self.kind {
            let _ = write!(w, "kind: {k}");
            if let Some(s) = self.shift {
                let _ = write!(w, " shift=({}, {})", f(s.c1), f(s.c2));
            }
            let _ = writeln!(w);
        }
        if let Some(d) = &self.discriminants {
            let _ = writeln!(w, "discriminants: Delta={} D={}", f(d.delta), f(d.dee));
        }
        if let Some(c) = self.classification {
            let _ = writeln!(w, "classification: {c}");
        }
        if let Some(nf) = &self.normal_form {
            let _ = writeln!(w, "branch: {}", nf.branch);
            let _ = writeln!(w, "centre: ({}, {})", f(nf.x1), f(nf.y1));
            let _ = writeln!(w, "rotation: xi={} eta={}", f(nf.xi), f(nf.eta));
            let _ = writeln!(w, "eigenvalues: {} {}", f(nf.a_pm), f(nf.b_mp));
            let _ = writeln!(w, "scales: {} {}", f(nf.scale_u), f(nf.scale_v));
            let _ = writeln!(
                w,
                "x = ({}) cos h - ({}) sin h + ({})",
                f(nf.d11),
                f(nf.d12),
                f(nf.t1)
            );
            let _ = writeln!(
                w,
                "y = ({}) cos h + ({}) sin h + ({})",
                f(nf.e11),
                f(nf.e12),
                f(nf.t2)
            );
        }
        if let Some(s) = &self.solution {
            write_solution(w, s, "");
        }
        if let Some(d) = &self.derivatives {
            let _ = writeln!(w, "d/dz1 = {}", d.dz1);
            let _ = writeln!(w, "d/dz2 = {}", d.dz2);
            let _ = writeln!(
                w,
                "max relative discrepancy: {:e} (threshold {:e})",
                d.max_rel_discrepancy, d.threshold
            );
            let _ = writeln!(w, "verdict: {}", d.verdict);
        }
        if let Some(s) = &self.sweep {
            for t in &s.templates {
                let _ = writeln!(
                    w,
                    "{:<24} {:>6} candidates, min max-residual {:e}",
                    t.template.to_string(),
                    t.candidates,
                    t.min_max_residual
                );
            }
            let _ = writeln!(
                w,
                "constant {}: residual {:e} ({})",
                s.constant_candidate, s.constant_residual, s.constant_verdict
            );
            let _ = writeln!(w, "threshold: {:e}", s.threshold);
            let summary = match s.verdict {
                Verdict::Fail => "no template solves the equation",
                Verdict::Pass => "counterexample found",
                _ => "nothing was tried",
            };
            let _ = writeln!(w, "verdict: {} ({summary})", s.verdict);
        }
        if let Some(v) = &self.verification {
            let _ = writeln!(
                w,
                "max |residual| = {:e}, mean {:e}, threshold {:e} ({} points, radius {}, seed {})",
                v.max_abs_residual,
                v.mean_abs_residual,
                v.threshold,
                self.samples.count,
                self.samples.radius,
                self.seed
            );
            if let Some([z1, z2]) = v.worst_point {
                let _ = writeln!(w, "worst point: ({}, {})", f(z1), f(z2));
            }
            if v.evaluation_failures > 0 {
                let _ = writeln!(w, "evaluation failures: {}", v.evaluation_failures);
            }
            let _ = writeln!(w, "verdict: {}", v.verdict);
        }
        if let Some(e) = &self.error {
            let _ = writeln!(w, "error ({}): {}", e.kind, e.message);
        }
        out
    }
}

fn write_solution(w: &mut String, s: &SolutionReport, indent: &str) {
    let status = match s.status {
        FamilyStatus::Constructed => "constructed",
        FamilyStatus::ValidateOnly => "validate-only",
    };
    let _ = writeln!(w, "{indent}source: {} ({status})", s.source);
    let _ = writeln!(w, "{indent}f = {}", s.expr);
    for (k, v) in &s.params {
        let _ = writeln!(w, "{indent}  {k} = {}", fmt_complex(*v));
    }
    for c in &s.constraints {
        let _ = writeln!(w, "{indent}  [{}] {:e}", c.label, c.residual.norm());
    }
    if let Some(sec) = &s.secondary {
        let _ = writeln!(w, "{indent}secondary:");
        write_solution(w, sec, &format!("{indent}  "));
    }
}

/// `re`, `re+imi` or `re-imi`.
pub fn fmt_complex(z: ComplexScalar) -> String {
    if z.im == 0.0 {
        format!("{}", z.re + 0.0)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re + 0.0, -z.im)
    } else {
        format!("{}+{}i", z.re + 0.0, z.im)
    }
}

pub fn error_kind_name(kind: ErrorKind) -> &'static str {
    match kind {
        ErrorKind::Input => "input",
        ErrorKind::Degenerate => "degenerate",
        ErrorKind::Numerical => "numerical",
    }
}
