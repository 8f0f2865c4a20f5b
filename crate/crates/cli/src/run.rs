use quadfermat_core::conic::{classify, discriminants, reduce};
use quadfermat_core::families::{
    l1l2_exponential_family, l1l2_trig_family, l1l3_nonexistence_sweep, l1l4_exponential_family,
    m1m2_delay_family, m1m2_trig_template, m1m3_exponential_family, m1m3_trig_templates,
    SAMPLED_RESIDUAL_LABEL,
};
use quadfermat_core::verify::{fd_crosscheck, verify};
use quadfermat_core::{
    EquationKind, EquationTag, Error, ErrorKind, Expr, NormalForm, Result, SolutionFamily, Var,
    Verdict,
};

use crate::config::{Command, FamilyCase, JobConfig};
use crate::report::{error_kind_name, DerivativeCheck, ErrorReport, Report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

/// Largest relative symbolic/finite-difference gap accepted by
/// `check-derivatives`.
pub const FD_THRESHOLD: f64 = 1e-5;

pub fn exit_code_for_error(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Input => EXIT_INPUT,
        ErrorKind::Degenerate => EXIT_DEGENERATE,
        ErrorKind::Numerical => EXIT_FAIL,
    }
}

fn exit_code_for_verdict(v: Verdict) -> i32 {
    if v == Verdict::Pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Run one job. Never panics on bad input; failures are recorded in the
/// report's `error` field and reflected in `exit_code`.
pub fn run(cfg: &JobConfig) -> Report {
    let mut report = Report::new(cfg);
    report.exit_code = match execute(cfg, &mut report) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code_for_error(&e);
            report.error = Some(ErrorReport {
                kind: error_kind_name(e.kind()),
                message: e.to_string(),
            });
            code
        }
    };
    report
}

fn execute(cfg: &JobConfig, report: &mut Report) -> Result<i32> {
    cfg.validate()?;
    let q = &cfg.form;
    report.discriminants = Some(discriminants(q));
    match cfg.command {
        Command::Classify => {
            report.classification = Some(classify(q, &cfg.tol)?);
            Ok(EXIT_PASS)
        }
        Command::Reduce => {
            report.classification = Some(classify(q, &cfg.tol)?);
            report.normal_form = Some(reduce(q, cfg.branch, &cfg.tol)?);
            Ok(EXIT_PASS)
        }
        Command::Solve => {
            let kind = cfg.equation()?.expect("validated");
            report.classification = Some(classify(q, &cfg.tol)?);
            let nf = reduce(q, cfg.branch, &cfg.tol)?;
            report.normal_form = Some(nf);
            let family = build_family(cfg, &nf, &kind)?;
            report.solution = Some((&family).into());
            let v = verify(&kind, q, &family.f, &cfg.samples, &cfg.tol)?;
            report.verification = Some((&v).into());
            Ok(exit_code_for_verdict(v.verdict))
        }
        Command::Verify => {
            let kind = cfg.equation()?.expect("validated");
            let f = candidate(cfg)?;
            let v = verify(&kind, q, &f, &cfg.samples, &cfg.tol)?;
            report.verification = Some((&v).into());
            Ok(exit_code_for_verdict(v.verdict))
        }
        Command::CheckDerivatives => {
            let f = candidate(cfg)?;
            let d = fd_crosscheck(&f, &cfg.samples, &cfg.tol);
            let verdict = if d <= FD_THRESHOLD {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            report.derivatives = Some(DerivativeCheck {
                dz1: f.differentiate(Var::Z1).to_string(),
                dz2: f.differentiate(Var::Z2).to_string(),
                max_rel_discrepancy: d,
                threshold: FD_THRESHOLD,
                verdict,
            });
            Ok(exit_code_for_verdict(verdict))
        }
        Command::SweepNonexistence => {
            let sweep = l1l3_nonexistence_sweep(q, &cfg.samples, &cfg.tol)?;
            // FAIL means no template solved the equation, which is the
            // outcome the sweep is looking for.
            let code = match sweep.verdict {
                Verdict::Fail => EXIT_PASS,
                _ => EXIT_FAIL,
            };
            report.sweep = Some(sweep);
            Ok(code)
        }
    }
}

fn candidate(cfg: &JobConfig) -> Result<Expr> {
    let text = cfg.candidate.as_deref().expect("validated");
    let f: Expr = text.parse()?;
    f.check_entire()?;
    Ok(f)
}

fn integer_param(cfg: &JobConfig, name: &str) -> Result<i64> {
    let v = cfg.param(name, 0.0.into());
    if v.im != 0.0 || v.re.fract() != 0.0 || v.re.abs() > 1e6 {
        return Err(Error::InvalidConfig(format!(
            "{name} must be an integer, got {v}"
        )));
    }
    Ok(v.re as i64)
}

fn build_family(cfg: &JobConfig, nf: &NormalForm, kind: &EquationKind) -> Result<SolutionFamily> {
    let tol = &cfg.tol;
    let one = 1.0.into();
    let zero = 0.0.into();
    let unsupported = |case: FamilyCase| {
        Err(Error::InvalidConfig(format!(
            "no {case:?} family for {}",
            kind.tag
        )))
    };
    match kind.tag {
        EquationTag::L1L2 => match cfg.case.unwrap_or(FamilyCase::Exponential) {
            FamilyCase::Exponential => {
                l1l2_exponential_family(nf, cfg.ksign, cfg.param("R4", one), tol)
            }
            FamilyCase::Trig => {
                l1l2_trig_family(nf, cfg.param("R5", zero), cfg.param("R6", zero), tol)
            }
            other => unsupported(other),
        },
        EquationTag::L1L3 => Err(Error::InvalidConfig(
            "l1l3 has no transcendental family; run sweep-nonexistence".into(),
        )),
        EquationTag::L1L4 => match cfg.case.unwrap_or(FamilyCase::Exponential) {
            FamilyCase::Exponential => {
                l1l4_exponential_family(nf, cfg.ksign, cfg.param("B11", one), tol)
            }
            other => unsupported(other),
        },
        EquationTag::M1M2 => {
            let shift = kind.shift.expect("validated");
            match cfg.case.unwrap_or(FamilyCase::Delay) {
                FamilyCase::Delay => {
                    m1m2_delay_family(nf, shift, cfg.ksign, cfg.param("mu", one), tol)
                }
                FamilyCase::Trig => {
                    let psi1 = match &cfg.candidate {
                        Some(text) => text.parse::<Expr>()?,
                        None => Expr::real(0.0),
                    };
                    m1m2_trig_template(
                        nf,
                        shift,
                        cfg.required_param("alpha1")?,
                        cfg.required_param("alpha2")?,
                        cfg.param("B", zero),
                        &psi1,
                        tol,
                    )
                }
                other => unsupported(other),
            }
        }
        EquationTag::M1M3 => {
            let shift = kind.shift.expect("validated");
            match cfg.case.unwrap_or(FamilyCase::Exponential) {
                FamilyCase::Exponential => m1m3_exponential_family(
                    nf,
                    shift,
                    integer_param(cfg, "k")?,
                    cfg.esign,
                    cfg.ksign,
                    cfg.param("B", zero),
                    tol,
                ),
                FamilyCase::Trig => {
                    let families = m1m3_trig_templates(
                        nf,
                        shift,
                        cfg.param("B", zero),
                        cfg.param("P", zero),
                        tol,
                    )?;
                    // report the root whose template comes closest to solving
                    Ok(families
                        .into_iter()
                        .min_by(|x, y| sampled(x).total_cmp(&sampled(y)))
                        .expect("at least one template"))
                }
                other => unsupported(other),
            }
        }
    }
}

fn sampled(f: &SolutionFamily) -> f64 {
    f.constraint_residual(SAMPLED_RESIDUAL_LABEL)
        .map_or(f64::INFINITY, |r| r.re)
}
