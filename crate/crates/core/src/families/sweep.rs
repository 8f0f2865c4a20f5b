//! Falsification sweep for the L1L3 equation.
//!
//! Exponential and trig templates that solve the other equations are tried
//! against L1L3 with randomly drawn parameters. A sweep can only ever find a
//! counterexample; failing to find one supports non-existence without proving
//! it.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::solve_k_pair;
use crate::conic::{reduce, Branch, QuadraticForm};
use crate::error::Result;
use crate::expr::{evaluate_with, Expr};
use crate::numerics::{c, sample_points, ComplexScalar, SampleSpec, ToleranceConfig};
use crate::verify::{residual_expr, EquationKind, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TemplateKind {
    /// `A0 + R e^(-(z1+z2))`
    SumExponential,
    /// `A0 + R e^(z2-z1)`
    DifferenceExponential,
    /// `A0 + R e^(z1 + A z2 + B)`
    ShiftedExponential,
    /// `A0 + R e^(l1 z1 + l2 z2)`
    GeneralExponential,
    /// `P sin(p z1 + q z2 + r) + Q cos(p z1 + q z2 + r) + T`
    Trig,
}

impl TemplateKind {
    pub const ALL: [TemplateKind; 5] = [
        TemplateKind::SumExponential,
        TemplateKind::DifferenceExponential,
        TemplateKind::ShiftedExponential,
        TemplateKind::GeneralExponential,
        TemplateKind::Trig,
    ];
}

impl fmt::Display for TemplateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TemplateKind::SumExponential => "sum-exponential",
            TemplateKind::DifferenceExponential => "difference-exponential",
            TemplateKind::ShiftedExponential => "shifted-exponential",
            TemplateKind::GeneralExponential => "general-exponential",
            TemplateKind::Trig => "trig",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemplateResult {
    pub template: TemplateKind,
    pub candidates: usize,
    /// Smallest max-residual over all parameter draws.
    pub min_max_residual: f64,
    /// The candidate achieving it, rendered.
    pub best_candidate: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub templates: Vec<TemplateResult>,
    /// Max residual of the constant `A0`, which solves the algebra but is not
    /// transcendental.
    pub constant_candidate: String,
    pub constant_residual: f64,
    pub constant_verdict: Verdict,
    pub total_candidates: usize,
    /// Residual bound a template would have to meet to count as a solution.
    pub threshold: f64,
    /// `FAIL` when no template solves the equation, `PASS` when one does,
    /// `INCONCLUSIVE` when nothing was tried.
    pub verdict: Verdict,
}

impl SweepReport {
    pub fn min_template_residual(&self) -> f64 {
        self.templates
            .iter()
            .map(|t| t.min_max_residual)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Points at which every candidate is evaluated. Fixed so that sweeps with
/// different parameter seeds are comparable.
const EVAL_POINTS: SampleSpec = SampleSpec {
    count: 40,
    radius: 2.0,
    seed: 0x5eed,
};

fn max_residual(
    q: &QuadraticForm,
    f: &Expr,
    points: &[(ComplexScalar, ComplexScalar)],
    cfg: &ToleranceConfig,
) -> f64 {
    let Ok(r) = residual_expr(&EquationKind::l1l3(), q, f) else {
        return f64::INFINITY;
    };
    let mut worst = 0.0f64;
    for &(z1, z2) in points {
        match evaluate_with(&r, z1, z2, cfg) {
            Ok(v) => worst = worst.max(v.norm()),
            Err(_) => return f64::INFINITY,
        }
    }
    worst
}

fn draw_box(rng: &mut ChaCha8Rng, radius: f64) -> ComplexScalar {
    c(
        rng.random_range(-radius..=radius),
        rng.random_range(-radius..=radius),
    )
}

/// Modulus in `[0.5, 1.5]`, uniform phase.
fn draw_amplitude(rng: &mut ChaCha8Rng) -> ComplexScalar {
    let r = rng.random_range(0.5..=1.5);
    let theta = rng.random_range(-PI..PI);
    ComplexScalar::from_polar(r, theta)
}

fn candidate(template: TemplateKind, a0: ComplexScalar, rng: &mut ChaCha8Rng, radius: f64) -> Expr {
    let k = Expr::constant;
    let (z1, z2) = (Expr::z1(), Expr::z2());
    let amp = draw_amplitude(rng);
    match template {
        TemplateKind::SumExponential => k(a0) + k(amp) * (-(z1 + z2)).exp(),
        TemplateKind::DifferenceExponential => k(a0) + k(amp) * (z2 - z1).exp(),
        TemplateKind::ShiftedExponential => {
            let a = draw_box(rng, radius);
            let b = draw_box(rng, radius);
            k(a0) + k(amp) * (z1 + k(a) * z2 + k(b)).exp()
        }
        TemplateKind::GeneralExponential => {
            let l1 = draw_amplitude(rng);
            let l2 = draw_amplitude(rng);
            k(a0) + k(amp) * (k(l1) * z1 + k(l2) * z2).exp()
        }
        TemplateKind::Trig => {
            let amp2 = draw_amplitude(rng);
            let p = draw_amplitude(rng);
            let q = draw_amplitude(rng);
            let r = draw_box(rng, radius);
            let t = draw_box(rng, radius);
            let h = k(p) * z1 + k(q) * z2 + k(r);
            k(amp) * h.clone().sin() + k(amp2) * h.cos() + k(t)
        }
    }
}

/// Try `sweep.count` parameter draws per template against L1L3 for `form`.
///
/// Amplitudes, exponents and frequencies have modulus in `[0.5, 1.5]` so every
/// template is genuinely non-constant; other parameters are uniform in the
/// box of half-width `sweep.radius`. The constant term of the exponential
/// templates is the K-pair constant of the form.
pub fn l1l3_nonexistence_sweep(
    form: &QuadraticForm,
    sweep: &SampleSpec,
    cfg: &ToleranceConfig,
) -> Result<SweepReport> {
    sweep.validate()?;
    let nf = reduce(form, Branch::Plus, cfg)?;
    let a0 = solve_k_pair(&nf, Branch::Plus, cfg)?.a0;
    let points = sample_points(&EVAL_POINTS);
    let threshold = cfg.abs_tol * (1.0 + form.norm_inf());

    let constant = Expr::constant(a0);
    let constant_residual = max_residual(form, &constant, &points, cfg);

    let templates: Vec<TemplateResult> = TemplateKind::ALL
        .iter()
        .enumerate()
        .map(|(ti, &template)| {
            let mut rng = ChaCha8Rng::seed_from_u64(sweep.seed.wrapping_add(ti as u64));
            let candidates: Vec<Expr> = (0..sweep.count)
                .map(|_| candidate(template, a0, &mut rng, sweep.radius))
                .collect();
            let residuals: Vec<f64> = candidates
                .par_iter()
                .map(|f| max_residual(form, f, &points, cfg))
                .collect();
            let best =
                residuals
                    .iter()
                    .enumerate()
                    .fold(None, |best: Option<(usize, f64)>, (i, &r)| match best {
                        Some((_, b)) if b <= r => best,
                        _ => Some((i, r)),
                    });
            TemplateResult {
                template,
                candidates: candidates.len(),
                min_max_residual: best.map_or(f64::INFINITY, |(_, r)| r),
                best_candidate: best.map(|(i, _)| candidates[i].to_string()),
            }
        })
        .collect();

    let total_candidates = templates.iter().map(|t| t.candidates).sum();
    let solved = templates.iter().any(|t| t.min_max_residual <= threshold);
    let verdict = if total_candidates == 0 {
        Verdict::Inconclusive
    } else if solved {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(SweepReport {
        templates,
        constant_candidate: constant.to_string(),
        constant_residual,
        constant_verdict: Verdict::Constant,
        total_candidates,
        threshold,
        verdict,
    })
}
