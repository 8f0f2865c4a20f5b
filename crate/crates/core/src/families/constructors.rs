use std::f64::consts::PI;

use super::{
    real, sampled_residual, solve_k_pair, FamilySource, FamilyStatus, KPair, SolutionFamily,
    SAMPLED_RESIDUAL_LABEL,
};
use crate::conic::{Branch, NormalForm};
use crate::error::{Error, Result};
use crate::expr::{Expr, Shift};
use crate::numerics::{
    c, lambert_w0, poly_eval, poly_roots, principal_log, ComplexScalar, ToleranceConfig, I, ONE,
};
use crate::verify::EquationKind;

pub const DELAY_EXPONENT_LABEL: &str = "lambda + exp(lambda*s0)";
pub const SHIFT_IDENTITY_LABEL: &str = "exp(c1 + A*c2) + 1";

fn k(v: ComplexScalar) -> Expr {
    Expr::constant(v)
}

fn kpair_constraints(family: SolutionFamily, nf: &NormalForm, pair: &KPair) -> SolutionFamily {
    family
        .constraint("k1^2 + k2^2 - 1", pair.unit_residual())
        .constraint("k1*r1 - k2*r2 + r3", pair.consistency_residual())
        .constraint("P(A0, A0)", nf.form.eval(pair.a0, pair.a0))
}

fn with_sampled_residual(
    mut family: SolutionFamily,
    nf: &NormalForm,
    cfg: &ToleranceConfig,
) -> Result<SolutionFamily> {
    let r = sampled_residual(&family.kind, &nf.form, &family.f, cfg)?;
    family
        .constraints
        .push(super::Constraint::new(SAMPLED_RESIDUAL_LABEL, real(r)));
    Ok(family)
}

/// `e^(-(z1+z2))`, the common kernel of `L1` and `L2`.
fn sum_kernel() -> Expr {
    (-(Expr::z1() + Expr::z2())).exp()
}

/// `A0 + r4 e^(-(z1+z2))`.
pub fn l1l2_exponential_family(
    nf: &NormalForm,
    ksign: Branch,
    r4: ComplexScalar,
    cfg: &ToleranceConfig,
) -> Result<SolutionFamily> {
    let pair = solve_k_pair(nf, ksign, cfg)?;
    let f = k(pair.a0) + k(r4) * sum_kernel();
    let family = SolutionFamily::new(
        EquationKind::l1l2(),
        FamilySource::L1L2Exponential,
        FamilyStatus::Constructed,
        f,
    )
    .param("A0", pair.a0)
    .param("R4", r4);
    Ok(kpair_constraints(family, nf, &pair))
}

/// `P sin h + Q cos h + r6 e^(-(z1+z2)) + t2` with `h = p z1 + q z2 + r5`.
///
/// Matching `L1 f` and `L2 f` against the two parametric coordinates gives
/// `p = R12/det`, `q = R11/det` with `det = d11 e12 + d12 e11` and
/// `P = (d11 - e11)/(p - q)`, `Q = (d12 + e12)/(p - q)`. The usual stated
/// form with amplitudes `(e11 +- e12)/2` and frequency `R12/R11` only solves
/// the equation in special cases; it is attached as the secondary family with
/// its sampled residual.
pub fn l1l2_trig_family(
    nf: &NormalForm,
    r5: ComplexScalar,
    r6: ComplexScalar,
    cfg: &ToleranceConfig,
) -> Result<SolutionFamily> {
    let gap = (nf.t1 - nf.t2).norm();
    if gap > cfg.abs_tol * (1.0 + nf.t1.norm() + nf.t2.norm()) {
        return Err(Error::HypothesisViolated(format!(
            "the trig family needs t1 = t2, got |t1 - t2| = {gap:e}"
        )));
    }
    let (d11, d12, e11, e12) = (nf.d11, nf.d12, nf.e11, nf.e12);
    let r11 = e11 * (d11 - e11) - e12 * (d12 + e12);
    let r12 = d11 * (d11 - e11) + d12 * (d12 + e12);
    let det = d11 * e12 + d12 * e11;
    let p = r12 / det;
    let q = r11 / det;
    if det.norm() <= cfg.abs_tol
        || (p - q).norm() <= cfg.abs_tol
        || !crate::numerics::is_finite(p - q)
    {
        return Err(Error::DegenerateFrequency(format!(
            "frequencies coincide (p - q = {})",
            p - q
        )));
    }
    let amp_sin = (d11 - e11) / (p - q);
    let amp_cos = (d12 + e12) / (p - q);
    let h = k(p) * Expr::z1() + k(q) * Expr::z2() + k(r5);
    let f = k(amp_sin) * h.clone().sin() + k(amp_cos) * h.cos() + k(r6) * sum_kernel() + k(nf.t2);

    // the equations the coefficients were solved from
    let x_sin = amp_sin - p * amp_cos + d12;
    let x_cos = amp_cos + p * amp_sin - d11;
    let y_sin = amp_sin - q * amp_cos - e12;
    let y_cos = amp_cos + q * amp_sin - e11;

    let family = SolutionFamily::new(
        EquationKind::l1l2(),
        FamilySource::L1L2Trig,
        FamilyStatus::Constructed,
        f,
    )
    .param("R5", r5)
    .param("R6", r6)
    .param("p", p)
    .param("q", q)
    .constraint("t1 - t2", nf.t1 - nf.t2)
    .constraint("L1 f: sin coefficient", x_sin)
    .constraint("L1 f: cos coefficient", x_cos)
    .constraint("L2 f: sin coefficient", y_sin)
    .constraint("L2 f: cos coefficient", y_cos);

    let mut family = family;
    family.secondary = Some(Box::new(l1l2_trig_stated(nf, r5, r6, r11, r12, cfg)?));
    Ok(family)
}

fn l1l2_trig_stated(
    nf: &NormalForm,
    r5: ComplexScalar,
    r6: ComplexScalar,
    r11: ComplexScalar,
    r12: ComplexScalar,
    cfg: &ToleranceConfig,
) -> Result<SolutionFamily> {
    let omega = r12 / r11;
    let h = k(omega) * Expr::z1() + Expr::z2() + k(r5);
    let f = k((nf.e11 + nf.e12) / 2.0) * h.clone().sin()
        + k((nf.e11 - nf.e12) / 2.0) * h.cos()
        + k(r6) * sum_kernel()
        + k(nf.t2);
    let family = SolutionFamily::new(
        EquationKind::l1l2(),
        FamilySource::L1L2TrigStated,
        FamilyStatus::ValidateOnly,
        f,
    )
    .param("R5", r5)
    .param("R6", r6)
    .param("omega", omega);
    with_sampled_residual(family, nf, cfg)
}

/// `A0 + b e^(z2 - z1)`; `e^(z2 - z1)` is killed by both `L1` and `L4`.
///
/// The secondary family is `-A0 + b e^(z1 - z2)` with its sampled residual.
pub fn l1l4_exponential_family(
    nf: &NormalForm,
    ksign: Branch,
    b: ComplexScalar,
    cfg: &ToleranceConfig,
) -> Result<SolutionFamily> {
    let pair = solve_k_pair(nf, ksign, cfg)?;
    let f = k(pair.a0) + k(b) * (Expr::z2() - Expr::z1()).exp();
    let family = SolutionFamily::new(
        EquationKind::l1l4(),
        FamilySource::L1L4Exponential,
        FamilyStatus::Constructed,
        f,
    )
    .param("A0", pair.a0)
    .param("B11", b);
    let mut family = kpair_constraints(family, nf, &pair);

    let stated = SolutionFamily::new(
        EquationKind::l1l4(),
        FamilySource::L1L4Stated,
        FamilyStatus::ValidateOnly,
        -k(pair.a0) + k(b) * (Expr::z1() - Expr::z2()).exp(),
    )
    .param("A0", pair.a0)
    .param("B11", b);
    family.secondary = Some(Box::new(with_sampled_residual(stated, nf, cfg)?));
    Ok(family)
}

/// `psi(z1 + z2)` with `psi(s) = A0 + mu e^(lambda s)` and
/// `lambda + e^(lambda s0) = 0`, `s0 = c1 + c2`, so that
/// `psi'(s) + psi(s + s0) = A0`.
///
/// `lambda = -W0(s0)/s0`, or `-1` when `s0 = 0`.
pub fn m1m2_delay_family(
    nf: &NormalForm,
    shift: Shift,
    ksign: Branch,
    mu: ComplexScalar,
    cfg: &ToleranceConfig,
) -> Result<SolutionFamily> {
    let kind = EquationKind::m1m2(shift)?;
    let pair = solve_k_pair(nf, ksign, cfg)?;
    let s0 = shift.sum();
    let lambda = if s0 == c(0.0, 0.0) {
        -ONE
    } else {
        -lambert_w0(s0, cfg).map_err(|e| Error::LambertFailure(e.to_string()))? / s0
    };
    let f = k(pair.a0) + k(mu) * (k(lambda) * (Expr::z1() + Expr::z2())).exp();
    let family = SolutionFamily::new(kind, FamilySource::M1M2Delay, FamilyStatus::Constructed, f)
        .param("A0", pair.a0)
        .param("mu", mu)
        .param("lambda", lambda)
        .constraint(DELAY_EXPONENT_LABEL, lambda + (lambda * s0).exp());
    Ok(kpair_constraints(family, nf, &pair))
}

/// Residuals of the two conditions on `(alpha1, alpha2)` for the M1M2 trig
/// template: the cleared `e^(2iL(c))` relation and the quadratic relation.
pub fn m1m2_trig_constraints(
    nf: &NormalForm,
    shift: Shift,
    alpha1: ComplexScalar,
    alpha2: ComplexScalar,
) -> (ComplexScalar, ComplexScalar) {
    let (d11, d12, e11, e12) = (nf.d11, nf.d12, nf.e11, nf.e12);
    let lc = alpha1 * shift.c1 + alpha2 * shift.c2;
    let g = (e11 + I * e12) * alpha1 - (d11 - I * d12) * alpha2;
    let h = (d11 + I * d12) * alpha2 - (e11 - I * e12) * alpha1;
    let exponential = (2.0 * I * lc).exp() * g - h;
    let tail = I * (d11 - e11) + (d12 + e12);
    let quadratic = (e11 * e11 + e12 * e12) * alpha1 * alpha1
        + (d11 * d11 + d12 * d12) * alpha2 * alpha2
        - 2.0 * (d11 * e11 - d12 * e12) * alpha1 * alpha2
        + tail * tail;
    (exponential, quadratic)
}

/// Validate-only trig template for M1M2:
///
/// ```text
/// f = (d11-e11)/(a1-a2) sin(L+B) + (d12+e12)/(a1-a2) cos(L+B) + (t1-t2) z1 + psi1
/// ```
///
/// with `L = a1 z1 + a2 z2` and a caller-supplied `psi1`.
pub fn m1m2_trig_template(
    nf: &NormalForm,
    shift: Shift,
    alpha1: ComplexScalar,
    alpha2: ComplexScalar,
    bconst: ComplexScalar,
    psi1: &Expr,
    cfg: &ToleranceConfig,
) -> Result<SolutionFamily> {
    let kind = EquationKind::m1m2(shift)?;
    let gap = alpha1 - alpha2;
    if gap.norm() <= cfg.abs_tol {
        return Err(Error::DegenerateDenominator("alpha1 = alpha2".into()));
    }
    let phase = k(alpha1) * Expr::z1() + k(alpha2) * Expr::z2() + k(bconst);
    let f = k((nf.d11 - nf.e11) / gap) * phase.clone().sin()
        + k((nf.d12 + nf.e12) / gap) * phase.cos()
        + k(nf.t1 - nf.t2) * Expr::z1()
        + psi1.clone();
    let (exponential, quadratic) = m1m2_trig_constraints(nf, shift, alpha1, alpha2);
    let family = SolutionFamily::new(kind, FamilySource::M1M2Trig, FamilyStatus::ValidateOnly, f)
        .param("alpha1", alpha1)
        .param("alpha2", alpha2)
        .param("B", bconst)
        .constraint("exp(2i L(c)) relation", exponential)
        .constraint("quadratic relation", quadratic);
    with_sampled_residual(family, nf, cfg)
}

/// `A0 + e^(z1 + A z2 + B)` with `A = (2 k pi i + s pi i - c1)/c2`, so that
/// `e^(c1 + A c2) = -1` and the exponential is killed by `M1` and `M3`.
pub fn m1m3_exponential_family(
    nf: &NormalForm,
    shift: Shift,
    k_index: i64,
    sign: Branch,
    ksign: Branch,
    bconst: ComplexScalar,
    cfg: &ToleranceConfig,
) -> Result<SolutionFamily> {
    if shift.c2 == c(0.0, 0.0) {
        return Err(Error::ZeroC2);
    }
    let kind = EquationKind::m1m3(shift)?;
    let pair = solve_k_pair(nf, ksign, cfg)?;
    let a = (c(0.0, (2.0 * k_index as f64 + sign.sign()) * PI) - shift.c1) / shift.c2;
    let f = k(pair.a0) + (Expr::z1() + k(a) * Expr::z2() + k(bconst)).exp();
    let family = SolutionFamily::new(
        kind,
        FamilySource::M1M3Exponential,
        FamilyStatus::Constructed,
        f,
    )
    .param("A0", pair.a0)
    .param("A", a)
    .param("B", bconst)
    .param("k", real(k_index as f64))
    .constraint(SHIFT_IDENTITY_LABEL, (shift.c1 + a * shift.c2).exp() + 1.0);
    Ok(kpair_constraints(family, nf, &pair))
}

/// Coefficients, constant term first, of the quartic in `alpha1` attached to
/// the M1M3 trig template.
pub fn m1m3_quartic(nf: &NormalForm) -> [ComplexScalar; 5] {
    let (d11, d12, e11, e12) = (nf.d11, nf.d12, nf.e11, nf.e12);
    [
        (I * d11 + d12) - (I * e11 - e12),
        c(0.0, 0.0),
        e11 * e11 + e12 * e12,
        2.0 * (d11 * e12 + d12 * e11),
        d11 * d11 + d12 * d12,
    ]
}

/// Validate-only trig templates for M1M3, one per admissible root `alpha1`
/// of [`m1m3_quartic`]:
///
/// ```text
/// f = p e^(z1 + z2 Log(-e^(-c1))/c2) + R11 sin(L(z) - L(c) + B) + R12 cos(L(z) - L(c) + B)
/// ```
///
/// `L(c)` is taken from the principal log of the `e^(2iL(c))` ratio and
/// `alpha2 = (L(c) - alpha1 c1)/c2`. Other log branches shift `L(c)` by
/// multiples of `pi` and are not emitted.
pub fn m1m3_trig_templates(
    nf: &NormalForm,
    shift: Shift,
    bconst: ComplexScalar,
    pconst: ComplexScalar,
    cfg: &ToleranceConfig,
) -> Result<Vec<SolutionFamily>> {
    if shift.c2 == c(0.0, 0.0) {
        return Err(Error::ZeroC2);
    }
    let kind = EquationKind::m1m3(shift)?;
    let (d11, d12, e11, e12) = (nf.d11, nf.d12, nf.e11, nf.e12);
    let quartic = m1m3_quartic(nf);
    let roots = poly_roots(&quartic, cfg)?;
    let kk = (I * d11 + d12) - (I * e11 - e12);

    let periodic_rate = principal_log(-(-shift.c1).exp())? / shift.c2;
    let periodic = k(pconst) * (Expr::z1() + k(periodic_rate) * Expr::z2()).exp();

    let mut families = Vec::new();
    let mut amplitude_degenerate = 0;
    for alpha1 in roots {
        let norm = alpha1 * alpha1 + 1.0;
        if norm.norm() <= cfg.abs_tol {
            amplitude_degenerate += 1;
            continue;
        }
        let num = (I * d11 - d12) * alpha1 - (e11 - I * e12);
        let den = (I * d11 + d12) * alpha1 + (I * e12 + e11);
        if den.norm() <= cfg.abs_tol || num.norm() <= cfg.abs_tol {
            continue;
        }
        let ratio = num / den;
        let lc = principal_log(ratio)? / (2.0 * I);
        let alpha2 = (lc - alpha1 * shift.c1) / shift.c2;
        let r11 = ((d11 * alpha1 + e12) - alpha1 * (d12 * alpha1 + e11)) / norm;
        let r12 = ((d12 * alpha1 + e11) + alpha1 * (d11 * alpha1 + e12)) / norm;
        let phase = k(alpha1) * Expr::z1() + k(alpha2) * Expr::z2() - k(lc) + k(bconst);
        let f = periodic.clone() + k(r11) * phase.clone().sin() + k(r12) * phase.cos();

        let first = ((I * d11 + d12) * alpha1 * alpha1 + (I * e12 + e11) * alpha1) / kk
            * (I * lc).exp()
            - 1.0;
        let second = ((I * d11 - d12) * alpha1 * alpha1 - (e11 - I * e12) * alpha1) / kk
            * (-I * lc).exp()
            - 1.0;
        let family =
            SolutionFamily::new(kind, FamilySource::M1M3Trig, FamilyStatus::ValidateOnly, f)
                .param("alpha1", alpha1)
                .param("alpha2", alpha2)
                .param("B", bconst)
                .param("P", pconst)
                .param("R11", r11)
                .param("R12", r12)
                .constraint("quartic in alpha1", poly_eval(&quartic, alpha1))
                .constraint("exp(2i L(c)) - ratio", (2.0 * I * lc).exp() - ratio)
                .constraint("first exponential relation", first)
                .constraint("second exponential relation", second);
        families.push(with_sampled_residual(family, nf, cfg)?);
    }
    if families.is_empty() {
        return Err(if amplitude_degenerate == quartic.len() - 1 {
            Error::DegenerateAmplitude
        } else {
            Error::NoAdmissibleRoot
        });
    }
    Ok(families)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::{reduce, QuadraticForm};
    use crate::numerics::SampleSpec;
    use crate::verify::{verify, Verdict};

    fn binomial() -> NormalForm {
        reduce(
            &QuadraticForm::unit_circle(),
            Branch::Plus,
            &Default::default(),
        )
        .unwrap()
    }

    fn passes(family: &SolutionFamily) -> f64 {
        let report = verify(
            &family.kind,
            &QuadraticForm::unit_circle(),
            &family.f,
            &SampleSpec::default(),
            &ToleranceConfig::default(),
        )
        .unwrap();
        assert!(report.within_tolerance, "{} {report:?}", family.f);
        report.max_abs_residual
    }

    #[test]
    fn l1l2_binomial_exponential() {
        let cfg = ToleranceConfig::default();
        let fam = l1l2_exponential_family(&binomial(), Branch::Plus, ONE, &cfg).unwrap();
        assert_eq!(fam.f.to_string(), "0.7071067811865476 + 1*exp(-(z1+z2))");
        assert!(passes(&fam) < 1e-9);
        let constant =
            l1l2_exponential_family(&binomial(), Branch::Minus, c(0.0, 0.0), &cfg).unwrap();
        assert!(passes(&constant) < 1e-9);
    }

    #[test]
    fn l1l2_binomial_trig() {
        let cfg = ToleranceConfig::default();
        let fam = l1l2_trig_family(&binomial(), c(0.0, 0.0), ONE, &cfg).unwrap();
        assert!(passes(&fam) < 1e-9);
        assert!(fam.max_constraint_residual() < 1e-12);
        let stated = fam.secondary.as_ref().unwrap();
        assert!(
            stated
                .constraint_residual(SAMPLED_RESIDUAL_LABEL)
                .unwrap()
                .norm()
                < 1e-9
        );
    }

    #[test]
    fn l1l2_trig_requires_equal_translation() {
        let cfg = ToleranceConfig::default();
        let q = QuadraticForm::real(1.0, 0.2, 1.5, 0.3, -0.4, -2.0);
        let nf = reduce(&q, Branch::Plus, &cfg).unwrap();
        assert!(matches!(
            l1l2_trig_family(&nf, ONE, ONE, &cfg),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn l1l4_binomial() {
        let cfg = ToleranceConfig::default();
        let fam = l1l4_exponential_family(&binomial(), Branch::Plus, ONE, &cfg).unwrap();
        assert!(passes(&fam) < 1e-9);
        let stated = fam.secondary.as_ref().unwrap();
        assert!(
            stated
                .constraint_residual(SAMPLED_RESIDUAL_LABEL)
                .unwrap()
                .norm()
                > 1e-2
        );
        let constant =
            l1l4_exponential_family(&binomial(), Branch::Plus, c(0.0, 0.0), &cfg).unwrap();
        assert!(passes(&constant) < 1e-9);
    }

    #[test]
    fn m1m2_delay_exponent() {
        let cfg = ToleranceConfig::default();
        let fam =
            m1m2_delay_family(&binomial(), Shift::real(1.0, 0.0), Branch::Plus, ONE, &cfg).unwrap();
        let lambda = fam.free_params["lambda"];
        assert!((lambda.re + 0.567143).abs() < 1e-6);
        assert!(
            fam.constraint_residual(DELAY_EXPONENT_LABEL)
                .unwrap()
                .norm()
                < 1e-10
        );
        assert!(passes(&fam) < 1e-9);

        let fam = m1m2_delay_family(&binomial(), Shift::real(1.0, -1.0), Branch::Plus, ONE, &cfg)
            .unwrap();
        assert_eq!(fam.free_params["lambda"], -ONE);
        assert!(passes(&fam) < 1e-9);
    }

    #[test]
    fn m1m3_shift_identity() {
        let cfg = ToleranceConfig::default();
        let fam = m1m3_exponential_family(
            &binomial(),
            Shift::real(1.0, 2.0),
            0,
            Branch::Plus,
            Branch::Plus,
            c(0.0, 0.0),
            &cfg,
        )
        .unwrap();
        assert!((fam.free_params["A"] - c(-0.5, PI / 2.0)).norm() < 1e-15);
        assert!((fam.free_params["A0"].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(
            fam.constraint_residual(SHIFT_IDENTITY_LABEL)
                .unwrap()
                .norm()
                < 1e-12
        );
        assert!(passes(&fam) < 1e-9);
        assert_eq!(
            m1m3_exponential_family(
                &binomial(),
                Shift::real(1.0, 0.0),
                0,
                Branch::Plus,
                Branch::Plus,
                ONE,
                &cfg
            ),
            Err(Error::ZeroC2)
        );
    }

    #[test]
    fn m1m2_trig_reports_residuals() {
        let cfg = ToleranceConfig::default();
        let fam = m1m2_trig_template(
            &binomial(),
            Shift::real(0.3, 0.7),
            c(0.4, 0.1),
            c(-0.2, 0.5),
            ONE,
            &Expr::real(0.0),
            &cfg,
        )
        .unwrap();
        assert_eq!(fam.status, FamilyStatus::ValidateOnly);
        assert!(
            fam.constraint_residual("quadratic relation")
                .unwrap()
                .norm()
                > 1e-6
        );
        assert!(
            fam.constraint_residual(SAMPLED_RESIDUAL_LABEL)
                .unwrap()
                .norm()
                > 1e-6
        );
        assert!(matches!(
            m1m2_trig_template(
                &binomial(),
                Shift::real(0.3, 0.7),
                ONE,
                ONE,
                ONE,
                &Expr::real(0.0),
                &cfg
            ),
            Err(Error::DegenerateDenominator(_))
        ));
    }

    #[test]
    fn m1m3_trig_quartic_roots() {
        let cfg = ToleranceConfig::default();
        let nf = binomial();
        let families =
            m1m3_trig_templates(&nf, Shift::real(0.5, 1.5), ONE, c(0.0, 0.0), &cfg).unwrap();
        assert!(!families.is_empty());
        for fam in &families {
            assert!(fam.constraint_residual("quartic in alpha1").unwrap().norm() < 1e-8);
            assert!(
                fam.constraint_residual("exp(2i L(c)) - ratio")
                    .unwrap()
                    .norm()
                    < 1e-10
            );
        }
        let verdicts: Vec<_> = families
            .iter()
            .map(|f| {
                verify(&f.kind, &nf.form, &f.f, &SampleSpec::default(), &cfg)
                    .unwrap()
                    .verdict
            })
            .collect();
        assert!(verdicts.iter().all(|v| *v != Verdict::Inconclusive));
    }
}
