//! Random inputs shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use quadfermat_core::conic::discriminants;
use quadfermat_core::{Expr, QuadraticForm, Shift};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cbox(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::new(
        rng.random_range(-radius..=radius),
        rng.random_range(-radius..=radius),
    )
}

/// Complex coefficients in `[-2, 2]^2` with `|Delta|, |D| >= 0.2`.
pub fn random_form(rng: &mut ChaCha8Rng) -> QuadraticForm {
    loop {
        let q = QuadraticForm::new(
            cbox(rng, 2.0),
            cbox(rng, 2.0),
            cbox(rng, 2.0),
            cbox(rng, 2.0),
            cbox(rng, 2.0),
            cbox(rng, 2.0),
        );
        let d = discriminants(&q);
        if d.delta.norm() >= 0.2 && d.dee.norm() >= 0.2 {
            return q;
        }
    }
}

/// `a x^2 + 2 alpha x y + b y^2 = 1` with a well separated spectrum.
pub fn random_trinomial(rng: &mut ChaCha8Rng) -> QuadraticForm {
    let zero = Complex64::new(0.0, 0.0);
    loop {
        let q = QuadraticForm::new(
            cbox(rng, 2.0),
            cbox(rng, 1.0),
            cbox(rng, 2.0),
            zero,
            zero,
            Complex64::new(-1.0, 0.0),
        );
        let d = discriminants(&q);
        let spread = (q.a - q.b) * (q.a - q.b) + 4.0 * q.alpha * q.alpha;
        if d.delta.norm() >= 0.2 && d.dee.norm() >= 0.2 && spread.norm() >= 0.2 {
            return q;
        }
    }
}

pub fn random_shift(rng: &mut ChaCha8Rng, radius: f64) -> Shift {
    loop {
        let s = Shift::new(cbox(rng, radius), cbox(rng, radius));
        if s.c1.norm() + s.c2.norm() > 1e-3 {
            return s;
        }
    }
}

/// An entire expression of bounded depth with modest coefficients.
pub fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.random_bool(0.25) {
        return match rng.random_range(0..3) {
            0 => Expr::z1(),
            1 => Expr::z2(),
            _ => Expr::constant(cbox(rng, 1.0)),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_expr(rng, depth - 1);
    match rng.random_range(0..8) {
        0 => sub(rng) + sub(rng),
        1 => sub(rng) - sub(rng),
        2 => sub(rng) * sub(rng),
        3 => -sub(rng),
        4 => (Expr::constant(cbox(rng, 0.5)) * sub(rng)).exp(),
        5 => sub(rng).sin(),
        6 => sub(rng).cos(),
        _ => sub(rng).pow(Complex64::new(rng.random_range(2..4) as f64, 0.0)),
    }
}
