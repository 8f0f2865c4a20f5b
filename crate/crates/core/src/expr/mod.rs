//! Immutable expression trees over two complex variables.
//!
//! Trees are built either with [`parse`] or with the constructors and
//! arithmetic operators on [`Expr`]. The operators build nodes verbatim; call
//! [`simplify`] when a smaller tree is wanted. [`differentiate`] and [`shift`]
//! return simplified trees.

mod calculus;
mod eval;
mod parse;
mod render;
mod simplify;

use std::fmt;
use std::ops;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{c, ComplexScalar};

pub use calculus::{differentiate, shift};
pub use eval::{evaluate, evaluate_with};
pub use parse::parse;
pub use render::render;
pub use simplify::simplify;

/// One of the two independent variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    Z1,
    Z2,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::Z1 => "z1",
            Var::Z2 => "z2",
        })
    }
}

/// A constant translation `(z1, z2) -> (z1 + c1, z2 + c2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shift {
    pub c1: ComplexScalar,
    pub c2: ComplexScalar,
}

impl Shift {
    pub fn new(c1: ComplexScalar, c2: ComplexScalar) -> Self {
        Self { c1, c2 }
    }

    pub fn real(c1: f64, c2: f64) -> Self {
        Self::new(c(c1, 0.0), c(c2, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.c1 == c(0.0, 0.0) && self.c2 == c(0.0, 0.0)
    }

    /// The shift in the opposite direction.
    pub fn inverse(&self) -> Self {
        Self::new(-self.c1, -self.c2)
    }

    pub fn sum(&self) -> ComplexScalar {
        self.c1 + self.c2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(ComplexScalar),
    Var(Var),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Neg(Arc<Expr>),
    Exp(Arc<Expr>),
    Sin(Arc<Expr>),
    Cos(Arc<Expr>),
    /// `base ^ exponent` with a constant exponent, on the principal branch.
    Pow(Arc<Expr>, ComplexScalar),
}

impl Expr {
    pub fn constant(value: ComplexScalar) -> Self {
        Expr::Const(value)
    }

    pub fn real(value: f64) -> Self {
        Expr::Const(c(value, 0.0))
    }

    pub fn z1() -> Self {
        Expr::Var(Var::Z1)
    }

    pub fn z2() -> Self {
        Expr::Var(Var::Z2)
    }

    pub fn var(v: Var) -> Self {
        Expr::Var(v)
    }

    pub fn exp(self) -> Self {
        Expr::Exp(Arc::new(self))
    }

    pub fn sin(self) -> Self {
        Expr::Sin(Arc::new(self))
    }

    pub fn cos(self) -> Self {
        Expr::Cos(Arc::new(self))
    }

    pub fn pow(self, exponent: ComplexScalar) -> Self {
        Expr::Pow(Arc::new(self), exponent)
    }

    pub fn as_const(&self) -> Option<ComplexScalar> {
        match self {
            Expr::Const(v) => Some(*v),
            _ => None,
        }
    }

    /// True if neither variable occurs in the tree.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Var(_) => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_constant() && b.is_constant()
            }
            Expr::Neg(a) | Expr::Exp(a) | Expr::Sin(a) | Expr::Cos(a) | Expr::Pow(a, _) => {
                a.is_constant()
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + match self {
            Expr::Const(_) | Expr::Var(_) => 0,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.size() + b.size()
            }
            Expr::Neg(a) | Expr::Exp(a) | Expr::Sin(a) | Expr::Cos(a) | Expr::Pow(a, _) => a.size(),
        }
    }

    /// Reject trees that are not syntactically entire: any division, or a
    /// power whose exponent is not a non-negative integer.
    pub fn check_entire(&self) -> Result<()> {
        match self {
            Expr::Const(_) | Expr::Var(_) => Ok(()),
            Expr::Div(..) => Err(Error::NotEntire("division".into())),
            Expr::Pow(a, p) => {
                if p.im != 0.0 || p.re < 0.0 || p.re.fract() != 0.0 {
                    return Err(Error::NotEntire(format!("power with exponent {p}")));
                }
                a.check_entire()
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.check_entire()?;
                b.check_entire()
            }
            Expr::Neg(a) | Expr::Exp(a) | Expr::Sin(a) | Expr::Cos(a) => a.check_entire(),
        }
    }

    pub fn differentiate(&self, v: Var) -> Expr {
        differentiate(self, v)
    }

    pub fn shift(&self, s: Shift) -> Expr {
        shift(self, s)
    }

    pub fn simplify(&self) -> Expr {
        simplify(self)
    }

    pub fn eval(&self, z1: ComplexScalar, z2: ComplexScalar) -> Result<ComplexScalar> {
        evaluate(self, z1, z2)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl From<ComplexScalar> for Expr {
    fn from(v: ComplexScalar) -> Self {
        Expr::Const(v)
    }
}

impl From<f64> for Expr {
    fn from(v: f64) -> Self {
        Expr::real(v)
    }
}

impl From<Var> for Expr {
    fn from(v: Var) -> Self {
        Expr::Var(v)
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl<R: Into<Expr>> ops::$trait<R> for Expr {
            type Output = Expr;
            fn $method(self, rhs: R) -> Expr {
                Expr::$variant(Arc::new(self), Arc::new(rhs.into()))
            }
        }

        impl<R: Into<Expr>> ops::$trait<R> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: R) -> Expr {
                Expr::$variant(Arc::new(self.clone()), Arc::new(rhs.into()))
            }
        }
    };
}

binary_op!(Add, add, Add);
binary_op!(Sub, sub, Sub);
binary_op!(Mul, mul, Mul);
binary_op!(Div, div, Div);

impl From<&Expr> for Expr {
    fn from(e: &Expr) -> Self {
        e.clone()
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Arc::new(self))
    }
}

impl ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Arc::new(self.clone()))
    }
}
