pub mod conic;
pub mod error;
pub mod expr;
pub mod families;
pub mod numerics;
pub mod verify;

pub use conic::{Branch, Classification, Discriminants, NormalForm, QuadraticForm};
pub use error::{Error, ErrorKind, Result};
pub use expr::{Expr, Shift, Var};
pub use families::{FamilySource, FamilyStatus, SolutionFamily};
pub use numerics::{ComplexScalar, SampleSpec, ToleranceConfig};
pub use verify::{EquationKind, EquationTag, Operator, Verdict, VerificationReport};
