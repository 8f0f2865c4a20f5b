use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants are grouped loosely by the module that raises them; [`Error::kind`]
/// buckets them into the three classes the CLI maps onto exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // numerics
    #[error("complex power with zero base and exponent {exponent}")]
    ZeroBase { exponent: String },
    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },
    #[error("polynomial has a zero leading coefficient or degree < 1")]
    DegenerateLeadingCoefficient,
    #[error("invalid numeric configuration: {0}")]
    InvalidConfig(String),

    // expressions
    #[error("syntax error at byte {offset}: expected one of {expected:?}")]
    Syntax {
        offset: usize,
        expected: Vec<String>,
    },
    #[error("division by a value of modulus {modulus:e}")]
    DivisionNearZero { modulus: f64 },
    #[error("expression evaluated to a non-finite value")]
    NonFiniteResult,
    #[error("expression is not entire: {0}")]
    NotEntire(String),

    // conic reduction
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("branch undefined: {0}")]
    BranchUndefined(String),

    // solution families
    #[error("K-system is degenerate (R1^2 + R2^2 = {0:e})")]
    DegenerateKSystem(f64),
    #[error("no K-pair satisfies the consistency constraint (residual {0:e})")]
    NoRealization(f64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("degenerate frequency: {0}")]
    DegenerateFrequency(String),
    #[error("Lambert W failed: {0}")]
    LambertFailure(String),
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),
    #[error("shift component c2 must be nonzero")]
    ZeroC2,
    #[error("no admissible root of the constraint polynomial")]
    NoAdmissibleRoot,
    #[error("degenerate amplitude: every root has alpha1^2 = -1")]
    DegenerateAmplitude,

    // verification
    #[error("operator {0} requires a shift")]
    MissingShift(&'static str),
    #[error("invalid shift: {0}")]
    InvalidShift(String),
}

/// Coarse classification used for exit-code mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent user input.
    Input,
    /// The input is well-formed but lands on a case the reduction does not cover.
    Degenerate,
    /// A numerical procedure failed.
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            Syntax { .. }
            | InvalidConfig(_)
            | MissingShift(_)
            | InvalidShift(_)
            | NotEntire(_)
            | HypothesisViolated(_)
            | ZeroC2 => ErrorKind::Input,
            UnsupportedCase(_)
            | DegenerateForm(_)
            | BranchUndefined(_)
            | DegenerateKSystem(_)
            | NoRealization(_)
            | DegenerateFrequency(_)
            | DegenerateDenominator(_)
            | NoAdmissibleRoot
            | DegenerateAmplitude
            | DegenerateLeadingCoefficient => ErrorKind::Degenerate,
            ZeroBase { .. }
            | NoConvergence { .. }
            | DivisionNearZero { .. }
            | NonFiniteResult
            | LambertFailure(_) => ErrorKind::Numerical,
        }
    }
}
