use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("level {level} exceeds the configured maximum {vmax}")]
    LevelOutOfRange { level: u32, vmax: u32 },

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("basis index {index} out of range for level {level}")]
    IndexOutOfRange { index: usize, level: u32 },

    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not invertible at level {0}")]
    NotInvertible(u32),

    #[error("the algebra at level {0} is a division algebra; zero divisors exist only for level >= 4")]
    DivisionAlgebra(u32),

    #[error("operator is not symmetric (residual {0:e})")]
    NotSymmetric(f64),

    #[error("operator has no full algebra-valued adjoint")]
    NoFullAdjoint,

    #[error("operator is not normal (residual {0:e})")]
    NotNormal(f64),

    #[error("operator is not unitary (residual {0:e})")]
    NotUnitary(f64),

    #[error("operator is not positive (minimum eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("spectral and quadratic-form positivity criteria disagree")]
    PositivityDisagreement,

    #[error("complexified resolvent could not be inverted; operator is not self-adjoint")]
    ResolventSingular,

    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("eigenprojection for breakpoint {0} is not graded")]
    UngradedProjection(f64),

    #[error("function is undefined at spectral point {0}")]
    FunctionUndefined(f64),

    #[error("composition requires a real-valued inner function; value at {0} is not real")]
    NotComposable(f64),

    #[error("malformed bracketing: {0}")]
    Bracketing(String),

    #[error("invalid step function: {0}")]
    StepFunction(String),

    #[error("phase family not closed under the requested operation: {0}")]
    PhaseClosure(String),

    #[error("vector is not square-summable (tail exponent {0})")]
    NotSquareSummable(f64),

    #[error("symbol must be real and nonnegative: {0}")]
    NegativeSymbol(String),

    #[error("threshold {0} coincides with a limit modulus of the symbol; support is undecidable")]
    BorderlineThreshold(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by malformed or unsuitable input, as opposed to
    /// failures inside a numerical computation.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::NoConvergence(_) | Error::PositivityDisagreement | Error::ResolventSingular
        )
    }
}
