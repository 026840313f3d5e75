use thiserror::Error;

/// Rejections raised when a chain instance violates the model assumptions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("chain must have at least 2 links, got {n}")]
    TooFewLinks { n: usize },
    #[error("masses ({masses}) and lengths ({lengths}) must have the same count")]
    LengthMismatch { masses: usize, lengths: usize },
    #[error("mass {value} at link {index} is not a positive real")]
    NonPositiveMass { index: usize, value: f64 },
    #[error("length {value} at link {index} is not a positive real")]
    NonPositiveLength { index: usize, value: f64 },
    #[error("span {span} must strictly exceed the longest link {max_length}")]
    SpanTooShort { span: f64, max_length: f64 },
    #[error("span {span} must be strictly less than the total chain length {total_length}")]
    SpanTooLong { span: f64, total_length: f64 },
}

/// Failures of the numerical solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("mu must be positive, got {mu}")]
    NonPositiveMu { mu: f64 },
    #[error("chain is not symmetric (first violation at links {0} and {1}); use the general solver", violation.0, violation.1)]
    NotSymmetric { violation: (usize, usize) },
    #[error("could not establish a sign-changing bracket (f({lo}) = {f_lo}, f({hi}) = {f_hi})")]
    BracketingFailure { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("no convergence after {iterations} iterations (last residual {residual:e})")]
    MaxIterations { iterations: usize, residual: f64 },
    #[error("KKT Jacobian is numerically singular at lambda = {lambda}, mu = {mu}")]
    SingularJacobian { lambda: f64, mu: f64 },
    #[error("constraint violation {violation:e} above tolerance {tol:e} after all restarts")]
    ConvergenceFailure { violation: f64, tol: f64 },
    #[error("no catenary spans {span} with total length {total_length}")]
    NoSolution { span: f64, total_length: f64 },
}
