use thiserror::Error;

/// Errors produced by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the vector field is identically zero in one zone")]
    ZeroField,
    #[error("field is not quasi-homogeneous: {0}")]
    NotQuasiHomogeneous(String),
    #[error("field is not quadratic and non-homogeneous: {0}")]
    NotQuadraticNonHomogeneous(String),
    #[error("parameter `{0}` must be nonzero")]
    ZeroParameter(&'static str),
    #[error("evaluation outside the first integral's domain at ({x}, {y})")]
    DomainError { x: f64, y: f64 },
    #[error("the origin is not a center for these parameters")]
    NotACenter,
    #[error("numerical integration failed: {0}")]
    IntegrationFailure(String),
    #[error("quadrature did not reach tolerance {tol:e} (last estimate {estimate}, change {change:e})")]
    QuadratureFailure { tol: f64, estimate: f64, change: f64 },
    #[error("perturbation index ({i}, {j}) exceeds degree {n}")]
    DegreeMismatch { i: u32, j: u32, n: u32 },
    #[error("Melnikov function has no nonzero terms")]
    EmptyPoly,
    #[error("{requested} roots requested but at most {max} can be realized at degree {n}")]
    TooManyRoots { requested: usize, max: usize, n: u32 },
    #[error("target roots must be distinct positive reals")]
    DuplicateRoots,
    #[error("classifying quantity `{0}` sits on an unlisted boundary")]
    DegenerateParameter(&'static str),
    #[error("render step budget of {0} exhausted")]
    RenderBudgetExceeded(usize),
    #[error("starting point ({x}, {y}) lies on the sliding set")]
    StartOnSliding { x: f64, y: f64 },
    #[error("step budget of {0} exhausted")]
    StepBudgetExceeded(usize),
    #[error("perturbed orbit from h = {h} did not complete a revolution")]
    NoReturn { h: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
