use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty vector")]
    EmptyVector,

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("point {0} is outside domain [-1, 1]")]
    OutsideDomain(f64),

    #[error(
        "singularity on grid: alpha = {alpha} is within {distance:e} of Chebyshev node {node}; choose a different n"
    )]
    SingularityOnGrid {
        alpha: f64,
        node: usize,
        distance: f64,
    },

    #[error("evaluation at singular point x = {0}")]
    EvaluationAtSingularPoint(f64),

    #[error("alpha = {0} is outside [-1, 1]")]
    AlphaOutOfRange(f64),

    #[error("alpha = {0} is an endpoint; use direct rule")]
    UseDirectRule(f64),

    #[error("operator singular or numerically degenerate (residual {residual:e} after {iterations} iterations)")]
    SingularOperator { iterations: usize, residual: f64 },

    #[error("reduced system not solvable (check invertibility assumption): relative residual {relative_residual:e}")]
    NotSolvable { relative_residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
