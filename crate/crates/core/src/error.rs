use thiserror::Error;

use crate::model::Method;

/// Errors of the exact polynomial layer and the quartic solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands use different variable registries: {left:?} vs {right:?}")]
    RegistryMismatch { left: Vec<String>, right: Vec<String> },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` is used but absent from the target registry")]
    NotRepresentable(String),
    #[error("radicand is zero while the surd coefficient is not")]
    ZeroRadicand,
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("expected {expected} values, got {got}")]
    PointArity { expected: usize, got: usize },
}

/// Errors reported by the solve paths.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("{method}: no candidate passed the residual filter")]
    NoCandidates { method: Method },
    #[error("elimination quartic is identically zero for this instance")]
    DegenerateElimination,
    #[error("no real all-positive-branch solution")]
    NoRealAllPositiveBranchSolution,
    #[error("direct solve converged to t = {t} but the residual {residual:e} exceeds the tolerance")]
    DirectNotConverged { t: f64, residual: f64 },
    #[error("degenerate denominator in back-substitution ({0})")]
    DegenerateDenominator(&'static str),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("instance entries must be finite")]
    NonFiniteInstance,
}
