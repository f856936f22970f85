//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix contains NaN or infinite entries")]
    NotFinite,
    #[error("matrix is not symmetric positive definite")]
    NotSpd,
    #[error("matrix is not symmetric (max deviation {deviation:.3e})")]
    NotSymmetric { deviation: f64 },
    #[error("spanning set has no columns above the rank tolerance")]
    ZeroSpan,
    #[error("operation requires a nontrivial subspace")]
    TrivialSubspace,
    #[error("ambient dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspaces carry different inner products")]
    InnerProductMismatch,
    #[error("all angles are zero; the nonzero angle set is empty")]
    AllAnglesZero,
    #[error("set must be nonempty")]
    EmptySet,
    #[error("angle {theta} is too close to 0 or pi/2 for complement formulas")]
    DegenerateAngle { theta: f64 },
    #[error("no angle falls inside the requested range")]
    EmptySelection,
    #[error("angle range must exclude pi/2")]
    RangeIncludesRightAngle,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("subspace is not invariant under the operator (residual {residual:.3e})")]
    NotInvariant { residual: f64 },
    #[error("subspace eigenvalues do not form the top or bottom of the spectrum")]
    NotExtremalCluster,
    #[error("start vector does not lie in the first subspace (residual {residual:.3e})")]
    StartNotInF { residual: f64 },
    #[error("spectrum is empty after removing zero")]
    EmptySpectrum,
    #[error("invalid overlap: need 0 < beta < alpha < 1, got alpha={alpha}, beta={beta}")]
    BadOverlap { alpha: f64, beta: f64 },
    #[error("mesh is missing required node {node}")]
    NodesMissing { node: f64 },
    #[error("independent computations disagree: {left:.17e} vs {right:.17e} (tol {tol:.3e})")]
    DualRouteMismatch { left: f64, right: f64, tol: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}
