//! Principal angles between subspaces of R^n and what they buy you:
//! projector algebra (five-parts decomposition, the polar-decomposition
//! isometry, spectra of projector sums and differences, principal vectors
//! and invariant subspaces), perturbation bounds for angles and Ritz values,
//! and a conjugate-gradient accelerated alternating-projectors solver,
//! exercised end to end on a one-dimensional overlapping domain
//! decomposition for the diffusion equation.
//!
//! Everything runs over f64, optionally under a weighted (SPD) inner
//! product realized by a Cholesky change of metric.

pub mod altproj;
pub mod angles;
pub mod check;
pub mod ddm1d;
pub mod error;
pub mod io;
pub mod numkit;
pub mod projector_algebra;
pub mod random;
pub mod ritz;
pub mod subspace;

pub use check::{CheckItem, CheckResult};
pub use error::{Error, Result};
pub use numkit::RealMatrix;
pub use subspace::{InnerProduct, Subspace};
