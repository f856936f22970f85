//! Small report types shared by the verification-style operations.

use serde::Serialize;

/// One named inequality or identity: `observed` against `bound`, with
/// `margin = bound - observed` (negative margin beyond the tolerance fails).
#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub observed: f64,
    pub bound: f64,
    pub margin: f64,
    pub pass: bool,
}

impl CheckItem {
    /// Identity check: |observed - expected| must be at most `tol`.
    pub fn identity(name: &str, observed: f64, expected: f64, tol: f64) -> Self {
        let deviation = (observed - expected).abs();
        Self {
            name: name.to_string(),
            observed,
            bound: expected,
            margin: tol - deviation,
            pass: deviation <= tol,
        }
    }

    /// Inequality check: observed must be at most `bound + tol`.
    pub fn upper_bound(name: &str, observed: f64, bound: f64, tol: f64) -> Self {
        Self {
            name: name.to_string(),
            observed,
            bound,
            margin: bound - observed,
            pass: observed <= bound + tol,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub pass: bool,
    pub items: Vec<CheckItem>,
}

impl CheckResult {
    pub fn from_items(items: Vec<CheckItem>) -> Self {
        Self {
            pass: items.iter().all(|i| i.pass),
            items,
        }
    }

    /// Smallest margin across items; +inf when there are none.
    pub fn worst_margin(&self) -> f64 {
        self.items
            .iter()
            .map(|i| i.margin)
            .fold(f64::INFINITY, f64::min)
    }
}
