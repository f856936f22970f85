//! Dense real linear-algebra kernel used by every other module.
//!
//! Thin layer over nalgebra's pure-Rust decompositions that fixes the
//! conventions the rest of the crate relies on: eigenvalues ascending,
//! singular values descending, deterministic singular-vector signs, and
//! rank-revealing orthonormalization with an explicit tolerance.

use std::ops::Deref;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative rank tolerance used when callers do not supply one.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Dense real matrix whose entries are guaranteed finite after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix(DMatrix<f64>);

impl RealMatrix {
    /// Validates that every entry is finite.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.iter().all(|x| x.is_finite()) {
            Ok(Self(m))
        } else {
            Err(Error::NotFinite)
        }
    }

    /// Row-major construction; `data.len()` must equal `rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Parse(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(rows, cols, data))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// Wraps a matrix produced from already-validated inputs.
    pub(crate) fn wrap(m: DMatrix<f64>) -> Self {
        debug_assert!(m.iter().all(|x| x.is_finite()));
        Self(m)
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.0.len());
        for i in 0..self.0.nrows() {
            for j in 0..self.0.ncols() {
                out.push(self.0[(i, j)]);
            }
        }
        out
    }
}

impl Deref for RealMatrix {
    type Target = DMatrix<f64>;

    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

/// Eigendecomposition of a symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SymEig {
    pub eigenvalues: DVector<f64>,
    pub eigenvectors: RealMatrix,
}

/// Singular value decomposition `A = U diag(S) V^T`, singular values descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: RealMatrix,
    pub singular_values: DVector<f64>,
    pub v: RealMatrix,
}

/// Eigendecomposition of a symmetric matrix.
///
/// The input is symmetrized as `(A + A^T)/2` before factorization, so small
/// asymmetries from accumulated rounding are absorbed. Eigenvalues come back
/// ascending with matching eigenvector columns, and each eigenvector's sign is
/// fixed so its largest-magnitude entry is positive.
pub fn sym_eig(a: &RealMatrix) -> Result<SymEig> {
    if a.rows() != a.cols() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(SymEig {
            eigenvalues: DVector::zeros(0),
            eigenvectors: RealMatrix::zeros(0, 0),
        });
    }
    let sym = (&a.0 + a.0.transpose()) * 0.5;
    let se = sym.symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].total_cmp(&se.eigenvalues[j]));

    let mut eigenvalues = DVector::zeros(n);
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvalues[dst] = se.eigenvalues[src];
        let mut col = se.eigenvectors.column(src).clone_owned();
        canonicalize_sign(&mut col);
        eigenvectors.set_column(dst, &col);
    }
    Ok(SymEig {
        eigenvalues,
        eigenvectors: RealMatrix::wrap(eigenvectors),
    })
}

/// Thin SVD with singular values descending and deterministic signs.
pub fn svd(a: &RealMatrix) -> Result<Svd> {
    let (rows, cols) = (a.rows(), a.cols());
    let k = rows.min(cols);
    if k == 0 {
        return Ok(Svd {
            u: RealMatrix::zeros(rows, 0),
            singular_values: DVector::zeros(0),
            v: RealMatrix::zeros(cols, 0),
        });
    }
    let f = a.0.clone().svd(true, true);
    let mut u = f.u.expect("svd: requested u");
    let mut v = f.v_t.expect("svd: requested v_t").transpose();
    let singular_values = f.singular_values;
    for j in 0..k {
        let mut uc = u.column(j).clone_owned();
        if canonicalize_sign(&mut uc) {
            u.set_column(j, &uc);
            let vc = -v.column(j).clone_owned();
            v.set_column(j, &vc);
        }
    }
    Ok(Svd {
        u: RealMatrix::wrap(u),
        singular_values,
        v: RealMatrix::wrap(v),
    })
}

/// Orthonormal basis for the range of `a`.
///
/// Column-pivoted modified Gram-Schmidt with a second orthogonalization pass.
/// A pivot column is dropped once its residual norm falls below
/// `tol * ||a||_F`, which is where the trailing R diagonal of a pivoted QR
/// would land, so rank-deficient input yields fewer columns than it has.
pub fn qr_orthonormalize(a: &RealMatrix, tol: f64) -> Result<RealMatrix> {
    let scale = a.0.norm();
    let q = pivoted_mgs(&a.0, &[], tol * scale, a.cols());
    Ok(RealMatrix::wrap(q))
}

/// Upper-triangular Cholesky factor `R` with `R^T R = K`.
pub fn cholesky(k: &RealMatrix) -> Result<RealMatrix> {
    if k.rows() != k.cols() {
        return Err(Error::NonSquare {
            rows: k.rows(),
            cols: k.cols(),
        });
    }
    let deviation = max_abs(&(&k.0 - k.0.transpose()));
    if deviation > 1e-10 * max_abs(&k.0).max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric { deviation });
    }
    let sym = (&k.0 + k.0.transpose()) * 0.5;
    match nalgebra::Cholesky::new(sym) {
        Some(c) => Ok(RealMatrix::wrap(c.l().transpose())),
        None => Err(Error::NotSpd),
    }
}

/// Largest singular value; zero for matrices with an empty dimension.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.nrows().min(m.ncols()) == 0 {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values[0]
}

pub(crate) fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// Orthonormal basis of the orthogonal complement of `span(q)`, given `q`
/// with orthonormal columns. Always returns exactly `n - q.ncols()` columns.
pub(crate) fn orthonormal_complement(q: &DMatrix<f64>) -> DMatrix<f64> {
    let n = q.nrows();
    let want = n - q.ncols();
    if want == 0 {
        return DMatrix::zeros(n, 0);
    }
    let seeds: Vec<DVector<f64>> = (0..q.ncols()).map(|j| q.column(j).clone_owned()).collect();
    // Candidates span the whole space, so the pivot residual cannot drop
    // below 1/sqrt(n) before `want` columns are found.
    pivoted_mgs(&DMatrix::identity(n, n), &seeds, 0.5 / (n as f64).sqrt(), want)
}

/// Column-pivoted modified Gram-Schmidt against optional pre-orthonormalized
/// `seeds` (which are not emitted). Stops after `max_cols` columns or when the
/// best remaining residual norm is at most `threshold`.
fn pivoted_mgs(
    candidates: &DMatrix<f64>,
    seeds: &[DVector<f64>],
    threshold: f64,
    max_cols: usize,
) -> DMatrix<f64> {
    let n = candidates.nrows();
    let mut work: Vec<DVector<f64>> = (0..candidates.ncols())
        .map(|j| {
            let mut c = candidates.column(j).clone_owned();
            for s in seeds {
                let coeff = s.dot(&c);
                c.axpy(-coeff, s, 1.0);
            }
            c
        })
        .collect();
    let mut picked: Vec<DVector<f64>> = Vec::new();

    while picked.len() < max_cols {
        let best = match work
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.norm().total_cmp(&b.norm()))
        {
            Some((i, c)) if c.norm() > threshold => i,
            _ => break,
        };
        let mut v = work.swap_remove(best);
        // Second pass restores orthogonality lost to cancellation.
        for s in seeds.iter().chain(picked.iter()) {
            let coeff = s.dot(&v);
            v.axpy(-coeff, s, 1.0);
        }
        let norm = v.norm();
        if norm <= threshold {
            continue;
        }
        v /= norm;
        for c in work.iter_mut() {
            let coeff = v.dot(c);
            c.axpy(-coeff, &v, 1.0);
        }
        picked.push(v);
    }

    let mut out = DMatrix::zeros(n, picked.len());
    for (j, col) in picked.iter().enumerate() {
        out.set_column(j, col);
    }
    out
}

/// Flips the sign so the largest-magnitude entry is positive; returns whether
/// a flip happened. Ties in magnitude resolve to the earliest index.
fn canonicalize_sign(v: &mut DVector<f64>) -> bool {
    let mut idx = 0;
    let mut best = -1.0_f64;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > best {
            best = x.abs();
            idx = i;
        }
    }
    if v[idx] < 0.0 {
        v.neg_mut();
        true
    } else {
        false
    }
}
