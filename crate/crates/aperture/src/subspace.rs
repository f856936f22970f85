//! Subspaces of R^n under a Euclidean or weighted (SPD) inner product,
//! orthogonal projectors, and the five-parts decomposition
//! H = M00 + M01 + M10 + M11 + M into the four corner intersections
//! (F and G, F and the complement of G, ...) plus the generic remainder.
//!
//! Weighted inner products are handled by a Cholesky change of metric: with
//! K = R^T R, the map x -> Rx is an isometry onto Euclidean R^n, so every
//! angle and projector algorithm runs in a single Euclidean code path on the
//! mapped bases.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkit::{self, RealMatrix};

/// A principal cosine counts as one (and a principal sine likewise) when it
/// is at least `1 - DEFAULT_INTERSECT_TOL`. Squared quantities near one lose
/// half their digits, so this sits well above machine-epsilon scale.
pub const DEFAULT_INTERSECT_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
enum IpKind {
    Euclidean,
    Weighted {
        weight: RealMatrix,
        chol: RealMatrix,
    },
}

/// Inner product on R^n: Euclidean, or `(x, y) = x^T K y` for SPD `K`.
#[derive(Debug, Clone)]
pub struct InnerProduct {
    kind: IpKind,
}

impl InnerProduct {
    pub fn euclidean() -> Self {
        Self {
            kind: IpKind::Euclidean,
        }
    }

    /// Weighted inner product; fails with `NotSpd` unless `k` is symmetric
    /// positive definite. The Cholesky factor is computed once and reused for
    /// every change of metric.
    pub fn weighted(k: RealMatrix) -> Result<Self> {
        let chol = numkit::cholesky(&k)?;
        Ok(Self {
            kind: IpKind::Weighted { weight: k, chol },
        })
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self.kind, IpKind::Euclidean)
    }

    pub fn weight(&self) -> Option<&RealMatrix> {
        match &self.kind {
            IpKind::Euclidean => None,
            IpKind::Weighted { weight, .. } => Some(weight),
        }
    }

    pub fn cholesky_factor(&self) -> Option<&RealMatrix> {
        match &self.kind {
            IpKind::Euclidean => None,
            IpKind::Weighted { chol, .. } => Some(chol),
        }
    }

    /// Dimension pinned by a weight matrix, if any.
    pub fn dim(&self) -> Option<usize> {
        self.weight().map(|k| k.rows())
    }

    pub fn same_as(&self, other: &InnerProduct) -> bool {
        match (&self.kind, &other.kind) {
            (IpKind::Euclidean, IpKind::Euclidean) => true,
            (IpKind::Weighted { weight: a, .. }, IpKind::Weighted { weight: b, .. }) => {
                a.as_dmatrix() == b.as_dmatrix()
            }
            _ => false,
        }
    }

    /// Maps columns into the Euclidean metric coordinates (x -> Rx).
    pub(crate) fn to_metric(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        match &self.kind {
            IpKind::Euclidean => m.clone(),
            IpKind::Weighted { chol, .. } => chol.as_dmatrix() * m,
        }
    }

    /// Inverse metric map (solves R y = x columnwise).
    pub(crate) fn from_metric(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        match &self.kind {
            IpKind::Euclidean => m.clone(),
            IpKind::Weighted { chol, .. } => chol
                .as_dmatrix()
                .solve_upper_triangular(m)
                .expect("Cholesky factor is invertible"),
        }
    }
}

/// Subspace of R^n, stored as an orthonormal basis with respect to its inner
/// product. The trivial subspace (dimension zero) is representable; operations
/// that need a nontrivial space reject it with `TrivialSubspace`.
#[derive(Debug, Clone)]
pub struct Subspace {
    basis: RealMatrix,
    metric_basis: DMatrix<f64>,
    ip: InnerProduct,
}

impl Subspace {
    /// Orthonormal basis for the span of the columns of `a` under `ip`.
    /// Columns whose residual falls below `tol` (relative) are dropped;
    /// `ZeroSpan` if nothing survives.
    pub fn from_spanning(a: &RealMatrix, ip: InnerProduct, tol: f64) -> Result<Self> {
        if let Some(n) = ip.dim() {
            if a.rows() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: a.rows(),
                });
            }
        }
        let mapped = RealMatrix::new(ip.to_metric(a.as_dmatrix()))?;
        let q = numkit::qr_orthonormalize(&mapped, tol)?;
        if q.cols() == 0 && a.cols() > 0 {
            return Err(Error::ZeroSpan);
        }
        Ok(Self::from_metric_basis(q.into_inner(), ip))
    }

    /// Builds directly from a basis that is already orthonormal in the metric
    /// coordinates.
    pub(crate) fn from_metric_basis(metric_basis: DMatrix<f64>, ip: InnerProduct) -> Self {
        let basis = RealMatrix::wrap(ip.from_metric(&metric_basis));
        Self {
            basis,
            metric_basis,
            ip,
        }
    }

    /// The k = 0 subspace of R^n.
    pub fn trivial(n: usize, ip: InnerProduct) -> Self {
        Self::from_metric_basis(DMatrix::zeros(n, 0), ip)
    }

    /// The whole space R^n.
    pub fn full(n: usize, ip: InnerProduct) -> Self {
        Self::from_metric_basis(DMatrix::identity(n, n), ip)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    /// Basis in the original coordinates, orthonormal under the inner product.
    pub fn basis(&self) -> &RealMatrix {
        &self.basis
    }

    pub fn ip(&self) -> &InnerProduct {
        &self.ip
    }

    /// Euclidean-orthonormal image of the basis under the metric map.
    pub(crate) fn metric_basis(&self) -> &DMatrix<f64> {
        &self.metric_basis
    }

    /// Orthogonal projector onto the subspace in the original coordinates:
    /// `B B^T` (Euclidean) or the K-selfadjoint idempotent `B B^T K`.
    pub fn projector(&self) -> RealMatrix {
        let b = self.basis.as_dmatrix();
        match self.ip.weight() {
            None => RealMatrix::wrap(b * b.transpose()),
            Some(k) => RealMatrix::wrap(b * (b.transpose() * k.as_dmatrix())),
        }
    }

    /// Projector in the metric coordinates, where it is symmetric.
    pub(crate) fn metric_projector(&self) -> DMatrix<f64> {
        &self.metric_basis * self.metric_basis.transpose()
    }

    /// Orthogonal complement under the inner product; the trivial subspace
    /// when this subspace is the whole space.
    pub fn orthogonal_complement(&self) -> Subspace {
        let comp = numkit::orthonormal_complement(&self.metric_basis);
        Self::from_metric_basis(comp, self.ip.clone())
    }

    /// Projects an ambient vector (original coordinates) onto the subspace.
    pub fn project_vector(&self, v: &nalgebra::DVector<f64>) -> nalgebra::DVector<f64> {
        let vm = self.ip.to_metric(&DMatrix::from_column_slice(v.len(), 1, v.as_slice()));
        let coeffs = self.metric_basis.transpose() * &vm;
        let pm = &self.metric_basis * coeffs;
        let back = self.ip.from_metric(&pm);
        nalgebra::DVector::from_column_slice(back.as_slice())
    }
}

/// Checks that two subspaces share the ambient space and the inner product.
pub(crate) fn compat(f: &Subspace, g: &Subspace) -> Result<()> {
    if f.ambient_dim() != g.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_dim(),
            found: g.ambient_dim(),
        });
    }
    if !f.ip().same_as(g.ip()) {
        return Err(Error::InnerProductMismatch);
    }
    Ok(())
}

/// Intersection of two subspaces: the span of the directions whose principal
/// cosine to the other subspace is within `tol` of one. The result may be
/// trivial.
pub fn intersect(f: &Subspace, g: &Subspace, tol: f64) -> Result<Subspace> {
    compat(f, g)?;
    let c = RealMatrix::wrap(f.metric_basis().transpose() * g.metric_basis());
    let fac = numkit::svd(&c)?;
    let picked: Vec<usize> = (0..fac.singular_values.len())
        .filter(|&i| fac.singular_values[i].clamp(0.0, 1.0) >= 1.0 - tol)
        .collect();
    let mut cols = DMatrix::zeros(f.dim(), picked.len());
    for (dst, &src) in picked.iter().enumerate() {
        cols.set_column(dst, &fac.u.column(src));
    }
    let raw = f.metric_basis() * cols;
    let q = numkit::qr_orthonormalize(&RealMatrix::wrap(raw), numkit::DEFAULT_RANK_TOL)?;
    Ok(Subspace::from_metric_basis(q.into_inner(), f.ip().clone()))
}

/// Dimensions of all eight pieces of the five-parts decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FivePartsDims {
    pub m00: usize,
    pub m01: usize,
    pub m10: usize,
    pub m11: usize,
    pub m_f: usize,
    pub m_f_perp: usize,
    pub m_g: usize,
    pub m_g_perp: usize,
}

impl FivePartsDims {
    /// Dimension of the generic part M = M_F + M_F_perp.
    pub fn generic(&self) -> usize {
        self.m_f + self.m_f_perp
    }

    pub fn total(&self) -> usize {
        self.m00 + self.m01 + self.m10 + self.m11 + self.generic()
    }

    pub fn corners_trivial(&self) -> bool {
        self.m00 == 0 && self.m01 == 0 && self.m10 == 0 && self.m11 == 0
    }
}

/// The decomposition H = M00 + M01 + M10 + M11 + M, together with the two
/// splittings of the generic part: M = M_F + M_F_perp = M_G + M_G_perp, where
/// M_F = F minus (M00 + M01) and M_G = G minus (M00 + M10).
#[derive(Debug, Clone)]
pub struct FiveParts {
    pub m00: Subspace,
    pub m01: Subspace,
    pub m10: Subspace,
    pub m11: Subspace,
    pub m_f: Subspace,
    pub m_f_perp: Subspace,
    pub m_g: Subspace,
    pub m_g_perp: Subspace,
    pub dims: FivePartsDims,
}

struct SideSplit {
    zero: DMatrix<f64>,
    right: DMatrix<f64>,
    middle: DMatrix<f64>,
}

/// Splits `outer * eigvec` groups of the symmetric `gram` (the restriction of
/// one projector product to the side spanned by `outer`) by angle class:
/// eigenvalue is cos^2 of an angle; cos within `tol` of 1 means angle 0,
/// sin within `tol` of 1 means a right angle.
fn split_side(outer: &DMatrix<f64>, gram: DMatrix<f64>, tol: f64) -> Result<SideSplit> {
    let p = gram.nrows();
    if p == 0 {
        let empty = DMatrix::zeros(outer.nrows(), 0);
        return Ok(SideSplit {
            zero: empty.clone(),
            right: empty.clone(),
            middle: empty,
        });
    }
    let eig = numkit::sym_eig(&RealMatrix::wrap(gram))?;
    let mut groups: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for i in 0..p {
        let lambda = eig.eigenvalues[i].clamp(0.0, 1.0);
        let cos = lambda.sqrt();
        let sin = (1.0 - lambda).sqrt();
        if cos >= 1.0 - tol {
            groups[0].push(i);
        } else if sin >= 1.0 - tol {
            groups[1].push(i);
        } else {
            groups[2].push(i);
        }
    }
    let pick = |idx: &[usize]| -> DMatrix<f64> {
        let mut cols = DMatrix::zeros(p, idx.len());
        for (dst, &src) in idx.iter().enumerate() {
            cols.set_column(dst, &eig.eigenvectors.column(src));
        }
        outer * cols
    };
    Ok(SideSplit {
        zero: pick(&groups[0]),
        right: pick(&groups[1]),
        middle: pick(&groups[2]),
    })
}

/// Computes the five-parts decomposition for a pair of subspaces.
///
/// Each corner comes from the eigendecomposition of the projector product
/// restricted to the side that defines it, e.g. M00 is the eigenvalue-one
/// cluster of (P_F P_G) restricted to F. The `dims` record is reported as
/// computed; its consistency (the eight pieces summing to n) is a property of
/// the input being numerically clean, not an enforced invariant.
pub fn five_parts(f: &Subspace, g: &Subspace, tol: f64) -> Result<FiveParts> {
    compat(f, g)?;
    let bf = f.metric_basis();
    let bg = g.metric_basis();
    let bfp = numkit::orthonormal_complement(bf);
    let bgp = numkit::orthonormal_complement(bg);
    let c = bf.transpose() * bg;
    let c2 = bfp.transpose() * &bgp;

    let f_side = split_side(bf, &c * c.transpose(), tol)?;
    let g_side = split_side(bg, c.transpose() * &c, tol)?;
    let fp_side = split_side(&bfp, &c2 * c2.transpose(), tol)?;
    let gp_side = split_side(&bgp, c2.transpose() * &c2, tol)?;

    let ip = f.ip().clone();
    let sub = |m: DMatrix<f64>| Subspace::from_metric_basis(m, ip.clone());

    let m00 = sub(f_side.zero);
    let m01 = sub(f_side.right);
    let m10 = sub(g_side.right);
    let m11 = sub(fp_side.zero);
    let m_f = sub(f_side.middle);
    let m_g = sub(g_side.middle);
    let m_f_perp = sub(fp_side.middle);
    let m_g_perp = sub(gp_side.middle);

    let dims = FivePartsDims {
        m00: m00.dim(),
        m01: m01.dim(),
        m10: m10.dim(),
        m11: m11.dim(),
        m_f: m_f.dim(),
        m_f_perp: m_f_perp.dim(),
        m_g: m_g.dim(),
        m_g_perp: m_g_perp.dim(),
    };
    Ok(FiveParts {
        m00,
        m01,
        m10,
        m11,
        m_f,
        m_f_perp,
        m_g,
        m_g_perp,
        dims,
    })
}

/// True when all four corner intersections are null-dimensional.
pub fn in_generic_position(f: &Subspace, g: &Subspace, tol: f64) -> Result<bool> {
    Ok(five_parts(f, g, tol)?.dims.corners_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::DVector;

    fn mat(rows: usize, cols: usize, data: &[f64]) -> RealMatrix {
        RealMatrix::from_row_major(rows, cols, data).unwrap()
    }

    fn span(data: Vec<Vec<f64>>) -> Subspace {
        let rows = data[0].len();
        let cols = data.len();
        let mut m = DMatrix::zeros(rows, cols);
        for (j, col) in data.iter().enumerate() {
            m.set_column(j, &DVector::from_column_slice(col));
        }
        Subspace::from_spanning(&RealMatrix::wrap(m), InnerProduct::euclidean(), 1e-10).unwrap()
    }

    #[test]
    fn from_spanning_normalizes() {
        let s = span(vec![vec![2.0, 0.0]]);
        assert_eq!(s.dim(), 1);
        assert_abs_diff_eq!(s.basis()[(0, 0)].abs(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn from_spanning_collapses_near_duplicates() {
        let a = mat(2, 2, &[1.0, 1.0, 0.0, 1e-14]);
        let s = Subspace::from_spanning(&a, InnerProduct::euclidean(), 1e-10).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn from_spanning_zero_span() {
        let a = mat(2, 1, &[0.0, 0.0]);
        assert!(matches!(
            Subspace::from_spanning(&a, InnerProduct::euclidean(), 1e-10),
            Err(Error::ZeroSpan)
        ));
    }

    #[test]
    fn weighted_basis_is_k_orthonormal() {
        // ||(1/2, 0)||_K^2 = 4 * 1/4 = 1 for K = diag(4, 1).
        let k = mat(2, 2, &[4.0, 0.0, 0.0, 1.0]);
        let ip = InnerProduct::weighted(k.clone()).unwrap();
        let s = Subspace::from_spanning(&mat(2, 1, &[1.0, 0.0]), ip, 1e-10).unwrap();
        assert_abs_diff_eq!(s.basis()[(0, 0)].abs(), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(s.basis()[(1, 0)], 0.0, epsilon = 1e-14);
        let b = s.basis().as_dmatrix();
        let gram = b.transpose() * k.as_dmatrix() * b;
        assert_abs_diff_eq!(gram[(0, 0)], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn projector_examples() {
        let p = span(vec![vec![1.0, 0.0]]).projector();
        assert!(numkit::max_abs(&(p.as_dmatrix() - mat(2, 2, &[1.0, 0.0, 0.0, 0.0]).as_dmatrix())) < 1e-14);

        let p = Subspace::full(2, InnerProduct::euclidean()).projector();
        assert!(numkit::max_abs(&(p.as_dmatrix() - DMatrix::identity(2, 2))) < 1e-14);

        let r = 0.5_f64.sqrt();
        let p = span(vec![vec![r, r]]).projector();
        assert!(
            numkit::max_abs(&(p.as_dmatrix() - mat(2, 2, &[0.5, 0.5, 0.5, 0.5]).as_dmatrix()))
                < 1e-14
        );
        let idem = p.as_dmatrix() * p.as_dmatrix() - p.as_dmatrix();
        assert!(numkit::max_abs(&idem) < 1e-10);
    }

    #[test]
    fn complement_examples() {
        let c = span(vec![vec![1.0, 0.0]]).orthogonal_complement();
        assert_eq!(c.dim(), 1);
        assert_abs_diff_eq!(c.basis()[(1, 0)].abs(), 1.0, epsilon = 1e-14);

        let c = Subspace::full(2, InnerProduct::euclidean()).orthogonal_complement();
        assert!(c.is_trivial());

        // K-orthogonality: span{(1/2,0)} under K = diag(4,1) has complement span{(0,1)}.
        let k = mat(2, 2, &[4.0, 0.0, 0.0, 1.0]);
        let ip = InnerProduct::weighted(k.clone()).unwrap();
        let s = Subspace::from_spanning(&mat(2, 1, &[1.0, 0.0]), ip, 1e-10).unwrap();
        let c = s.orthogonal_complement();
        assert_eq!(c.dim(), 1);
        assert_abs_diff_eq!(c.basis()[(0, 0)], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.basis()[(1, 0)].abs(), 1.0, epsilon = 1e-14);
        let cross = s.basis().transpose() * k.as_dmatrix() * c.basis().as_dmatrix();
        assert!(numkit::max_abs(&cross) < 1e-12);
    }

    #[test]
    fn double_complement_restores_span() {
        let mut rng = crate::random::rng_from_seed(21);
        for &(n, k) in &[(5usize, 2usize), (9, 4), (7, 6)] {
            let s = crate::random::random_subspace(n, k, &mut rng);
            let cc = s.orthogonal_complement().orthogonal_complement();
            assert_eq!(cc.dim(), k);
            // All principal angles to the original must vanish.
            let gram = s.metric_basis().transpose() * cc.metric_basis();
            let sv = numkit::svd(&RealMatrix::wrap(gram)).unwrap();
            for i in 0..k {
                assert!(sv.singular_values[i] >= 1.0 - 1e-10);
            }
        }
    }

    #[test]
    fn intersect_examples() {
        let e1 = span(vec![vec![1.0, 0.0]]);
        let s = intersect(&e1, &e1, DEFAULT_INTERSECT_TOL).unwrap();
        assert_eq!(s.dim(), 1);

        let e2 = span(vec![vec![0.0, 1.0]]);
        let s = intersect(&e1, &e2, DEFAULT_INTERSECT_TOL).unwrap();
        assert!(s.is_trivial());

        let f = span(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
        let g = span(vec![vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]]);
        let s = intersect(&f, &g, DEFAULT_INTERSECT_TOL).unwrap();
        assert_eq!(s.dim(), 1);
        assert_abs_diff_eq!(s.basis()[(0, 0)].abs(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn five_parts_corner_example() {
        // In R^4: F = span{e1,e2}, G = span{e1,e3} has all four corners of
        // dimension one and no generic part.
        let f = span(vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]]);
        let g = span(vec![vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 0.0]]);
        let parts = five_parts(&f, &g, DEFAULT_INTERSECT_TOL).unwrap();
        assert_eq!(
            (
                parts.dims.m00,
                parts.dims.m01,
                parts.dims.m10,
                parts.dims.m11,
                parts.dims.generic()
            ),
            (1, 1, 1, 1, 0)
        );
        assert_eq!(parts.dims.total(), 4);
        assert!(!in_generic_position(&f, &g, DEFAULT_INTERSECT_TOL).unwrap());
    }

    #[test]
    fn five_parts_equal_subspaces() {
        let f = span(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
        let parts = five_parts(&f, &f.clone(), DEFAULT_INTERSECT_TOL).unwrap();
        assert_eq!(parts.dims.m00, 2);
        assert_eq!(parts.dims.m11, 1);
        assert_eq!(parts.dims.m01 + parts.dims.m10 + parts.dims.generic(), 0);
    }

    #[test]
    fn five_parts_generic_plane() {
        let theta = std::f64::consts::FRAC_PI_4;
        let f = span(vec![vec![1.0, 0.0]]);
        let g = span(vec![vec![theta.cos(), theta.sin()]]);
        let parts = five_parts(&f, &g, DEFAULT_INTERSECT_TOL).unwrap();
        assert!(parts.dims.corners_trivial());
        assert_eq!(parts.dims.generic(), 2);
        assert!(in_generic_position(&f, &g, DEFAULT_INTERSECT_TOL).unwrap());
    }

    #[test]
    fn generic_position_false_for_equal() {
        let f = span(vec![vec![1.0, 0.0]]);
        assert!(!in_generic_position(&f, &f.clone(), DEFAULT_INTERSECT_TOL).unwrap());
    }

    #[test]
    fn generic_position_matches_complement_pairs() {
        let mut rng = crate::random::rng_from_seed(22);
        for trial in 0..20 {
            let n = 4 + (trial % 5);
            let kf = 1 + (trial % (n - 1));
            let kg = 1 + ((trial * 7 + 3) % (n - 1));
            let f = crate::random::random_subspace(n, kf, &mut rng);
            let g = crate::random::random_subspace(n, kg, &mut rng);
            let base = in_generic_position(&f, &g, DEFAULT_INTERSECT_TOL).unwrap();
            let swapped =
                in_generic_position(&f, &g.orthogonal_complement(), DEFAULT_INTERSECT_TOL)
                    .unwrap();
            assert_eq!(base, swapped);
            let both = in_generic_position(
                &f.orthogonal_complement(),
                &g.orthogonal_complement(),
                DEFAULT_INTERSECT_TOL,
            )
            .unwrap();
            assert_eq!(base, both);
        }
    }

    #[test]
    fn projector_decomposes_blockwise_over_parts() {
        let mut rng = crate::random::rng_from_seed(23);
        for &(n, kf, kg) in &[(6usize, 2usize, 3usize), (10, 4, 4), (8, 5, 2)] {
            let f = crate::random::random_subspace(n, kf, &mut rng);
            let g = crate::random::random_subspace(n, kg, &mut rng);
            let parts = five_parts(&f, &g, DEFAULT_INTERSECT_TOL).unwrap();
            assert_eq!(parts.dims.total(), n);
            let pf = f.projector();
            let pg = g.projector();
            // P_F acts as I on M00 and M01, as 0 on M10 and M11, and leaves
            // each part of the splitting invariant; similarly for P_G.
            let expect_identity = |p: &RealMatrix, s: &Subspace| {
                let b = s.basis().as_dmatrix();
                assert!(numkit::max_abs(&(p.as_dmatrix() * b - b)) < 1e-8);
            };
            let expect_zero = |p: &RealMatrix, s: &Subspace| {
                let b = s.basis().as_dmatrix();
                assert!(numkit::max_abs(&(p.as_dmatrix() * b)) < 1e-8);
            };
            expect_identity(&pf, &parts.m00);
            expect_identity(&pf, &parts.m01);
            expect_zero(&pf, &parts.m10);
            expect_zero(&pf, &parts.m11);
            expect_identity(&pg, &parts.m00);
            expect_identity(&pg, &parts.m10);
            expect_zero(&pg, &parts.m01);
            expect_zero(&pg, &parts.m11);
            for part in [&parts.m_f, &parts.m_f_perp, &parts.m_g, &parts.m_g_perp] {
                if part.is_trivial() {
                    continue;
                }
                for p in [&pf, &pg] {
                    // B^T B = I here (Euclidean ip), so P B = B (B^T P B)
                    // says the part is invariant under P.
                    let b = part.basis().as_dmatrix();
                    let pb = p.as_dmatrix() * b;
                    let inside = b * (b.transpose() * &pb);
                    assert!(numkit::max_abs(&(&pb - &inside)) < 1e-8);
                }
            }
        }
    }

    #[test]
    fn project_vector_weighted() {
        let k = mat(2, 2, &[4.0, 0.0, 0.0, 1.0]);
        let ip = InnerProduct::weighted(k).unwrap();
        let s = Subspace::from_spanning(&mat(2, 1, &[1.0, 0.0]), ip, 1e-10).unwrap();
        let v = DVector::from_column_slice(&[3.0, 5.0]);
        let p = s.project_vector(&v);
        assert_abs_diff_eq!(p[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p[1], 0.0, epsilon = 1e-12);
    }
}
