//! Seeded generators for subspaces, orthogonal matrices, and symmetric
//! operators. Used by the verification suites and the CLI's trial runner;
//! every consumer passes an explicit seed so runs reproduce exactly.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::numkit::{self, RealMatrix};
use crate::subspace::{InnerProduct, Subspace};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense matrix with entries uniform on [-1, 1).
pub fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
    RealMatrix::wrap(DMatrix::from_fn(rows, cols, |_, _| {
        rng.random_range(-1.0..1.0)
    }))
}

/// Random n x n orthogonal matrix (orthonormalized dense sample).
pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
    loop {
        let a = random_matrix(n, n, rng);
        if let Ok(q) = numkit::qr_orthonormalize(&a, numkit::DEFAULT_RANK_TOL) {
            if q.cols() == n {
                return q;
            }
        }
    }
}

/// Random symmetric matrix with entries in [-1, 1).
pub fn random_symmetric(n: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
    let a = random_matrix(n, n, rng);
    RealMatrix::wrap((a.as_dmatrix() + a.transpose()) * 0.5)
}

pub fn random_unit_vector(n: usize, rng: &mut ChaCha8Rng) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| rng.random_range(-1.0_f64..1.0));
        let norm = v.norm();
        if norm > 1e-3 {
            return v / norm;
        }
    }
}

/// Random k-dimensional subspace of Euclidean R^n.
pub fn random_subspace(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Subspace {
    loop {
        let a = random_matrix(n, k, rng);
        if let Ok(s) = Subspace::from_spanning(&a, InnerProduct::euclidean(), 1e-8) {
            if s.dim() == k {
                return s;
            }
        }
    }
}

/// Pair of subspaces sharing an exactly `shared`-dimensional intersection,
/// with the remaining directions drawn inside the shared complement.
pub fn random_pair_with_intersection(
    n: usize,
    shared: usize,
    extra_f: usize,
    extra_g: usize,
    rng: &mut ChaCha8Rng,
) -> (Subspace, Subspace) {
    assert!(shared + extra_f <= n && shared + extra_g <= n);
    let q = random_orthogonal(n, rng);
    let common = q.columns(0, shared).clone_owned();
    let rest = q.columns(shared, n - shared).clone_owned();
    let mix_f = &rest * random_matrix(n - shared, extra_f, rng).as_dmatrix();
    let mix_g = &rest * random_matrix(n - shared, extra_g, rng).as_dmatrix();

    let mut bf = DMatrix::zeros(n, shared + extra_f);
    bf.columns_mut(0, shared).copy_from(&common);
    bf.columns_mut(shared, extra_f).copy_from(&mix_f);
    let mut bg = DMatrix::zeros(n, shared + extra_g);
    bg.columns_mut(0, shared).copy_from(&common);
    bg.columns_mut(shared, extra_g).copy_from(&mix_g);

    let f = Subspace::from_spanning(&RealMatrix::wrap(bf), InnerProduct::euclidean(), 1e-8)
        .expect("spanning set is full rank");
    let g = Subspace::from_spanning(&RealMatrix::wrap(bg), InnerProduct::euclidean(), 1e-8)
        .expect("spanning set is full rank");
    (f, g)
}

/// Subspace of the same dimension obtained by perturbing the basis by
/// `delta`-scaled noise and re-orthonormalizing.
pub fn perturbed_subspace(s: &Subspace, delta: f64, rng: &mut ChaCha8Rng) -> Subspace {
    let n = s.ambient_dim();
    let k = s.dim();
    loop {
        let noise = random_matrix(n, k, rng);
        let basis = s.basis().as_dmatrix() + noise.as_dmatrix() * delta;
        if let Ok(p) = Subspace::from_spanning(&RealMatrix::wrap(basis), s.ip().clone(), 1e-8) {
            if p.dim() == k {
                return p;
            }
        }
    }
}
