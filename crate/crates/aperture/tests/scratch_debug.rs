use aperture::random;
use aperture::numkit::{self, RealMatrix};

#[test]
fn debug_sines() {
    let mut rng = random::rng_from_seed(36);
    let n = 10;
    let f = random::random_subspace(n, 1, &mut rng);
    let g = random::random_subspace(n, 2, &mut rng);
    let fc = f.orthogonal_complement();
    let gc = g.orthogonal_complement();
    // from = gc (8-dim), to = fc (9-dim)
    let bf = gc.basis().as_dmatrix().clone();
    let bg = fc.basis().as_dmatrix().clone();
    let cross = bf.transpose() * &bg;
    let svd_c = numkit::svd(&RealMatrix::new(cross).unwrap()).unwrap();
    println!("cross-gram sv: {:?}", svd_c.singular_values.as_slice());
    let resid = &bf - &bg * (bg.transpose() * &bf);
    let svd_s = numkit::svd(&RealMatrix::new(resid).unwrap()).unwrap();
    println!("resid sv: {:?}", svd_s.singular_values.as_slice());
}
