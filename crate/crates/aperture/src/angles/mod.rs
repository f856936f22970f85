//! Principal angles from one subspace to another and between subspaces,
//! the gap and minimum gap, the Friedrichs angle, the complement-relation
//! identities with their 0 and pi/2 multiplicity tables, and Hausdorff
//! perturbation bounds on squared cosines.

mod multiset;

pub use multiset::{AngleEntry, AngleMultiset};
pub(crate) use multiset::{sample_dist, AngleSample};

use nalgebra::DMatrix;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

use crate::check::{CheckItem, CheckResult};
use crate::error::{Error, Result};
use crate::numkit::{self, RealMatrix};
use crate::subspace::{self, FivePartsDims, Subspace, DEFAULT_INTERSECT_TOL};

/// Angles whose cosines (or sines) agree within this are grouped into one
/// multiplicity cluster: below eigensolver noise, above double rounding.
pub const DEFAULT_MERGE_TOL: f64 = 1e-8;

fn require_nontrivial(s: &Subspace) -> Result<()> {
    if s.is_trivial() {
        Err(Error::TrivialSubspace)
    } else {
        Ok(())
    }
}

fn cross_gram(f: &Subspace, g: &Subspace) -> DMatrix<f64> {
    f.metric_basis().transpose() * g.metric_basis()
}

/// Cosines of the directed angles: singular values of the cross Gram matrix,
/// padded with zeros up to dim F (directions of F with no counterpart in G
/// sit at a right angle).
fn directed_cosines(f: &Subspace, g: &Subspace) -> Result<Vec<f64>> {
    let fac = numkit::svd(&RealMatrix::wrap(cross_gram(f, g)))?;
    let mut cosines: Vec<f64> = fac
        .singular_values
        .iter()
        .map(|s| s.clamp(0.0, 1.0))
        .collect();
    cosines.resize(f.dim(), 0.0);
    Ok(cosines)
}

/// Sines of the directed angles: singular values of (I - P_G) B_F, ascending.
fn directed_sines(f: &Subspace, g: &Subspace) -> Result<Vec<f64>> {
    let bf = f.metric_basis();
    let bg = g.metric_basis();
    let resid = bf - bg * (bg.transpose() * bf);
    let fac = numkit::svd(&RealMatrix::wrap(resid))?;
    let mut sines: Vec<f64> = fac
        .singular_values
        .iter()
        .map(|s| s.clamp(0.0, 1.0))
        .collect();
    sines.reverse();
    Ok(sines)
}

/// Directed angle samples with both trig values computed from their own
/// well-conditioned factorization, ascending in angle.
pub(crate) fn directed_samples(f: &Subspace, g: &Subspace) -> Result<Vec<AngleSample>> {
    subspace::compat(f, g)?;
    require_nontrivial(f)?;
    require_nontrivial(g)?;
    let cosines = directed_cosines(f, g)?;
    let sines = directed_sines(f, g)?;
    Ok(cosines
        .iter()
        .zip(sines.iter())
        .map(|(&c, &s)| AngleSample::from_cos_sin(c, s))
        .collect())
}

/// Set of angles from F to G with multiplicities; total multiplicity dim F.
/// Cosine-based near pi/2 and sine-based near 0, so both ends keep full
/// precision.
pub fn directed_angles(f: &Subspace, g: &Subspace) -> Result<AngleMultiset> {
    Ok(AngleMultiset::from_samples(
        &directed_samples(f, g)?,
        DEFAULT_MERGE_TOL,
    ))
}

/// Cosine-route directed angles: theta = arccos of the cross-Gram singular
/// values. The same cosines are recomputed as eigenvalue square roots of the
/// restricted projector product and the two routes must agree to 1e-8.
pub fn angles_from_to(f: &Subspace, g: &Subspace) -> Result<AngleMultiset> {
    subspace::compat(f, g)?;
    require_nontrivial(f)?;
    require_nontrivial(g)?;
    let cosines = directed_cosines(f, g)?;

    let c = cross_gram(f, g);
    let gram = &c * c.transpose();
    let eig = numkit::sym_eig(&RealMatrix::wrap(gram))?;
    let mut eig_cosines: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|l| l.clamp(0.0, 1.0).sqrt())
        .collect();
    eig_cosines.reverse();
    for (a, b) in cosines.iter().zip(eig_cosines.iter()) {
        if (a - b).abs() > 1e-8 {
            return Err(Error::DualRouteMismatch {
                left: *a,
                right: *b,
                tol: 1e-8,
            });
        }
    }

    let samples: Vec<AngleSample> = cosines.iter().map(|&c| AngleSample::from_cos(c)).collect();
    Ok(AngleMultiset::from_samples(&samples, DEFAULT_MERGE_TOL))
}

/// Sine-route directed angles: theta = arcsin of the singular values of
/// (I - P_G) B_F. Agrees with the cosine route to 1e-8 on angle values and is
/// the accurate route for small angles.
pub fn angles_sine_based(f: &Subspace, g: &Subspace) -> Result<AngleMultiset> {
    subspace::compat(f, g)?;
    require_nontrivial(f)?;
    require_nontrivial(g)?;
    let sines = directed_sines(f, g)?;
    let samples: Vec<AngleSample> = sines.iter().map(|&s| AngleSample::from_sin(s)).collect();
    Ok(AngleMultiset::from_samples(&samples, DEFAULT_MERGE_TOL))
}

/// Angles between F and G: the multiset intersection (minimum multiplicity)
/// of the two directed sets.
pub fn angles_between(f: &Subspace, g: &Subspace) -> Result<AngleMultiset> {
    let fg = directed_angles(f, g)?;
    let gf = directed_angles(g, f)?;
    Ok(fg.intersect_min(&gf, DEFAULT_MERGE_TOL))
}

/// Gap (aperture) between subspaces: the spectral norm of P_F - P_G.
pub fn gap(f: &Subspace, g: &Subspace) -> Result<f64> {
    subspace::compat(f, g)?;
    let diff = f.metric_projector() - g.metric_projector();
    let gap = numkit::spectral_norm(&diff).min(1.0);
    #[cfg(debug_assertions)]
    {
        // Cross-check against max(||P_F P_Gperp||, ||P_G P_Fperp||).
        let fp = f.orthogonal_complement();
        let gp = g.orthogonal_complement();
        let a = numkit::spectral_norm(&cross_gram(f, &gp));
        let b = numkit::spectral_norm(&cross_gram(g, &fp));
        debug_assert!(
            (gap - a.max(b)).abs() <= 1e-10,
            "gap cross-check failed: {gap} vs {}",
            a.max(b)
        );
    }
    Ok(gap)
}

/// Cosine of the Friedrichs angle: the smallest nonzero angle between F and
/// G. Computed two ways -- from the between-angle multiset, and definitionally
/// as the largest singular value of the cross Gram after removing F∩G from
/// both sides -- which must agree within `tol`.
pub fn friedrichs_cos(f: &Subspace, g: &Subspace, tol: f64) -> Result<f64> {
    let (value, _removed) = friedrichs_cos_with_audit(f, g, tol)?;
    Ok(value)
}

/// `friedrichs_cos` plus the number of zero angles that were removed before
/// taking the infimum, so threshold sensitivity can be audited.
pub fn friedrichs_cos_with_audit(f: &Subspace, g: &Subspace, tol: f64) -> Result<(f64, usize)> {
    let between = angles_between(f, g)?;
    let removed = between.zero_multiplicity(DEFAULT_INTERSECT_TOL);
    let nonzero = between.without_zero(DEFAULT_INTERSECT_TOL);
    let angle_route = match nonzero.smallest() {
        Some(e) => e.cos,
        None => return Err(Error::AllAnglesZero),
    };

    // Definitional route on F minus F∩G against G minus F∩G.
    let c = cross_gram(f, g);
    let keep = |gram: DMatrix<f64>, outer: &DMatrix<f64>| -> Result<DMatrix<f64>> {
        let eig = numkit::sym_eig(&RealMatrix::wrap(gram))?;
        let idx: Vec<usize> = (0..eig.eigenvalues.len())
            .filter(|&i| eig.eigenvalues[i].clamp(0.0, 1.0).sqrt() < 1.0 - DEFAULT_INTERSECT_TOL)
            .collect();
        let mut cols = DMatrix::zeros(eig.eigenvalues.len(), idx.len());
        for (dst, &src) in idx.iter().enumerate() {
            cols.set_column(dst, &eig.eigenvectors.column(src));
        }
        Ok(outer * cols)
    };
    let f_reduced = keep(&c * c.transpose(), f.metric_basis())?;
    let g_reduced = keep(c.transpose() * &c, g.metric_basis())?;
    let def_route = numkit::spectral_norm(&(f_reduced.transpose() * g_reduced)).min(1.0);

    if (angle_route - def_route).abs() > tol {
        return Err(Error::DualRouteMismatch {
            left: angle_route,
            right: def_route,
            tol,
        });
    }
    Ok((angle_route, removed))
}

/// Minimum gap: sqrt(1 - c^2) for c the Friedrichs cosine, which is the sine
/// of the smallest nonzero angle between the subspaces.
pub fn min_gap(f: &Subspace, g: &Subspace) -> Result<f64> {
    let c = friedrichs_cos(f, g, DEFAULT_MERGE_TOL)?;
    Ok((1.0 - c * c).max(0.0).sqrt())
}

/// Hausdorff distance between two finite sets of reals.
pub fn hausdorff(s1: &[f64], s2: &[f64]) -> Result<f64> {
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::EmptySet);
    }
    let directed = |a: &[f64], b: &[f64]| -> f64 {
        a.iter()
            .map(|x| {
                b.iter()
                    .map(|y| (x - y).abs())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    Ok(directed(s1, s2).max(directed(s2, s1)))
}

/// Verifies the angle characterization of the gap: the smaller of the two
/// minimal squared cosines equals 1 - gap^2, and (when the gap is below one
/// or the pair is in generic position) the gap is the sine of the largest
/// between-angle.
pub fn angle_characterization_of_gap(f: &Subspace, g: &Subspace, tol: f64) -> Result<CheckResult> {
    let fg = directed_angles(f, g)?;
    let gf = directed_angles(g, f)?;
    let gap = gap(f, g)?;
    let min_cos2 = |s: &AngleMultiset| s.min_cos().map(|c| c * c).unwrap_or(1.0);
    let lhs = min_cos2(&fg).min(min_cos2(&gf));
    let mut items = vec![CheckItem::identity(
        "min cos^2 over both directed sets = 1 - gap^2",
        lhs,
        1.0 - gap * gap,
        tol,
    )];
    let applies =
        gap < 1.0 - 1e-12 || subspace::in_generic_position(f, g, DEFAULT_INTERSECT_TOL)?;
    if applies {
        let between = angles_between(f, g)?;
        let max_sin = between.max_sin().unwrap_or(0.0);
        items.push(CheckItem::identity(
            "gap = max sin between-angle",
            gap,
            max_sin,
            tol,
        ));
    }
    Ok(CheckResult::from_items(items))
}

/// Hausdorff perturbation bounds on squared directed cosines: perturbing the
/// second subspace is controlled by gap(G, G~), and perturbing the first by
/// the same gap with the roles exchanged.
pub fn cos2_perturbation_check(
    f: &Subspace,
    g: &Subspace,
    g_tilde: &Subspace,
    tol: f64,
) -> Result<CheckResult> {
    let bound = gap(g, g_tilde)?;
    let second = hausdorff(
        &directed_angles(f, g)?.cos2_set(),
        &directed_angles(f, g_tilde)?.cos2_set(),
    )?;
    let first = hausdorff(
        &directed_angles(g, f)?.cos2_set(),
        &directed_angles(g_tilde, f)?.cos2_set(),
    )?;
    Ok(CheckResult::from_items(vec![
        CheckItem::upper_bound("dist(cos^2 hat(F,G), cos^2 hat(F,G~)) <= gap(G,G~)", second, bound, tol),
        CheckItem::upper_bound("dist(cos^2 hat(G,F), cos^2 hat(G~,F)) <= gap(G,G~)", first, bound, tol),
    ]))
}

/// One verified multiset identity or multiplicity-table entry.
#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub mismatch: f64,
    pub pass: bool,
}

/// Outcome of a family of relation checks.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub pass: bool,
    pub max_mismatch: f64,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    fn from_checks(checks: Vec<RelationCheck>) -> Self {
        Self {
            pass: checks.iter().all(|c| c.pass),
            max_mismatch: checks.iter().map(|c| c.mismatch).fold(0.0, f64::max),
            checks,
        }
    }
}

fn multiset_check(name: &str, lhs: &AngleMultiset, rhs: &AngleMultiset, tol: f64) -> RelationCheck {
    let mismatch = lhs.mismatch(rhs);
    RelationCheck {
        name: name.to_string(),
        mismatch,
        pass: mismatch <= tol,
    }
}

fn count_check(name: String, observed: usize, expected: usize) -> RelationCheck {
    RelationCheck {
        name,
        mismatch: (observed as f64 - expected as f64).abs(),
        pass: observed == expected,
    }
}

/// Verifies the seven identities relating the directed angle sets of
/// (F, G) and their orthogonal complements, plus the eight-row table of 0 and
/// pi/2 multiplicities expressed through the corner dimensions.
///
/// In the check names, `c` marks a complement, `-0` removes the zero-angle
/// cluster, `-R` removes the right-angle cluster, and `refl` is the map
/// theta -> pi/2 - theta.
pub fn seven_relations_check(f: &Subspace, g: &Subspace, tol: f64) -> Result<RelationReport> {
    subspace::compat(f, g)?;
    let fc = f.orthogonal_complement();
    let gc = g.orthogonal_complement();
    for s in [f, g, &fc, &gc] {
        require_nontrivial(s)?;
    }
    let zt = DEFAULT_INTERSECT_TOL;

    let fg = directed_angles(f, g)?;
    let gf = directed_angles(g, f)?;
    let fgc = directed_angles(f, &gc)?;
    let gfc = directed_angles(g, &fc)?;
    let fcg = directed_angles(&fc, g)?;
    let gcf = directed_angles(&gc, f)?;
    let fcgc = directed_angles(&fc, &gc)?;
    let gcfc = directed_angles(&gc, &fc)?;

    let mut checks = vec![
        multiset_check("hat(F,Gc) = refl hat(F,G)", &fgc, &fg.reflected(), tol),
        multiset_check(
            "hat(G,F)-R = hat(F,G)-R",
            &gf.without_right(zt),
            &fg.without_right(zt),
            tol,
        ),
        multiset_check(
            "hat(Fc,G)-0R = refl(hat(F,G)-0R)",
            &fcg.without_zero(zt).without_right(zt),
            &fg.without_zero(zt).without_right(zt).reflected(),
            tol,
        ),
        multiset_check(
            "hat(Fc,Gc)-0R = hat(F,G)-0R",
            &fcgc.without_zero(zt).without_right(zt),
            &fg.without_zero(zt).without_right(zt),
            tol,
        ),
        multiset_check(
            "hat(G,Fc)-0 = refl(hat(F,G)-R)",
            &gfc.without_zero(zt),
            &fg.without_right(zt).reflected(),
            tol,
        ),
        multiset_check(
            "hat(Gc,F)-R = refl(hat(F,G)-0)",
            &gcf.without_right(zt),
            &fg.without_zero(zt).reflected(),
            tol,
        ),
        multiset_check(
            "hat(Gc,Fc)-0 = hat(F,G)-0",
            &gcfc.without_zero(zt),
            &fg.without_zero(zt),
            tol,
        ),
    ];

    let dims = subspace::five_parts(f, g, zt)?.dims;
    let table: [(&str, &AngleMultiset, usize, usize); 8] = [
        ("hat(F,G)", &fg, dims.m00, dims.m01),
        ("hat(G,F)", &gf, dims.m00, dims.m10),
        ("hat(F,Gc)", &fgc, dims.m01, dims.m00),
        ("hat(G,Fc)", &gfc, dims.m10, dims.m00),
        ("hat(Fc,G)", &fcg, dims.m10, dims.m11),
        ("hat(Gc,F)", &gcf, dims.m01, dims.m11),
        ("hat(Fc,Gc)", &fcgc, dims.m11, dims.m10),
        ("hat(Gc,Fc)", &gcfc, dims.m11, dims.m01),
    ];
    for (name, set, expect_zero, expect_right) in table {
        checks.push(count_check(
            format!("mult(0, {name})"),
            set.zero_multiplicity(zt),
            expect_zero,
        ));
        checks.push(count_check(
            format!("mult(pi/2, {name})"),
            set.right_multiplicity(zt),
            expect_right,
        ));
    }
    Ok(RelationReport::from_checks(checks))
}

/// Verifies the three between-angle identities across complement pairs and
/// the corresponding four-row multiplicity table (minima of corner
/// dimensions).
pub fn between_pairs_check(f: &Subspace, g: &Subspace, tol: f64) -> Result<RelationReport> {
    subspace::compat(f, g)?;
    let fc = f.orthogonal_complement();
    let gc = g.orthogonal_complement();
    for s in [f, g, &fc, &gc] {
        require_nontrivial(s)?;
    }
    let zt = DEFAULT_INTERSECT_TOL;

    let t_fg = angles_between(f, g)?;
    let t_fgc = angles_between(f, &gc)?;
    let t_fcg = angles_between(&fc, g)?;
    let t_fcgc = angles_between(&fc, &gc)?;

    let mut checks = vec![
        multiset_check(
            "T(F,G)-0R = refl(T(F,Gc)-0R)",
            &t_fg.without_zero(zt).without_right(zt),
            &t_fgc.without_zero(zt).without_right(zt).reflected(),
            tol,
        ),
        multiset_check(
            "T(F,G)-0 = T(Fc,Gc)-0",
            &t_fg.without_zero(zt),
            &t_fcgc.without_zero(zt),
            tol,
        ),
        multiset_check(
            "T(F,Gc)-0 = T(Fc,G)-0",
            &t_fgc.without_zero(zt),
            &t_fcg.without_zero(zt),
            tol,
        ),
    ];

    let dims = subspace::five_parts(f, g, zt)?.dims;
    let table: [(&str, &AngleMultiset, usize, usize); 4] = [
        ("T(F,G)", &t_fg, dims.m00, dims.m01.min(dims.m10)),
        ("T(F,Gc)", &t_fgc, dims.m01, dims.m00.min(dims.m11)),
        ("T(Fc,G)", &t_fcg, dims.m10, dims.m00.min(dims.m11)),
        ("T(Fc,Gc)", &t_fcgc, dims.m11, dims.m01.min(dims.m10)),
    ];
    for (name, set, expect_zero, expect_right) in table {
        checks.push(count_check(
            format!("mult(0, {name})"),
            set.zero_multiplicity(zt),
            expect_zero,
        ));
        checks.push(count_check(
            format!("mult(pi/2, {name})"),
            set.right_multiplicity(zt),
            expect_right,
        ));
    }
    Ok(RelationReport::from_checks(checks))
}

/// Corner dimensions carried by an angle report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CornerDims {
    pub m00: usize,
    pub m01: usize,
    pub m10: usize,
    pub m11: usize,
}

impl From<FivePartsDims> for CornerDims {
    fn from(d: FivePartsDims) -> Self {
        Self {
            m00: d.m00,
            m01: d.m01,
            m10: d.m10,
            m11: d.m11,
        }
    }
}

/// Full angle summary for a pair of subspaces.
///
/// `friedrichs_cos` and `min_gap` are absent when every between-angle is zero
/// (equal subspaces). `zero_angles_removed` counts the zero cluster dropped
/// before the Friedrichs infimum, so near-threshold pairs can be audited.
#[derive(Debug, Clone, Serialize)]
pub struct AngleReport {
    pub angles_fg: AngleMultiset,
    pub angles_gf: AngleMultiset,
    pub angles_between: AngleMultiset,
    pub gap: f64,
    pub friedrichs_cos: Option<f64>,
    pub min_gap: Option<f64>,
    pub corner_dims: CornerDims,
    pub zero_angles_removed: usize,
}

impl AngleReport {
    pub fn compute(f: &Subspace, g: &Subspace, tol: f64) -> Result<Self> {
        let angles_fg = directed_angles(f, g)?;
        let angles_gf = directed_angles(g, f)?;
        let angles_between = angles_fg.intersect_min(&angles_gf, DEFAULT_MERGE_TOL);
        let gap = gap(f, g)?;
        let (friedrichs, removed) = match friedrichs_cos_with_audit(f, g, tol) {
            Ok((c, removed)) => (Some(c), removed),
            Err(Error::AllAnglesZero) => {
                (None, angles_between.zero_multiplicity(DEFAULT_INTERSECT_TOL))
            }
            Err(e) => return Err(e),
        };
        let min_gap = friedrichs.map(|c| (1.0 - c * c).max(0.0).sqrt());
        let corner_dims = subspace::five_parts(f, g, DEFAULT_INTERSECT_TOL)?.dims.into();
        Ok(Self {
            angles_fg,
            angles_gf,
            angles_between,
            gap,
            friedrichs_cos: friedrichs,
            min_gap,
            corner_dims,
            zero_angles_removed: removed,
        })
    }
}
