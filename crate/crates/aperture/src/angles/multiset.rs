//! Sorted angle multisets with multiplicities.
//!
//! Angles are carried as (cos, sin, theta) triples: the trig pair is what the
//! decompositions actually produce, and comparisons in the pair metric
//! `max(|dcos|, |dsin|)` stay uniformly sharp at both ends of [0, pi/2],
//! where theta itself would lose digits through arccos or arcsin.

use serde::Serialize;

/// One computed angle before clustering.
#[derive(Debug, Clone, Copy)]
pub(crate) struct AngleSample {
    pub cos: f64,
    pub sin: f64,
    pub theta: f64,
}

impl AngleSample {
    /// Builds the triple from a cosine, deriving sine and the hybrid theta.
    pub(crate) fn from_cos(cos: f64) -> Self {
        let cos = cos.clamp(0.0, 1.0);
        let sin = (1.0 - cos * cos).max(0.0).sqrt();
        Self {
            cos,
            sin,
            theta: cos.acos(),
        }
    }

    pub(crate) fn from_sin(sin: f64) -> Self {
        let sin = sin.clamp(0.0, 1.0);
        let cos = (1.0 - sin * sin).max(0.0).sqrt();
        Self {
            cos,
            sin,
            theta: sin.asin(),
        }
    }

    /// Builds from independently computed cosine and sine, taking theta from
    /// whichever trig function is well conditioned at this angle.
    pub(crate) fn from_cos_sin(cos: f64, sin: f64) -> Self {
        let cos = cos.clamp(0.0, 1.0);
        let sin = sin.clamp(0.0, 1.0);
        let theta = if sin < std::f64::consts::FRAC_1_SQRT_2 {
            sin.asin()
        } else {
            cos.acos()
        };
        Self { cos, sin, theta }
    }
}

/// Distance between angles in the trig-pair metric; within a factor of
/// sqrt(2) of |theta_a - theta_b| everywhere on [0, pi/2].
pub(crate) fn sample_dist(a: &AngleSample, b: &AngleSample) -> f64 {
    (a.cos - b.cos).abs().max((a.sin - b.sin).abs())
}

/// A distinct angle value with its multiplicity.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AngleEntry {
    pub theta: f64,
    #[serde(skip)]
    pub cos: f64,
    #[serde(skip)]
    pub sin: f64,
    pub mult: usize,
}

impl AngleEntry {
    fn sample(&self) -> AngleSample {
        AngleSample {
            cos: self.cos,
            sin: self.sin,
            theta: self.theta,
        }
    }

    pub fn is_zero_angle(&self, tol: f64) -> bool {
        self.cos >= 1.0 - tol
    }

    pub fn is_right_angle(&self, tol: f64) -> bool {
        self.sin >= 1.0 - tol
    }
}

/// Sorted multiset of angles in [0, pi/2] with positive multiplicities.
#[derive(Debug, Clone, Serialize)]
#[serde(transparent)]
pub struct AngleMultiset {
    entries: Vec<AngleEntry>,
}

impl AngleMultiset {
    /// Clusters ascending samples into entries; a sample joins the current
    /// cluster while it stays within `merge_tol` of the cluster mean in the
    /// trig-pair metric.
    pub(crate) fn from_samples(samples: &[AngleSample], merge_tol: f64) -> Self {
        let mut entries: Vec<AngleEntry> = Vec::new();
        let mut sorted: Vec<AngleSample> = samples.to_vec();
        sorted.sort_by(|a, b| a.theta.total_cmp(&b.theta));
        for s in sorted {
            match entries.last_mut() {
                Some(e) if sample_dist(&e.sample(), &s) <= merge_tol => {
                    let m = e.mult as f64;
                    e.cos = (e.cos * m + s.cos) / (m + 1.0);
                    e.sin = (e.sin * m + s.sin) / (m + 1.0);
                    e.theta = (e.theta * m + s.theta) / (m + 1.0);
                    e.mult += 1;
                }
                _ => entries.push(AngleEntry {
                    theta: s.theta,
                    cos: s.cos,
                    sin: s.sin,
                    mult: 1,
                }),
            }
        }
        Self { entries }
    }

    pub fn entries(&self) -> &[AngleEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.mult).sum()
    }

    /// Angle values expanded by multiplicity, ascending.
    pub fn values(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for e in &self.entries {
            out.extend(std::iter::repeat(e.theta).take(e.mult));
        }
        out
    }

    /// Distinct squared cosines, one per entry (set semantics).
    pub fn cos2_set(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.cos * e.cos).collect()
    }

    pub fn min_cos(&self) -> Option<f64> {
        self.entries.last().map(|e| e.cos)
    }

    pub fn max_sin(&self) -> Option<f64> {
        self.entries.last().map(|e| e.sin)
    }

    pub fn smallest(&self) -> Option<&AngleEntry> {
        self.entries.first()
    }

    pub fn zero_multiplicity(&self, tol: f64) -> usize {
        self.entries
            .iter()
            .filter(|e| e.is_zero_angle(tol))
            .map(|e| e.mult)
            .sum()
    }

    pub fn right_multiplicity(&self, tol: f64) -> usize {
        self.entries
            .iter()
            .filter(|e| e.is_right_angle(tol))
            .map(|e| e.mult)
            .sum()
    }

    /// Multiset minus the zero-angle cluster.
    pub fn without_zero(&self, tol: f64) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|e| !e.is_zero_angle(tol))
                .copied()
                .collect(),
        }
    }

    /// Multiset minus the right-angle cluster.
    pub fn without_right(&self, tol: f64) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|e| !e.is_right_angle(tol))
                .copied()
                .collect(),
        }
    }

    /// The reflected multiset pi/2 - S (swaps cosines and sines).
    pub fn reflected(&self) -> Self {
        let mut entries: Vec<AngleEntry> = self
            .entries
            .iter()
            .map(|e| AngleEntry {
                theta: std::f64::consts::FRAC_PI_2 - e.theta,
                cos: e.sin,
                sin: e.cos,
                mult: e.mult,
            })
            .collect();
        entries.reverse();
        Self { entries }
    }

    /// Multiset intersection: matching entries (within `match_tol` in the
    /// trig-pair metric) keep the minimum of the two multiplicities.
    pub fn intersect_min(&self, other: &Self, match_tol: f64) -> Self {
        let mut entries = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let a = &self.entries[i];
            let b = &other.entries[j];
            if sample_dist(&a.sample(), &b.sample()) <= match_tol {
                entries.push(AngleEntry {
                    mult: a.mult.min(b.mult),
                    ..*a
                });
                i += 1;
                j += 1;
            } else if a.theta < b.theta {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self { entries }
    }

    /// Largest pairwise distance after sorted expansion; infinite when the
    /// total multiplicities differ. Both sides being sorted multisets of
    /// reals makes pairwise comparison the optimal matching.
    pub fn mismatch(&self, other: &Self) -> f64 {
        if self.total_multiplicity() != other.total_multiplicity() {
            return f64::INFINITY;
        }
        let expand = |s: &Self| -> Vec<AngleSample> {
            let mut v = Vec::with_capacity(s.total_multiplicity());
            for e in &s.entries {
                v.extend(std::iter::repeat(e.sample()).take(e.mult));
            }
            v
        };
        let a = expand(self);
        let b = expand(other);
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| sample_dist(x, y))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn clustering_merges_and_counts() {
        let samples: Vec<AngleSample> = [0.3, 0.3 + 1e-12, 0.9, std::f64::consts::FRAC_PI_2]
            .iter()
            .map(|&t| AngleSample::from_cos_sin(t.cos(), t.sin()))
            .collect();
        let ms = AngleMultiset::from_samples(&samples, 1e-8);
        assert_eq!(ms.entries().len(), 3);
        assert_eq!(ms.entries()[0].mult, 2);
        assert_eq!(ms.total_multiplicity(), 4);
        assert_eq!(ms.right_multiplicity(1e-8), 1);
        assert_eq!(ms.zero_multiplicity(1e-8), 0);
    }

    #[test]
    fn reflection_swaps_trig() {
        let samples = [AngleSample::from_cos_sin(0.6, 0.8)];
        let ms = AngleMultiset::from_samples(&samples, 1e-8).reflected();
        assert_abs_diff_eq!(ms.entries()[0].cos, 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(ms.entries()[0].sin, 0.6, epsilon = 1e-15);
    }

    #[test]
    fn intersection_takes_min_multiplicity() {
        let a = AngleMultiset::from_samples(
            &[
                AngleSample::from_cos(1.0),
                AngleSample::from_cos(1.0),
                AngleSample::from_cos(0.5),
            ],
            1e-8,
        );
        let b = AngleMultiset::from_samples(
            &[AngleSample::from_cos(1.0), AngleSample::from_cos(0.0)],
            1e-8,
        );
        let i = a.intersect_min(&b, 1e-8);
        assert_eq!(i.total_multiplicity(), 1);
        assert!(i.entries()[0].is_zero_angle(1e-12));
    }

    #[test]
    fn mismatch_detects_cardinality_and_distance() {
        let a = AngleMultiset::from_samples(&[AngleSample::from_cos(0.5)], 1e-8);
        let b = AngleMultiset::from_samples(
            &[AngleSample::from_cos(0.5), AngleSample::from_cos(0.1)],
            1e-8,
        );
        assert!(a.mismatch(&b).is_infinite());
        let c = AngleMultiset::from_samples(&[AngleSample::from_cos(0.5 + 1e-9)], 1e-8);
        assert!(a.mismatch(&c) < 2e-9);
    }
}
