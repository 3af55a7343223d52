//! Second-moment summary of the radiation (`a`) and lower-level (`b`) modes.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Which route produced a [`MomentSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentSource {
    Analytic,
    BilinearNumeric,
    TrilinearNumeric,
}

impl std::fmt::Display for MomentSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Analytic => "analytic",
            Self::BilinearNumeric => "bilinear-numeric",
            Self::TrilinearNumeric => "trilinear-numeric",
        })
    }
}

/// Moments from which every witness is computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    /// `<a>`
    pub mean_a: C64,
    /// `<b>`
    pub mean_b: C64,
    /// `<a^dag a>`, mean photon number.
    pub n_r: f64,
    /// `<b^dag b>`, mean lower-level occupancy.
    pub n_a: f64,
    /// `<a^2>`
    pub aa: C64,
    /// `<b^2>`
    pub bb: C64,
    /// `<a b>`
    pub ab: C64,
    /// `<a^dag b>`
    pub adag_b: C64,
    /// `<(a^dag a)^2>`
    pub n_r_sq: f64,
    pub source: MomentSource,
    /// Probability mass outside the retained basis (zero for closed forms).
    pub leakage: f64,
}

impl MomentSet {
    /// All moments zero: the joint vacuum.
    pub fn vacuum(source: MomentSource) -> Self {
        Self {
            mean_a: C64::new(0.0, 0.0),
            mean_b: C64::new(0.0, 0.0),
            n_r: 0.0,
            n_a: 0.0,
            aa: C64::new(0.0, 0.0),
            bb: C64::new(0.0, 0.0),
            ab: C64::new(0.0, 0.0),
            adag_b: C64::new(0.0, 0.0),
            n_r_sq: 0.0,
            source,
            leakage: 0.0,
        }
    }

    /// Checks `n_r, n_a >= 0` and the Cauchy-Schwarz bound `|<ab>|^2 <= (n_r + 1)(n_a + 1)`.
    pub fn is_physical(&self, tol: f64) -> bool {
        self.n_r >= -tol
            && self.n_a >= -tol
            && self.ab.norm_sqr() <= (self.n_r + 1.0) * (self.n_a + 1.0) * (1.0 + tol) + tol
    }

    /// Largest modulus among the moments that vanish for the two-mode squeezed family.
    pub fn max_vanishing_moment(&self) -> f64 {
        [self.mean_a, self.mean_b, self.aa, self.bb, self.adag_b]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_is_physical() {
        let v = MomentSet::vacuum(MomentSource::Analytic);
        assert!(v.is_physical(0.0));
        assert_eq!(v.max_vanishing_moment(), 0.0);
    }

    #[test]
    fn cauchy_schwarz_violation_detected() {
        let mut m = MomentSet::vacuum(MomentSource::BilinearNumeric);
        m.n_r = 1.0;
        m.n_a = 1.0;
        m.ab = C64::new(2.5, 0.0);
        assert!(!m.is_physical(1e-12));
        m.ab = C64::new(2.0, 0.0);
        assert!(m.is_physical(1e-12));
    }

    #[test]
    fn source_tags_render_kebab_case() {
        assert_eq!(
            MomentSource::TrilinearNumeric.to_string(),
            "trilinear-numeric"
        );
        assert_eq!(MomentSource::Analytic.to_string(), "analytic");
    }
}
