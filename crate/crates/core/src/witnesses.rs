//! Nonclassicality witnesses computed from a [`MomentSet`], whichever route
//! produced it.

use std::fmt;

use crate::moments::MomentSet;

/// Below this `<a^dag a>` the Mandel factor is a 0/0 and reported as undefined.
pub const MIN_INTENSITY: f64 = 1e-15;
/// Below this `|<ab>|` the intensity-correlation criterion is inapplicable.
pub const MIN_PAIR_CORRELATION: f64 = 1e-14;

/// Why a witness has no value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Undefined {
    /// `<n_r> = 0`: the Mandel factor divides by the mean photon number.
    NoPhotons,
    /// `<ab> = 0`: the criterion divides by the pair correlation.
    NoPairCorrelation,
}

impl fmt::Display for Undefined {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Undefined::NoPhotons => f.write_str("undefined: mean photon number is zero (0/0)"),
            Undefined::NoPairCorrelation => f.write_str(
                "criterion inapplicable: <ab> vanishes, no phase-sensitive pair correlation",
            ),
        }
    }
}

/// Mandel factor `(<n^2> - <n>^2 - <n>) / <n>` of the radiation mode.
pub fn mandel_q(m: &MomentSet) -> Result<f64, Undefined> {
    if m.n_r <= MIN_INTENSITY {
        return Err(Undefined::NoPhotons);
    }
    Ok((m.n_r_sq - m.n_r * m.n_r - m.n_r) / m.n_r)
}

/// Variance of `V = (a^dag + a - b^dag - b) / sqrt(2)`.
///
/// Expanding `V^2` with `[a, a^dag] = [b, b^dag] = 1` gives
///
/// ```text
/// Var V = 1 + n_r + n_a + Re<a^2> + Re<b^2> - 2 Re<ab> - 2 Re<a^dag b>
///         - 2 (Re<a> - Re<b>)^2
/// ```
///
/// which for vanishing first and single-mode moments reduces to
/// `1 + n_r + n_a - 2 Re<ab>`. Values below 1 witness entanglement.
pub fn duan_variance(m: &MomentSet) -> f64 {
    let mean = m.mean_a.re - m.mean_b.re;
    1.0 + m.n_r + m.n_a + m.aa.re + m.bb.re - 2.0 * m.ab.re - 2.0 * m.adag_b.re - 2.0 * mean * mean
}

/// `E_c = sqrt(<n_a><n_r>) / |<ab>|`; values below 1 witness nonclassical
/// intensity correlation.
pub fn ec_ratio(m: &MomentSet) -> Result<f64, Undefined> {
    let c = m.ab.norm();
    if c <= MIN_PAIR_CORRELATION {
        return Err(Undefined::NoPairCorrelation);
    }
    Ok((m.n_a.max(0.0) * m.n_r.max(0.0)).sqrt() / c)
}

/// All witnesses for one moment set, with the moments kept for provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessReport {
    pub mandel_q: Result<f64, Undefined>,
    pub duan_variance: f64,
    pub ec_ratio: Result<f64, Undefined>,
    pub entangled_by_duan: bool,
    pub entangled_by_ec: bool,
    pub moments: MomentSet,
}

impl WitnessReport {
    pub fn super_poissonian(&self) -> bool {
        matches!(self.mandel_q, Ok(q) if q > 0.0)
    }
}

pub fn witness_report(m: &MomentSet) -> WitnessReport {
    let duan = duan_variance(m);
    let ec = ec_ratio(m);
    WitnessReport {
        mandel_q: mandel_q(m),
        duan_variance: duan,
        ec_ratio: ec,
        entangled_by_duan: duan < 1.0,
        entangled_by_ec: matches!(ec, Ok(e) if e < 1.0),
        moments: *m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::analytic_moments;
    use crate::moments::MomentSource;

    #[test]
    fn vacuum_report() {
        let r = witness_report(&analytic_moments(0.0).unwrap());
        assert_eq!(r.mandel_q, Err(Undefined::NoPhotons));
        assert_eq!(r.duan_variance, 1.0);
        assert_eq!(r.ec_ratio, Err(Undefined::NoPairCorrelation));
        assert!(!r.entangled_by_duan && !r.entangled_by_ec);
    }

    #[test]
    fn analytic_report_at_tau_one() {
        let r = witness_report(&analytic_moments(1.0).unwrap());
        assert!((r.mandel_q.unwrap() - 1.381_097_845_541_815_5).abs() < 1e-12);
        assert!((r.duan_variance - 0.135_335_283_236_612_7).abs() < 1e-12);
        assert!((r.ec_ratio.unwrap() - 0.761_594_155_955_764_9).abs() < 1e-12);
        assert!(r.entangled_by_duan && r.entangled_by_ec);
        assert!(r.super_poissonian());
        assert_eq!(r.moments.source, MomentSource::Analytic);
    }

    #[test]
    fn coherent_light_is_poissonian() {
        let mut m = MomentSet::vacuum(MomentSource::Analytic);
        m.n_r = 4.0;
        m.n_r_sq = 16.0 + 4.0;
        assert!(mandel_q(&m).unwrap().abs() < 1e-15);
    }

    #[test]
    fn ec_small_tau_limit() {
        let r = ec_ratio(&analytic_moments(1e-6).unwrap()).unwrap();
        assert!((r - 1e-6).abs() < 1e-12);
    }

    #[test]
    fn zero_pair_correlation_is_flagged_not_infinite() {
        let mut m = MomentSet::vacuum(MomentSource::TrilinearNumeric);
        m.n_r = 0.4;
        m.n_a = 0.4;
        m.n_r_sq = 0.6;
        let r = witness_report(&m);
        assert_eq!(r.ec_ratio, Err(Undefined::NoPairCorrelation));
        assert!(!r.entangled_by_ec);
        assert!((r.duan_variance - 1.8).abs() < 1e-15);
        assert!(!r.entangled_by_duan);
        assert!(Undefined::NoPairCorrelation
            .to_string()
            .contains("inapplicable"));
    }

    #[test]
    fn coherent_displacement_does_not_change_variance() {
        // displacing a by x and b by y shifts V by a constant
        use num_complex::Complex64 as C64;
        let base = analytic_moments(0.4).unwrap();
        let (x, y) = (0.7, -0.3);
        let mut shifted = base;
        shifted.mean_a = C64::new(x, 0.0);
        shifted.mean_b = C64::new(y, 0.0);
        shifted.n_r = base.n_r + x * x;
        shifted.n_a = base.n_a + y * y;
        shifted.aa = C64::new(x * x, 0.0);
        shifted.bb = C64::new(y * y, 0.0);
        shifted.ab = base.ab + x * y;
        shifted.adag_b = C64::new(x * y, 0.0);
        assert!((duan_variance(&shifted) - duan_variance(&base)).abs() < 1e-14);
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::analytic::analytic_moments;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn analytic_identities(tau in 1e-3f64..3.0) {
            let r = witness_report(&analytic_moments(tau).unwrap());
            // absolute: rounding of the O(e^{2 tau}) moments caps the relative accuracy
            prop_assert!((r.duan_variance - (-2.0 * tau).exp()).abs() < 1e-12);
            prop_assert!((r.ec_ratio.unwrap() - tau.tanh()).abs() < 1e-12);
            prop_assert!(r.entangled_by_duan && r.entangled_by_ec);
            prop_assert!(r.duan_variance >= 0.0);
        }
    }
}
