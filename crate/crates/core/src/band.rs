//! Band-edge dispersion and the frequency-dependent emitter-field coupling.
//!
//! Near the edge of a one-dimensional gap the effective-mass expansion gives
//!
//! ```text
//! omega_k = omega_c * (1 + (k/k0 - 1)^2)
//! ```
//!
//! and the dipole coupling falls off as `1/sqrt(omega_k)`. Natural units with
//! `hbar = 1` are used throughout, so energies and angular frequencies share units.
//!
//! Sweeps work in a dimensionless mode: `omega_c = 1`, `tau = G(omega_c) t` is the
//! time axis, and the whole `k` dependence is carried by [`normalized_pump_ratio`].

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Lower end of the wavenumber window in which the quadratic expansion is trusted.
pub const NEAR_EDGE_MIN: f64 = 0.75;
/// Upper end of the near-edge window.
pub const NEAR_EDGE_MAX: f64 = 1.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionParams {
    /// Band-edge angular frequency.
    pub omega_c: f64,
    /// Wavenumber relative to the edge, `k/k0`.
    pub k_ratio: f64,
}

impl DispersionParams {
    pub fn new(omega_c: f64, k_ratio: f64) -> Result<Self> {
        let d = Self { omega_c, k_ratio };
        d.validate()?;
        Ok(d)
    }

    /// Dimensionless mode: `omega_c = 1`.
    pub fn dimensionless(k_ratio: f64) -> Result<Self> {
        Self::new(1.0, k_ratio)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_c > 0.0) || !self.omega_c.is_finite() {
            return Err(invalid(
                "omega_c",
                self.omega_c,
                "must be positive and finite",
            ));
        }
        if !(self.k_ratio > 0.0) || !self.k_ratio.is_finite() {
            return Err(invalid(
                "k_ratio",
                self.k_ratio,
                "must be positive and finite",
            ));
        }
        Ok(())
    }

    pub fn is_near_edge(&self) -> bool {
        is_near_edge(self.k_ratio)
    }
}

/// Whether `k_ratio` lies inside the window where the expansion about the edge holds.
pub fn is_near_edge(k_ratio: f64) -> bool {
    (NEAR_EDGE_MIN..=NEAR_EDGE_MAX).contains(&k_ratio)
}

/// Physical constants entering the dipole coupling and the c-number pump amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingParams {
    /// Transition frequency `E_a - E_b`.
    pub omega_a: f64,
    pub mu_ab: f64,
    pub epsilon_0: f64,
    pub volume: f64,
    /// Real amplitude standing in for the upper-level boson operator.
    pub gamma: f64,
}

impl CouplingParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("omega_a", self.omega_a),
            ("mu_ab", self.mu_ab),
            ("epsilon_0", self.epsilon_0),
            ("volume", self.volume),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(invalid(name, v, "must be positive and finite"));
            }
        }
        if !(self.gamma >= 0.0) || !self.gamma.is_finite() {
            return Err(invalid(
                "gamma",
                self.gamma,
                "must be non-negative and finite",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub dispersion: DispersionParams,
    pub coupling: CouplingParams,
    /// Natural-unit mode in which `omega_c = 1` and times are measured as `G(omega_c) t`.
    pub dimensionless: bool,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        self.dispersion.validate()?;
        self.coupling.validate()?;
        if self.dimensionless && self.dispersion.omega_c != 1.0 {
            return Err(invalid(
                "omega_c",
                self.dispersion.omega_c,
                "dimensionless mode requires omega_c = 1",
            ));
        }
        Ok(())
    }

    /// Radiation frequency at the configured wavenumber.
    pub fn omega_k(&self) -> Result<f64> {
        band_frequency(&self.dispersion)
    }

    /// Coupling `g(omega_k)` at the configured wavenumber.
    pub fn coupling(&self) -> Result<f64> {
        coupling_strength(&self.coupling, self.omega_k()?)
    }

    /// Effective pump `G = g(omega_k) * gamma`.
    pub fn effective_pump(&self) -> Result<f64> {
        effective_pump(self.coupling()?, self.coupling.gamma)
    }

    /// Effective pump at the band edge, the reference scale of the dimensionless time axis.
    pub fn edge_pump(&self) -> Result<f64> {
        let g = coupling_strength(&self.coupling, self.dispersion.omega_c)?;
        effective_pump(g, self.coupling.gamma)
    }
}

/// Dispersion relation near the edge: `omega_c * (1 + (k_ratio - 1)^2)`.
///
/// Values of `k_ratio` outside `[0.75, 1.25]` are accepted but logged, since the
/// quadratic expansion loses validity away from the edge.
pub fn band_frequency(d: &DispersionParams) -> Result<f64> {
    d.validate()?;
    if !d.is_near_edge() {
        warn!(
            "k/k0 = {} lies outside the near-edge window [{}, {}]",
            d.k_ratio, NEAR_EDGE_MIN, NEAR_EDGE_MAX
        );
    }
    let dk = d.k_ratio - 1.0;
    Ok(d.omega_c * (1.0 + dk * dk))
}

/// Dipole coupling `omega_a * mu_ab * sqrt(1 / (2 epsilon_0 V omega_k))`.
pub fn coupling_strength(c: &CouplingParams, omega_k: f64) -> Result<f64> {
    if !(omega_k > 0.0) || !omega_k.is_finite() {
        return Err(invalid("omega_k", omega_k, "must be positive and finite"));
    }
    c.validate()?;
    Ok(c.omega_a * c.mu_ab * (1.0 / (2.0 * c.epsilon_0 * c.volume * omega_k)).sqrt())
}

/// `G = g * gamma`.
pub fn effective_pump(g: f64, gamma: f64) -> Result<f64> {
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(invalid("gamma", gamma, "must be non-negative and finite"));
    }
    if !g.is_finite() {
        return Err(invalid("g", g, "must be finite"));
    }
    Ok(g * gamma)
}

/// `G(omega_k) / G(omega_c) = 1 / sqrt(1 + (k_ratio - 1)^2)`.
///
/// Combines the dispersion with the `1/sqrt(omega_k)` coupling so a sweep over
/// `k/k0` needs no physical constants.
pub fn normalized_pump_ratio(k_ratio: f64) -> Result<f64> {
    if !(k_ratio > 0.0) || !k_ratio.is_finite() {
        return Err(invalid("k_ratio", k_ratio, "must be positive and finite"));
    }
    let dk = k_ratio - 1.0;
    Ok(1.0 / (1.0 + dk * dk).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_coupling() -> CouplingParams {
        CouplingParams {
            omega_a: 1.0,
            mu_ab: 1.0,
            epsilon_0: 0.5,
            volume: 1.0,
            gamma: 1.0,
        }
    }

    #[test]
    fn frequency_at_edge_and_window_ends() {
        let f = |k| band_frequency(&DispersionParams::dimensionless(k).unwrap()).unwrap();
        assert_eq!(f(1.0), 1.0);
        assert!((f(1.25) - 1.0625).abs() < 1e-15);
        assert!((f(0.75) - 1.0625).abs() < 1e-15);
        assert!((f(1.12) - 1.0144).abs() < 1e-14);
        // within 6% of the edge across the whole window
        assert!(f(1.25) / f(1.0) - 1.0 < 0.065);
    }

    #[test]
    fn frequency_rejects_nonpositive_inputs() {
        assert!(DispersionParams::new(0.0, 1.0).is_err());
        assert!(DispersionParams::new(1.0, -0.1).is_err());
        let bad = DispersionParams {
            omega_c: -1.0,
            k_ratio: 1.0,
        };
        assert!(band_frequency(&bad).is_err());
    }

    #[test]
    fn far_from_edge_is_a_warning_not_an_error() {
        let d = DispersionParams::dimensionless(2.0).unwrap();
        assert!(!d.is_near_edge());
        assert_eq!(band_frequency(&d).unwrap(), 2.0);
    }

    #[test]
    fn coupling_unit_case_and_scaling() {
        let c = unit_coupling();
        assert!((coupling_strength(&c, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let r = coupling_strength(&c, 2.0).unwrap() / coupling_strength(&c, 1.0).unwrap();
        assert!((r - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(coupling_strength(&c, 0.0).is_err());
        assert!(coupling_strength(&c, -1.0).is_err());
    }

    #[test]
    fn coupling_at_k_1_12_matches_pump_ratio() {
        let c = unit_coupling();
        let g0 = coupling_strength(&c, 1.0).unwrap();
        let gk = coupling_strength(&c, 1.0144).unwrap();
        // 1/sqrt(1.0144)
        assert!((gk / g0 - 0.992_876_838_486_922).abs() < 1e-9);
        let ratio = normalized_pump_ratio(1.12).unwrap();
        assert!((gk / g0 - ratio).abs() < 1e-15);
    }

    #[test]
    fn effective_pump_cases() {
        assert!((effective_pump(0.1, 10.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(effective_pump(3.7, 0.0).unwrap(), 0.0);
        assert!(effective_pump(1.0, -1.0).is_err());
        let g = 0.992_876_838_486_922;
        assert_eq!(effective_pump(g, 1.0).unwrap(), g);
    }

    #[test]
    fn model_params_compose() {
        let m = ModelParams {
            dispersion: DispersionParams::dimensionless(1.12).unwrap(),
            coupling: unit_coupling(),
            dimensionless: true,
        };
        m.validate().unwrap();
        let ratio = m.effective_pump().unwrap() / m.edge_pump().unwrap();
        assert!((ratio - normalized_pump_ratio(1.12).unwrap()).abs() < 1e-15);

        let mut bad = m;
        bad.dispersion.omega_c = 2.0;
        assert!(bad.validate().is_err());
        bad.dimensionless = false;
        bad.validate().unwrap();
        let mut neg = m;
        neg.coupling.gamma = -0.5;
        assert!(neg.validate().is_err());
    }

    #[test]
    fn pump_ratio_is_edge_peaked() {
        assert_eq!(normalized_pump_ratio(1.0).unwrap(), 1.0);
        let k: Vec<f64> = (0..=100).map(|i| (150 + i) as f64 / 200.0).collect();
        let r: Vec<f64> = k
            .iter()
            .map(|&k| normalized_pump_ratio(k).unwrap())
            .collect();
        let w: Vec<f64> = k
            .iter()
            .map(|&k| band_frequency(&DispersionParams::dimensionless(k).unwrap()).unwrap())
            .collect();
        for i in 0..k.len() {
            if i != 50 {
                assert!(r[i] < 1.0);
                assert!(w[i] > 1.0);
            }
        }
        assert_eq!(k[50], 1.0);
        assert!(normalized_pump_ratio(0.0).is_err());
    }
}
