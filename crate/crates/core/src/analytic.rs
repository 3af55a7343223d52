//! Closed-form moments of the two-mode squeezed state generated by the
//! parametric Hamiltonian `iG(a^dag b^dag - a b)` from the joint vacuum.
//!
//! With `tau = G t`:
//! `<a^dag a> = <b^dag b> = sinh^2 tau`, `<a b> = sinh tau cosh tau`, and all
//! first moments, single-mode squeezing moments and `<a^dag b>` vanish.
//! `<n^2>` follows from the Gaussian factorization `2<n>^2 + <n>`.

use num_complex::Complex64 as C64;

use crate::error::{invalid, Result};
use crate::moments::{MomentSet, MomentSource};

/// Moments of the parametric state at dimensionless time `tau >= 0`.
pub fn analytic_moments(tau: f64) -> Result<MomentSet> {
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(invalid("tau", tau, "must be non-negative and finite"));
    }
    let (s, c) = (tau.sinh(), tau.cosh());
    let n = s * s;
    Ok(MomentSet {
        n_r: n,
        n_a: n,
        ab: C64::new(s * c, 0.0),
        n_r_sq: 2.0 * n * n + n,
        ..MomentSet::vacuum(MomentSource::Analytic)
    })
}

/// Photon-number distribution of the radiation mode: `tanh^{2m}(tau) / cosh^2(tau)`.
pub fn thermal_marginal(tau: f64, m: usize) -> f64 {
    let t2 = tau.tanh().powi(2);
    t2.powi(m as i32) / tau.cosh().powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_at_zero() {
        let m = analytic_moments(0.0).unwrap();
        assert_eq!(m.n_r, 0.0);
        assert_eq!(m.n_a, 0.0);
        assert_eq!(m.ab.norm(), 0.0);
        assert_eq!(m.n_r_sq, 0.0);
        assert_eq!(m.max_vanishing_moment(), 0.0);
    }

    #[test]
    fn values_at_tau_one() {
        let m = analytic_moments(1.0).unwrap();
        assert!((m.n_r - 1.381_097_845_541_816).abs() < 1e-12);
        assert!((m.ab.re - 1.813_430_203_923_509).abs() < 1e-12);
        assert_eq!(m.ab.im, 0.0);
        assert_eq!(m.n_r, m.n_a);
    }

    #[test]
    fn rejects_negative_time() {
        assert!(analytic_moments(-0.1).is_err());
        assert!(analytic_moments(f64::NAN).is_err());
    }

    #[test]
    fn mandel_numerator_equals_n_squared() {
        for i in 0..=300 {
            let m = analytic_moments(i as f64 * 0.01).unwrap();
            let num = m.n_r_sq - m.n_r * m.n_r - m.n_r;
            assert!((num - m.n_r * m.n_r).abs() <= 1e-12 * (1.0 + m.n_r * m.n_r));
        }
    }

    #[test]
    fn occupation_strictly_increasing() {
        let mut prev = -1.0;
        for i in 0..=300 {
            let n = analytic_moments(i as f64 * 0.01).unwrap().n_r;
            assert!(n > prev);
            prev = n;
        }
    }

    #[test]
    fn marginal_sums_to_one_and_reproduces_mean() {
        let tau = 0.7;
        let p: Vec<f64> = (0..400).map(|m| thermal_marginal(tau, m)).collect();
        let total: f64 = p.iter().sum();
        let mean: f64 = p.iter().enumerate().map(|(m, p)| m as f64 * p).sum();
        assert!((total - 1.0).abs() < 1e-13);
        assert!((mean - tau.sinh().powi(2)).abs() < 1e-12);
    }
}
