//! Husimi Q-function of the two-mode squeezed state and its numerical validation.
//!
//! ```text
//! Q(alpha, beta, tau) = exp(-|alpha|^2 - |beta|^2 + (alpha* beta* + alpha beta) tanh tau)
//!                       / (pi^2 cosh^2 tau)
//! ```
//!
//! Writing `alpha = x1 + i y1`, `beta = x2 + i y2`, the exponent only couples
//! `Re(alpha beta) = x1 x2 - y1 y2`. Each real coordinate then has marginal
//! standard deviation `cosh(tau) / sqrt(2)`, which sets the integration extent.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{invalid, Error, Result};

/// Minimum integration half-width, in marginal standard deviations.
pub const MIN_SIGMAS: f64 = 6.0;
/// Largest tolerated estimate of the trapezoid aliasing error.
pub const MAX_ALIASING: f64 = 1e-6;

/// Phase-space point `(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QPoint {
    pub alpha: C64,
    pub beta: C64,
}

impl QPoint {
    pub fn new(alpha: C64, beta: C64) -> Self {
        Self { alpha, beta }
    }

    pub fn is_finite(&self) -> bool {
        self.alpha.is_finite() && self.beta.is_finite()
    }
}

/// Q-function density at `p` for dimensionless time `tau = G t`.
pub fn q_function_density(p: QPoint, tau: f64) -> f64 {
    let t = tau.tanh();
    let c = tau.cosh();
    // alpha* beta* + alpha beta = 2 Re(alpha beta)
    let cross = 2.0 * (p.alpha * p.beta).re;
    let exponent = -p.alpha.norm_sqr() - p.beta.norm_sqr() + cross * t;
    exponent.exp() / (PI * PI * c * c)
}

/// Marginal standard deviation of each real phase-space coordinate.
pub fn marginal_sigma(tau: f64) -> f64 {
    tau.cosh() / SQRT_2
}

/// Tensor-product trapezoid grid whose extent adapts to `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureGrid {
    /// Half-width of every axis in units of [`marginal_sigma`].
    pub n_sigma: f64,
    pub points_per_axis: usize,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self {
            n_sigma: MIN_SIGMAS,
            points_per_axis: 64,
        }
    }
}

impl QuadratureGrid {
    pub fn half_width(&self, tau: f64) -> f64 {
        self.n_sigma * marginal_sigma(tau)
    }

    pub fn spacing(&self, tau: f64) -> f64 {
        2.0 * self.half_width(tau) / (self.points_per_axis - 1) as f64
    }

    /// Mass of the 4D Gaussian outside the box, bounded by the sum over axes.
    pub fn estimated_truncation(&self) -> f64 {
        4.0 * erfc(self.n_sigma / SQRT_2)
    }

    /// Leading aliasing term of the trapezoid rule on the correlated Gaussian.
    ///
    /// The smallest covariance eigenvalue of each `(x1, x2)` or `(y1, y2)` block is
    /// `1 / (2 (1 + tanh tau))`.
    pub fn estimated_aliasing(&self, tau: f64) -> f64 {
        let h = self.spacing(tau);
        let lambda_min = 1.0 / (2.0 * (1.0 + tau.tanh()));
        16.0 * (-2.0 * PI * PI * lambda_min / (h * h)).exp()
    }

    pub fn validate(&self, tau: f64) -> Result<()> {
        if !(tau >= 0.0) || !tau.is_finite() {
            return Err(invalid("tau", tau, "must be non-negative and finite"));
        }
        if self.points_per_axis < 3 {
            return Err(invalid(
                "points_per_axis",
                self.points_per_axis as f64,
                "need at least 3 points per axis",
            ));
        }
        if !(self.n_sigma >= MIN_SIGMAS) {
            return Err(Error::InadequateGrid {
                tau,
                reason: "extent narrower than 6 marginal standard deviations",
                estimated_truncation: self.estimated_truncation(),
            });
        }
        let aliasing = self.estimated_aliasing(tau);
        if aliasing > MAX_ALIASING {
            return Err(Error::InadequateGrid {
                tau,
                reason: "spacing too coarse for the narrow Gaussian direction",
                estimated_truncation: aliasing,
            });
        }
        Ok(())
    }
}

/// Integrals of the Q-function over the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QIntegrals {
    pub tau: f64,
    /// `int Q`
    pub normalization: f64,
    /// `int |alpha|^2 Q = <a a^dag>`
    pub antinormal_aa_dag: f64,
    /// `int |beta|^2 Q = <b b^dag>`
    pub antinormal_bb_dag: f64,
    /// `int alpha beta Q = <a b>`
    pub alpha_beta: C64,
    pub half_width: f64,
    pub spacing: f64,
    pub estimated_truncation: f64,
}

/// Antinormally ordered moments recovered from the Q-function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QMomentCheck {
    pub antinormal_aa_dag: f64,
    pub alpha_beta: C64,
}

/// Integrates the Q-function over a 4D tensor-product trapezoid grid.
///
/// The exponential splits into an `(x1, x2)` factor and a `(y1, y2)` factor, so
/// both are tabulated once; the 4D sum itself runs in parallel over the outermost
/// axis and reduces the per-slice partial sums in index order.
pub fn integrate(tau: f64, grid: &QuadratureGrid) -> Result<QIntegrals> {
    grid.validate(tau)?;
    let n = grid.points_per_axis;
    let half = grid.half_width(tau);
    let h = grid.spacing(tau);
    let t = tau.tanh();
    let c = tau.cosh();
    let prefactor = 1.0 / (PI * PI * c * c);

    let nodes: Vec<f64> = (0..n).map(|i| -half + i as f64 * h).collect();
    let weights: Vec<f64> = (0..n)
        .map(|i| if i == 0 || i == n - 1 { 0.5 * h } else { h })
        .collect();

    // real block: exp(-x1^2 - x2^2 + 2 t x1 x2); imaginary block: exp(-y1^2 - y2^2 - 2 t y1 y2)
    let table = |sign: f64| -> Vec<f64> {
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let (u, v) = (nodes[i], nodes[j]);
                out[i * n + j] =
                    weights[i] * weights[j] * (-u * u - v * v + sign * 2.0 * t * u * v).exp();
            }
        }
        out
    };
    let re_block = table(1.0);
    let im_block = table(-1.0);

    #[derive(Default, Clone, Copy)]
    struct Partial {
        norm: f64,
        aa: f64,
        bb: f64,
        ab_re: f64,
        ab_im: f64,
    }

    let partials: Vec<Partial> = (0..n)
        .into_par_iter()
        .map(|i1| {
            let x1 = nodes[i1];
            let mut p = Partial::default();
            for i2 in 0..n {
                let x2 = nodes[i2];
                let wx = re_block[i1 * n + i2];
                for j1 in 0..n {
                    let y1 = nodes[j1];
                    for j2 in 0..n {
                        let y2 = nodes[j2];
                        let q = wx * im_block[j1 * n + j2];
                        p.norm += q;
                        p.aa += (x1 * x1 + y1 * y1) * q;
                        p.bb += (x2 * x2 + y2 * y2) * q;
                        p.ab_re += (x1 * x2 - y1 * y2) * q;
                        p.ab_im += (x1 * y2 + y1 * x2) * q;
                    }
                }
            }
            p
        })
        .collect();

    let total = partials.iter().fold(Partial::default(), |acc, p| Partial {
        norm: acc.norm + p.norm,
        aa: acc.aa + p.aa,
        bb: acc.bb + p.bb,
        ab_re: acc.ab_re + p.ab_re,
        ab_im: acc.ab_im + p.ab_im,
    });

    Ok(QIntegrals {
        tau,
        normalization: prefactor * total.norm,
        antinormal_aa_dag: prefactor * total.aa,
        antinormal_bb_dag: prefactor * total.bb,
        alpha_beta: C64::new(prefactor * total.ab_re, prefactor * total.ab_im),
        half_width: half,
        spacing: h,
        estimated_truncation: grid.estimated_truncation(),
    })
}

/// Numerical normalization of the Q-function; approaches 1 on an adequate grid.
pub fn q_normalization(tau: f64, grid: &QuadratureGrid) -> Result<f64> {
    Ok(integrate(tau, grid)?.normalization)
}

/// Antinormal moments `int |alpha|^2 Q = cosh^2 tau` and `int alpha beta Q = sinh tau cosh tau`.
pub fn q_moment_check(tau: f64, grid: &QuadratureGrid) -> Result<QMomentCheck> {
    let r = integrate(tau, grid)?;
    Ok(QMomentCheck {
        antinormal_aa_dag: r.antinormal_aa_dag,
        alpha_beta: r.alpha_beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `int exp(-1/2 x^T P x) d^4x = (2 pi)^2 / sqrt(det P)` with `P` block diagonal,
    /// each 2x2 block `[[2, -+2t], [-+2t, 2]]`.
    fn gaussian_determinant_normalization(tau: f64) -> f64 {
        let t = tau.tanh();
        let det_block = 4.0 - 4.0 * t * t;
        let integral = (2.0 * PI).powi(2) / (det_block * det_block).sqrt();
        integral / (PI * PI * tau.cosh().powi(2))
    }

    #[test]
    fn density_at_origin() {
        let o = QPoint::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        assert!((q_function_density(o, 0.0) - 1.0 / (PI * PI)).abs() < 1e-15);
        assert!((q_function_density(o, 1.0) - 0.042_552_297_391_744_64).abs() < 1e-15);
    }

    #[test]
    fn density_phase_invariance_and_positivity() {
        let p = QPoint::new(C64::new(0.3, -1.1), C64::new(-0.7, 0.4));
        for &tau in &[0.0, 0.5, 1.3] {
            let base = q_function_density(p, tau);
            for k in 0..12 {
                let phi = C64::from_polar(1.0, k as f64 * 0.5);
                let rotated = QPoint::new(p.alpha * phi, p.beta * phi.conj());
                assert!((q_function_density(rotated, tau) - base).abs() < 1e-15);
            }
            assert!(base >= 0.0);
        }
    }

    #[test]
    fn closed_form_normalization_is_one() {
        for &tau in &[0.0, 0.25, 1.0, 2.0] {
            assert!((gaussian_determinant_normalization(tau) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn vacuum_quadrature_normalizes() {
        let r = integrate(0.0, &QuadratureGrid::default()).unwrap();
        assert!((r.normalization - 1.0).abs() < 1e-6);
        assert!((r.antinormal_aa_dag - 1.0).abs() < 1e-6);
        assert!(r.alpha_beta.norm() < 1e-12);
    }

    #[test]
    fn quadrature_matches_closed_forms() {
        for &tau in &[0.25, 0.5, 1.0] {
            let r = integrate(tau, &QuadratureGrid::default()).unwrap();
            assert!((r.normalization - gaussian_determinant_normalization(tau)).abs() < 1e-6);
            assert!((r.antinormal_aa_dag - tau.cosh().powi(2)).abs() < 1e-5);
            assert!((r.antinormal_bb_dag - tau.cosh().powi(2)).abs() < 1e-5);
            assert!((r.alpha_beta.re - tau.sinh() * tau.cosh()).abs() < 1e-5);
            assert!(r.alpha_beta.im.abs() < 1e-12);
        }
    }

    #[test]
    fn tabulated_factors_reproduce_density() {
        // the factorized integrand must agree with the direct complex evaluation
        let tau: f64 = 0.8;
        let t = tau.tanh();
        let c2 = tau.cosh().powi(2);
        for &(x1, y1, x2, y2) in &[
            (0.1f64, 0.2f64, -0.3f64, 0.5f64),
            (1.5, -0.7, 1.2, 0.9),
            (-2.0, 0.0, 0.0, 2.0),
        ] {
            let re = (-(x1 * x1) - x2 * x2 + 2.0 * t * x1 * x2).exp();
            let im = (-(y1 * y1) - y2 * y2 - 2.0 * t * y1 * y2).exp();
            let direct = q_function_density(QPoint::new(C64::new(x1, y1), C64::new(x2, y2)), tau);
            assert!((re * im / (PI * PI * c2) - direct).abs() < 1e-15);
        }
    }

    #[test]
    fn narrow_grid_is_diagnosed() {
        let narrow = QuadratureGrid {
            n_sigma: 3.0,
            points_per_axis: 64,
        };
        match integrate(1.0, &narrow) {
            Err(Error::InadequateGrid {
                estimated_truncation,
                ..
            }) => assert!(estimated_truncation > 1e-3),
            other => panic!("expected grid diagnostic, got {other:?}"),
        }
        let coarse = QuadratureGrid {
            n_sigma: 6.0,
            points_per_axis: 8,
        };
        assert!(matches!(
            integrate(1.0, &coarse),
            Err(Error::InadequateGrid { .. })
        ));
    }

    #[test]
    fn wider_extent_needed_at_later_times() {
        let g = QuadratureGrid::default();
        assert!(g.half_width(2.0) > g.half_width(1.0));
        // a box sized for tau = 1 covers fewer than 6 sigma at tau = 2
        let fixed = g.half_width(1.0);
        assert!(fixed / marginal_sigma(2.0) < MIN_SIGMAS);
    }

    #[test]
    fn deterministic_for_fixed_grid() {
        let g = QuadratureGrid {
            n_sigma: 6.5,
            points_per_axis: 40,
        };
        let a = integrate(0.5, &g).unwrap();
        let b = integrate(0.5, &g).unwrap();
        assert_eq!(a.normalization.to_bits(), b.normalization.to_bits());
        assert_eq!(a.alpha_beta.re.to_bits(), b.alpha_beta.re.to_bits());
    }
}
