//! Generators of the parametric and trilinear dynamics restricted to their
//! invariant chains.
//!
//! The parametric Hamiltonian `iG(a^dag b^dag - a b)` acting on `|0, 0>` never
//! leaves the chain `|m, m>`. The trilinear Hamiltonian
//! `ig(a^dag b^dag c - a b c^dag)` conserves `n_r - n_b` and `n_r + n_c`, so from
//! `|0, 0, N>` it stays in the sector `{|m, m, N - m> : m = 0..=N}`.

use num_complex::Complex64 as C64;

use super::tridiag::TridiagonalHermitian;
use crate::error::{invalid, Result};

/// Parametric generator on the chain `|m, m>`, `m = 0..=cutoff`.
///
/// `<m + 1| H |m> = i G (m + 1)` since `a^dag b^dag |m, m> = (m + 1) |m + 1, m + 1>`.
pub fn build_bilinear_generator(pump: f64, cutoff: usize) -> Result<TridiagonalHermitian> {
    if !(pump >= 0.0) || !pump.is_finite() {
        return Err(invalid("G", pump, "must be non-negative and finite"));
    }
    if cutoff < 1 {
        return Err(invalid("cutoff", cutoff as f64, "must be at least 1"));
    }
    let sub = (0..cutoff)
        .map(|m| C64::new(0.0, pump * (m + 1) as f64))
        .collect();
    TridiagonalHermitian::new(vec![0.0; cutoff + 1], sub)
}

/// Trilinear generator on sector `N`, basis `|m, m, N - m>`.
///
/// `a^dag b^dag c |m, m, N - m> = (m + 1) sqrt(N - m) |m + 1, m + 1, N - m - 1>`.
pub fn build_trilinear_sector_generator(g: f64, sector: usize) -> Result<TridiagonalHermitian> {
    if !(g >= 0.0) || !g.is_finite() {
        return Err(invalid("g", g, "must be non-negative and finite"));
    }
    let sub = (0..sector)
        .map(|m| C64::new(0.0, g * (m + 1) as f64 * ((sector - m) as f64).sqrt()))
        .collect();
    TridiagonalHermitian::new(vec![0.0; sector + 1], sub)
}

/// Smallest chain cutoff `M >= 1` with `tanh^{2(M + 1)}(tau_max) < tolerance`.
///
/// The squeezed-vacuum photon distribution is geometric with ratio `tanh^2`, so
/// this bounds the probability mass above the cutoff.
pub fn bilinear_cutoff(tau_max: f64, tolerance: f64) -> Result<usize> {
    if !(tau_max >= 0.0) || !tau_max.is_finite() {
        return Err(invalid(
            "tau_max",
            tau_max,
            "must be non-negative and finite",
        ));
    }
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(invalid("tolerance", tolerance, "must lie in (0, 1)"));
    }
    let ratio = tau_max.tanh().powi(2);
    if ratio == 0.0 {
        return Ok(1);
    }
    if ratio >= 1.0 {
        return Err(invalid(
            "tau_max",
            tau_max,
            "too large to resolve the squeezing tail",
        ));
    }
    // (M + 1) ln(ratio) < ln(tolerance)
    let needed = (tolerance.ln() / ratio.ln()).floor() as usize;
    let mut m = needed.max(1);
    while ratio.powi(m as i32 + 1) >= tolerance {
        m += 1;
    }
    while m > 1 && ratio.powi(m as i32) < tolerance {
        m -= 1;
    }
    Ok(m)
}

/// Squeezed-vacuum probability above the chain cutoff: `tanh^{2(M + 1)}(tau)`.
pub fn bilinear_tail_mass(tau: f64, cutoff: usize) -> f64 {
    tau.tanh().powi(2).powi(cutoff as i32 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::tridiag::symmetric_tridiagonal_eigen;

    #[test]
    fn zero_pump_is_zero_matrix() {
        assert!(build_bilinear_generator(0.0, 5).unwrap().is_zero());
        assert!(build_bilinear_generator(1.0, 0).is_err());
        assert!(build_bilinear_generator(-1.0, 3).is_err());
    }

    #[test]
    fn bilinear_elements() {
        let h = build_bilinear_generator(0.5, 4).unwrap();
        assert_eq!(h.dim(), 5);
        for m in 0..4 {
            assert_eq!(h.get(m + 1, m), C64::new(0.0, 0.5 * (m + 1) as f64));
            assert_eq!(h.get(m, m + 1), C64::new(0.0, -0.5 * (m + 1) as f64));
        }
    }

    #[test]
    fn trilinear_sector_elements() {
        let h0 = build_trilinear_sector_generator(0.3, 0).unwrap();
        assert_eq!(h0.dim(), 1);
        assert!(h0.is_zero());

        let h1 = build_trilinear_sector_generator(0.3, 1).unwrap();
        assert_eq!(h1.get(1, 0), C64::new(0.0, 0.3));

        let h = build_trilinear_sector_generator(1.0, 100).unwrap();
        assert_eq!(h.dim(), 101);
        assert!((h.get(1, 0).im - 10.0).abs() < 1e-15);
        // element (m+1, m) = g sqrt((m+1)^2 (N-m))
        for m in 0..100usize {
            let expect = (((m + 1) * (m + 1) * (100 - m)) as f64).sqrt();
            assert!((h.get(m + 1, m).im - expect).abs() < 1e-12 * expect);
        }
    }

    #[test]
    fn two_level_truncation_spectrum() {
        // cutoff = 1: off-diagonal G, eigenvalues +-G
        let h = build_bilinear_generator(0.7, 1).unwrap();
        let e = symmetric_tridiagonal_eigen(&h.diag, &h.real_offdiagonal()).unwrap();
        assert!((e.values[0] + 0.7).abs() < 1e-15);
        assert!((e.values[1] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn cutoff_rule_is_tight() {
        for &tau in &[0.25, 0.5, 1.0, 1.5] {
            let m = bilinear_cutoff(tau, 1e-8).unwrap();
            assert!(bilinear_tail_mass(tau, m) < 1e-8);
            if m > 1 {
                assert!(bilinear_tail_mass(tau, m - 1) >= 1e-8);
            }
        }
        assert_eq!(bilinear_cutoff(0.0, 1e-8).unwrap(), 1);
        assert!(bilinear_cutoff(1.0, 0.0).is_err());
        assert!(bilinear_cutoff(-1.0, 1e-3).is_err());
    }
}
