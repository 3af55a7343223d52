//! End-to-end engine runs: parametric chain, trilinear model, and the scan
//! measuring how well the c-number pump replacement holds.

use super::config::EngineConfig;
use super::generator::{bilinear_cutoff, bilinear_tail_mass, build_bilinear_generator};
use super::observe::moments_from_state;
use super::propagate::{evolve, evolve_sector, Propagator, SectorPropagators, StepReport};
use super::state::{prepare_pump, MultiSectorState, PumpKind, SectorState};
use crate::error::{invalid, Result};
use crate::moments::MomentSet;

/// Result of propagating the parametric chain to one time.
#[derive(Debug, Clone)]
pub struct BilinearRun {
    pub tau: f64,
    pub cutoff: usize,
    pub state: SectorState,
    pub moments: MomentSet,
    pub report: StepReport,
}

/// Evolves `|0, 0>` under `iG(a^dag b^dag - a b)` with `G = 1` to time `tau`.
///
/// The chain cutoff comes from `config.cutoff` or the geometric tail rule; the
/// squeezed-vacuum tail above the cutoff is reported as leakage.
pub fn run_bilinear(tau: f64, config: &EngineConfig) -> Result<BilinearRun> {
    config.validate()?;
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(invalid("tau", tau, "must be non-negative and finite"));
    }
    let cutoff = match config.cutoff {
        Some(c) => c,
        None => bilinear_cutoff(tau, config.tolerance)?,
    };
    let generator = build_bilinear_generator(1.0, cutoff)?;
    let propagator = Propagator::new(&generator, config.integrator, config.max_step)?;
    let mut state = SectorState::chain_vacuum(cutoff)?;
    let drift = evolve_sector(&mut state, &propagator, tau)?;
    let tail = bilinear_tail_mass(tau, cutoff);
    let mut moments = moments_from_state(&state.clone().into());
    moments.leakage = tail;
    let report = StepReport {
        max_norm_drift: drift,
        boundary_population: state.amplitudes.last().map_or(0.0, |a| a.norm_sqr()),
        leakage: tail,
    };
    Ok(BilinearRun {
        tau,
        cutoff,
        state,
        moments,
        report,
    })
}

/// One time point of a trilinear run.
#[derive(Debug, Clone)]
pub struct TrilinearPoint {
    /// Physical time `t` in units of `1/g`'s reciprocal.
    pub time: f64,
    /// `g * gamma * t`, the matching parametric time.
    pub tau: f64,
    pub moments: MomentSet,
    pub report: StepReport,
}

/// Trilinear evolution of `|0, 0> (x) |pump>` with coupling `g` over increasing times.
#[derive(Debug, Clone)]
pub struct TrilinearRun {
    pub pump: PumpKind,
    pub g: f64,
    pub points: Vec<TrilinearPoint>,
    pub final_state: MultiSectorState,
}

/// Propagates through `times` (non-decreasing, starting at or after 0), reusing
/// each sector's eigendecomposition for every step.
pub fn run_trilinear(
    pump: PumpKind,
    g: f64,
    times: &[f64],
    config: &EngineConfig,
) -> Result<TrilinearRun> {
    config.validate()?;
    if !(g >= 0.0) || !g.is_finite() {
        return Err(invalid("g", g, "must be non-negative and finite"));
    }
    let mut state = prepare_pump(pump, config.n_max, config.tolerance)?;
    let props = SectorPropagators::trilinear(g, &state, config.integrator, config.max_step)?;
    let amplitude = pump.amplitude();
    let mut points = Vec::with_capacity(times.len());
    let mut now = 0.0;
    for &t in times {
        if !(t >= now) || !t.is_finite() {
            return Err(invalid(
                "time",
                t,
                "times must be finite, non-negative and non-decreasing",
            ));
        }
        let report = evolve(&mut state, &props, t - now)?;
        now = t;
        points.push(TrilinearPoint {
            time: t,
            tau: g * amplitude * t,
            moments: moments_from_state(&state),
            report,
        });
    }
    Ok(TrilinearRun {
        pump,
        g,
        points,
        final_state: state,
    })
}

/// Moments of the trilinear model at parametric time `tau`, with `g = 1 / amplitude`
/// so that `g * gamma = 1`.
pub fn run_trilinear_at(pump: PumpKind, tau: f64, config: &EngineConfig) -> Result<TrilinearPoint> {
    let amplitude = pump.amplitude();
    if !(amplitude > 0.0) || matches!(pump, PumpKind::Parametric) {
        return Err(invalid(
            "pump amplitude",
            amplitude,
            "trilinear runs need a populated pump",
        ));
    }
    let run = run_trilinear(pump, 1.0 / amplitude, &[tau], config)?;
    Ok(run.points.into_iter().next().expect("one time requested"))
}

/// Row of [`parametric_validity_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityRow {
    /// `g * gamma * t`
    pub tau: f64,
    pub n_r_trilinear: f64,
    /// `sinh^2(tau)`
    pub n_r_parametric: f64,
    /// `|n_trilinear - n_parametric| / n_parametric`, 0 at `tau = 0`.
    pub relative_deviation: f64,
    /// `<n_r> / gamma^2`: fraction of the pump converted.
    pub depletion_fraction: f64,
    /// `sinh^2(tau) / gamma^2`: the depletion the parametric solution predicts.
    pub predicted_depletion: f64,
    pub leakage: f64,
}

/// Compares trilinear `<n_r>` with a coherent pump against `sinh^2(g gamma t)`.
pub fn parametric_validity_scan(
    gamma: f64,
    g: f64,
    tau_grid: &[f64],
    config: &EngineConfig,
) -> Result<Vec<ValidityRow>> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(invalid("gamma", gamma, "must be positive and finite"));
    }
    if !(g > 0.0) || !g.is_finite() {
        return Err(invalid("g", g, "must be positive and finite"));
    }
    let times: Vec<f64> = tau_grid.iter().map(|tau| tau / (g * gamma)).collect();
    let run = run_trilinear(PumpKind::Coherent { gamma }, g, &times, config)?;
    Ok(run
        .points
        .iter()
        .map(|p| {
            let parametric = p.tau.sinh().powi(2);
            let n = p.moments.n_r;
            let relative_deviation = if parametric == 0.0 {
                if n == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                (n - parametric).abs() / parametric
            };
            ValidityRow {
                tau: p.tau,
                n_r_trilinear: n,
                n_r_parametric: parametric,
                relative_deviation,
                depletion_fraction: n / (gamma * gamma),
                predicted_depletion: parametric / (gamma * gamma),
                leakage: p.report.leakage,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::config::Integrator;
    use crate::fock::observe::conserved_charges;

    #[test]
    fn bilinear_run_at_tau_one() {
        let cfg = EngineConfig {
            tolerance: 1e-8,
            ..Default::default()
        };
        let r = run_bilinear(1.0, &cfg).unwrap();
        assert!(r.moments.leakage < 1e-8);
        assert!((r.moments.n_r - 1.0f64.sinh().powi(2)).abs() < 1e-6);
        assert!((r.moments.ab.re - 1.813_430_203_923_509).abs() < 1e-6);
        assert!(r.report.max_norm_drift < 1e-12);
    }

    #[test]
    fn explicit_cutoff_is_respected() {
        let cfg = EngineConfig {
            cutoff: Some(7),
            ..Default::default()
        };
        let r = run_bilinear(0.5, &cfg).unwrap();
        assert_eq!(r.cutoff, 7);
        assert_eq!(r.state.amplitudes.len(), 8);
        assert!(r.moments.leakage > 0.0);
    }

    #[test]
    fn fixed_step_integrator_tracks_exact_result() {
        let exact = run_bilinear(0.5, &EngineConfig::default()).unwrap();
        let cn = run_bilinear(
            0.5,
            &EngineConfig {
                integrator: Integrator::FixedStepUnitary,
                max_step: 2e-4,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((exact.moments.n_r - cn.moments.n_r).abs() < 1e-7);
    }

    #[test]
    fn validity_scan_zero_time_row() {
        let rows = parametric_validity_scan(3.0, 1.0 / 3.0, &[0.0, 0.25], &EngineConfig::default())
            .unwrap();
        assert_eq!(rows[0].relative_deviation, 0.0);
        assert_eq!(rows[0].n_r_trilinear, 0.0);
        assert!(rows[1].relative_deviation > 0.0);
        assert!(rows[1].depletion_fraction > 0.0);
    }

    #[test]
    fn deviation_shrinks_with_pump_amplitude() {
        let cfg = EngineConfig::default();
        let dev: Vec<f64> = [3.0, 5.0, 10.0]
            .iter()
            .map(|&gamma| {
                parametric_validity_scan(gamma, 1.0 / gamma, &[0.5], &cfg).unwrap()[0]
                    .relative_deviation
            })
            .collect();
        assert!(dev[0] > dev[1] && dev[1] > dev[2], "{dev:?}");
    }

    #[test]
    fn trilinear_run_conserves_excitations() {
        let cfg = EngineConfig::default();
        let run = run_trilinear(PumpKind::Fock { n: 20 }, 0.1, &[0.5, 1.0, 2.0], &cfg).unwrap();
        let (imbalance, total) = conserved_charges(&run.final_state);
        assert!(imbalance.abs() < 1e-12);
        assert!((total - 20.0).abs() < 1e-12);
        assert!(run.points.iter().all(|p| p.moments.ab.norm() == 0.0));
        assert!(run_trilinear(PumpKind::Fock { n: 2 }, 0.1, &[1.0, 0.5], &cfg).is_err());
    }
}
