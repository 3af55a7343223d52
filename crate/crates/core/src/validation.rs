//! Reference checks run by `pbgsim check` and the acceptance tests.
//!
//! Each check asserts one physical property at a fixed tolerance and must
//! finish inside its time budget; a slow check counts as a failure.

use std::fmt;
use std::time::{Duration, Instant};

use crate::analytic::analytic_moments;
use crate::band::normalized_pump_ratio;
use crate::error::Result;
use crate::fock::{
    conserved_charges, evolve, parametric_validity_scan, prepare_pump, run_bilinear, run_trilinear,
    EngineConfig, PumpKind, SectorPropagators,
};
use crate::harness::range_grid;
use crate::qfunction::{integrate, QuadratureGrid};
use crate::witnesses::{duan_variance, ec_ratio, mandel_q};

/// Outcome of one check.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub time_limit: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}. {} ({:.3} s / {} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.time_limit.as_secs(),
            self.detail
        )
    }
}

struct Verdict {
    passed: bool,
    detail: String,
}

fn timed(
    id: u8,
    title: &'static str,
    limit_secs: u64,
    f: impl FnOnce() -> Result<Verdict>,
) -> CriterionOutcome {
    let start = Instant::now();
    let verdict = f().unwrap_or_else(|e| Verdict {
        passed: false,
        detail: format!("error: {e}"),
    });
    let elapsed = start.elapsed();
    let time_limit = Duration::from_secs(limit_secs);
    let mut detail = verdict.detail;
    if elapsed > time_limit {
        detail.push_str("; time budget exceeded");
    }
    CriterionOutcome {
        id,
        title,
        passed: verdict.passed && elapsed <= time_limit,
        detail,
        elapsed,
        time_limit,
    }
}

fn rel(x: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        x.abs()
    } else {
        ((x - exact) / exact).abs()
    }
}

/// `tau` in `[0, 3]` with step 0.01.
fn unit_grid() -> Vec<f64> {
    range_grid(0.0, 3.0, 0.01).expect("static grid")
}

/// Numerical chain evolution against the squeezed-vacuum closed forms.
pub fn bilinear_oracle() -> CriterionOutcome {
    timed(1, "bilinear chain matches closed forms", 5, || {
        let cfg = EngineConfig {
            tolerance: 1e-8,
            ..EngineConfig::default()
        };
        let mut worst: f64 = 0.0;
        let mut cutoffs = Vec::new();
        for tau in [0.25, 0.5, 1.0, 1.5] {
            let run = run_bilinear(tau, &cfg)?;
            let m = &run.moments;
            let s = f64::sinh(tau);
            let n = s * s;
            cutoffs.push(run.cutoff);
            for e in [
                rel(m.n_r, n),
                rel(m.n_a, n),
                rel(m.ab.re, s * tau.cosh()),
                rel(m.n_r_sq, 2.0 * n * n + n),
            ] {
                worst = worst.max(e);
            }
            worst = worst.max(m.ab.im.abs() / (s * tau.cosh()));
        }
        Ok(Verdict {
            passed: worst <= 1e-6,
            detail: format!("max relative error {worst:.2e} (cutoffs {cutoffs:?})"),
        })
    })
}

/// Quadrature variance equals `e^{-2 tau}` and stays below 1.
pub fn variance_identity() -> CriterionOutcome {
    timed(2, "variance equals exp(-2 tau)", 1, || {
        let mut worst: f64 = 0.0;
        let mut below = true;
        for tau in unit_grid() {
            let v = duan_variance(&analytic_moments(tau)?);
            worst = worst.max((v - (-2.0 * tau).exp()).abs());
            below &= tau == 0.0 || v < 1.0;
        }
        Ok(Verdict {
            passed: worst <= 1e-12 && below,
            detail: format!("max |dV2 - exp(-2 tau)| {worst:.2e}, below 1 for tau > 0: {below}"),
        })
    })
}

/// Mandel factor equals `<n_r>` and is positive.
pub fn mandel_identity() -> CriterionOutcome {
    timed(3, "Mandel factor equals mean photon number", 1, || {
        let mut worst: f64 = 0.0;
        let mut positive = true;
        for tau in unit_grid().into_iter().filter(|&t| t > 0.0) {
            let m = analytic_moments(tau)?;
            let q = mandel_q(&m).map_err(|e| crate::Error::InvalidSpec(e.to_string()))?;
            worst = worst.max((q - m.n_r).abs());
            positive &= q > 0.0;
        }
        Ok(Verdict {
            passed: worst <= 1e-12 && positive,
            detail: format!("max |M - n_r| {worst:.2e}, positive: {positive}"),
        })
    })
}

/// Physical time for the wavenumber scan.
const EDGE_SCAN_TAU: f64 = 1.0;

/// Occupation peaks and variance and `E_c` dip at the band edge.
pub fn edge_extremum() -> CriterionOutcome {
    timed(4, "extrema at the band edge", 1, || {
        let ks = range_grid(0.75, 1.25, 0.005)?;
        let mut n_a = Vec::with_capacity(ks.len());
        let mut dv = Vec::with_capacity(ks.len());
        let mut ec = Vec::with_capacity(ks.len());
        for &k in &ks {
            let m = analytic_moments(EDGE_SCAN_TAU * normalized_pump_ratio(k)?)?;
            n_a.push(m.n_a);
            dv.push(duan_variance(&m));
            ec.push(ec_ratio(&m).map_err(|e| crate::Error::InvalidSpec(e.to_string()))?);
        }
        let arg = |v: &[f64], better: fn(f64, f64) -> bool| {
            let mut best = 0;
            for i in 1..v.len() {
                if better(v[i], v[best]) {
                    best = i;
                }
            }
            ks[best]
        };
        let k_na = arg(&n_a, |a, b| a > b);
        let k_dv = arg(&dv, |a, b| a < b);
        let k_ec = arg(&ec, |a, b| a < b);
        let at_edge = |k: f64| (k - 1.0).abs() < 1e-12;
        Ok(Verdict {
            passed: at_edge(k_na) && at_edge(k_dv) && at_edge(k_ec),
            detail: format!(
                "tau = {EDGE_SCAN_TAU}: argmax n_a at {k_na}, argmin dV2 at {k_dv}, argmin E_c at {k_ec} \
                 (E_c at the edge {:.6}, at k/k0 = 0.75 {:.6})",
                ec[ks.len() / 2],
                ec[0]
            ),
        })
    })
}

/// Excitation imbalance and total are conserved; each step preserves norm.
pub fn trilinear_conservation() -> CriterionOutcome {
    timed(5, "trilinear conservation laws", 10, || {
        let cfg = EngineConfig::default();
        let mut worst_charge: f64 = 0.0;
        let mut worst_drift: f64 = 0.0;
        for n in [1usize, 5, 20, 100] {
            let g = 1.0 / (n as f64).sqrt();
            let mut state = prepare_pump(PumpKind::Fock { n }, None, cfg.tolerance)?;
            let props = SectorPropagators::trilinear(g, &state, cfg.integrator, cfg.max_step)?;
            for _ in 0..40 {
                let report = evolve(&mut state, &props, 0.05)?;
                worst_drift = worst_drift.max(report.max_norm_drift);
                let (imbalance, total) = conserved_charges(&state);
                worst_charge = worst_charge
                    .max(imbalance.abs())
                    .max((total - n as f64).abs());
            }
        }
        Ok(Verdict {
            passed: worst_charge <= 1e-12 && worst_drift <= 1e-12,
            detail: format!(
                "max charge error {worst_charge:.2e}, max per-step norm drift {worst_drift:.2e}"
            ),
        })
    })
}

/// Deviation from the parametric solution shrinks as the pump grows.
pub fn parametric_convergence() -> CriterionOutcome {
    timed(
        6,
        "parametric limit approached with pump amplitude",
        60,
        || {
            let cfg = EngineConfig::default();
            let mut devs = Vec::new();
            for gamma in [3.0, 5.0, 10.0] {
                let row = parametric_validity_scan(gamma, 1.0 / gamma, &[0.5], &cfg)?[0];
                devs.push((gamma, row.relative_deviation));
            }
            let decreasing = devs.windows(2).all(|w| w[1].1 < w[0].1);
            let listed = devs
                .iter()
                .map(|(g, d)| format!("gamma {g}: {d:.3e}"))
                .collect::<Vec<_>>()
                .join(", ");
            Ok(Verdict {
                passed: decreasing,
                detail: format!("relative deviation at t = 0.5: {listed}"),
            })
        },
    )
}

/// Q-function quadrature normalization and antinormal moment.
pub fn q_function_quadrature() -> CriterionOutcome {
    timed(7, "Q-function quadrature", 60, || {
        let grid = QuadratureGrid::default();
        let mut worst_norm: f64 = 0.0;
        let mut worst_moment: f64 = 0.0;
        for tau in [0.25, 0.5, 1.0] {
            let q = integrate(tau, &grid)?;
            worst_norm = worst_norm.max((q.normalization - 1.0).abs());
            worst_moment = worst_moment.max((q.antinormal_aa_dag - tau.cosh().powi(2)).abs());
        }
        Ok(Verdict {
            passed: worst_norm <= 1e-3 && worst_moment <= 1e-3,
            detail: format!(
                "{} sigma, {} points per axis: max |norm - 1| {worst_norm:.2e}, max |<aa+> - cosh^2| {worst_moment:.2e}",
                grid.n_sigma, grid.points_per_axis
            ),
        })
    })
}

/// Number-state pump has no pair coherence; coherent pump at equal mean does.
pub fn fock_coherent_contrast() -> CriterionOutcome {
    timed(8, "Fock versus coherent pump", 30, || {
        let cfg = EngineConfig::default();
        let taus = [0.1, 0.25, 0.5, 1.0];
        let g = 0.1;
        let times: Vec<f64> = taus.iter().map(|t| t / (g * 10.0)).collect();
        let fock = run_trilinear(PumpKind::Fock { n: 100 }, g, &times, &cfg)?;
        let coherent = run_trilinear(PumpKind::Coherent { gamma: 10.0 }, g, &times, &cfg)?;
        let max_ab = fock
            .points
            .iter()
            .map(|p| p.moments.ab.norm())
            .fold(0.0, f64::max);
        let inapplicable = fock.points.iter().all(|p| ec_ratio(&p.moments).is_err());
        let ecs: Vec<f64> = coherent
            .points
            .iter()
            .map(|p| ec_ratio(&p.moments).unwrap_or(f64::INFINITY))
            .collect();
        let below = ecs.iter().all(|&e| e < 1.0);
        Ok(Verdict {
            passed: max_ab <= 1e-12 && inapplicable && below,
            detail: format!(
                "Fock max |<ab>| {max_ab:.1e}, E_c inapplicable: {inapplicable}; coherent E_c {:?}",
                ecs.iter().map(|e| format!("{e:.4}")).collect::<Vec<_>>()
            ),
        })
    })
}

/// `E_c = tanh(tau)` and stays below 1.
pub fn ec_closed_form() -> CriterionOutcome {
    timed(9, "E_c equals tanh(tau)", 1, || {
        let mut worst: f64 = 0.0;
        let mut below = true;
        for tau in unit_grid().into_iter().filter(|&t| t > 0.0) {
            let e = ec_ratio(&analytic_moments(tau)?)
                .map_err(|e| crate::Error::InvalidSpec(e.to_string()))?;
            worst = worst.max((e - tau.tanh()).abs());
            below &= e < 1.0;
        }
        Ok(Verdict {
            passed: worst <= 1e-12 && below,
            detail: format!("max |E_c - tanh| {worst:.2e}, below 1: {below}"),
        })
    })
}

/// Runs every check in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        bilinear_oracle(),
        variance_identity(),
        mandel_identity(),
        edge_extremum(),
        trilinear_conservation(),
        parametric_convergence(),
        q_function_quadrature(),
        fock_coherent_contrast(),
        ec_closed_form(),
    ]
}
