//! Named figure presets with documented default grids and shape checks.

use std::fmt;
use std::str::FromStr;

use super::spec::{parse_grid, Engine, Quantity, SweepSpec};
use super::sweep::{run_sweep, RunRecord};
use crate::error::{Error, Result};
use crate::fock::{EngineConfig, PumpKind};

/// The reproducible figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureName {
    /// Dispersion `omega_k / omega_c` over `k/k0`.
    Fig1,
    /// `<n_r>` against `tau` at `k = 1.12 k0`.
    Fig2,
    /// `<n_a>` against `k/k0` at several times.
    Fig3,
    /// Quadrature variance against `tau` at `k = 1.12 k0`.
    Fig5,
    /// Quadrature variance against `k/k0` at several times.
    Fig6,
    /// `E_c` against `k/k0` at several times.
    Fig7,
}

/// Times for the `k`-resolved figures.
const SNAPSHOT_TIMES: &str = "0.5,1,1.5,2";
/// Wavenumber used by the time-resolved figures.
const FIXED_K_RATIO: &str = "1.12";
const EDGE_GRID: &str = "0.75:1.25:0.005";
const TIME_GRID: &str = "0:3:0.05";
const DISPERSION_TIME: &str = "0";

impl FigureName {
    pub const ALL: [FigureName; 6] = [
        FigureName::Fig1,
        FigureName::Fig2,
        FigureName::Fig3,
        FigureName::Fig5,
        FigureName::Fig6,
        FigureName::Fig7,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FigureName::Fig1 => "fig1",
            FigureName::Fig2 => "fig2",
            FigureName::Fig3 => "fig3",
            FigureName::Fig5 => "fig5",
            FigureName::Fig6 => "fig6",
            FigureName::Fig7 => "fig7",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            FigureName::Fig1 => "dispersion relation near the band edge",
            FigureName::Fig2 => "mean photon number against time",
            FigureName::Fig3 => "lower-level occupation against wavenumber",
            FigureName::Fig5 => "EPR quadrature variance against time",
            FigureName::Fig6 => "EPR quadrature variance against wavenumber",
            FigureName::Fig7 => "Hillery-Zubairy ratio against wavenumber",
        }
    }

    fn quantity(&self) -> Quantity {
        match self {
            FigureName::Fig1 => Quantity::Dispersion,
            FigureName::Fig2 => Quantity::NR,
            FigureName::Fig3 => Quantity::NA,
            FigureName::Fig5 | FigureName::Fig6 => Quantity::Duan,
            FigureName::Fig7 => Quantity::Ec,
        }
    }

    fn k_resolved(&self) -> bool {
        matches!(
            self,
            FigureName::Fig1 | FigureName::Fig3 | FigureName::Fig6 | FigureName::Fig7
        )
    }
}

impl fmt::Display for FigureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| {
                Error::InvalidSpec(format!(
                    "unknown figure `{s}`; expected one of fig1, fig2, fig3, fig5, fig6, fig7"
                ))
            })
    }
}

/// Replacements for a figure's default settings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FigureOverrides {
    pub tau_grid: Option<Vec<f64>>,
    pub k_ratio_grid: Option<Vec<f64>>,
    pub engine: Option<Engine>,
    pub pump: Option<PumpKind>,
    pub engine_config: Option<EngineConfig>,
}

/// Default sweep for a figure.
pub fn figure_spec(name: FigureName) -> SweepSpec {
    let (tau, k) = default_grids(name);
    SweepSpec {
        tau_grid: parse_grid(tau).expect("static grid"),
        k_ratio_grid: parse_grid(k).expect("static grid"),
        engine: Engine::Analytic,
        outputs: vec![name.quantity()],
        ..SweepSpec::default()
    }
}

/// Default `(tau, k/k0)` grids in the textual grid syntax.
fn default_grids(name: FigureName) -> (&'static str, &'static str) {
    match name {
        FigureName::Fig1 => (DISPERSION_TIME, EDGE_GRID),
        FigureName::Fig2 | FigureName::Fig5 => (TIME_GRID, FIXED_K_RATIO),
        FigureName::Fig3 | FigureName::Fig6 | FigureName::Fig7 => (SNAPSHOT_TIMES, EDGE_GRID),
    }
}

/// Runs a figure preset, applying `overrides`, and records the settings in the metadata.
pub fn run_figure(name: FigureName, overrides: &FigureOverrides) -> Result<RunRecord> {
    let mut spec = figure_spec(name);
    let defaults = spec.clone();
    if let Some(g) = &overrides.tau_grid {
        spec.tau_grid = g.clone();
    }
    if let Some(g) = &overrides.k_ratio_grid {
        spec.k_ratio_grid = g.clone();
    }
    if let Some(e) = overrides.engine {
        spec.engine = e;
    }
    if let Some(p) = overrides.pump {
        spec.pump = p;
    }
    if let Some(c) = &overrides.engine_config {
        spec.engine_config = *c;
    }
    let mut record = run_sweep(&spec)?;
    let notes = &mut record.metadata.notes;
    notes.insert("figure".into(), name.name().into());
    notes.insert("description".into(), name.description().into());
    let (tau, k) = default_grids(name);
    notes.insert("default_tau_grid".into(), tau.into());
    notes.insert("default_k_ratio_grid".into(), k.into());
    notes.insert(
        "time_axis".into(),
        "tau = G(omega_c) t; each row uses tau * G(omega_k)/G(omega_c)".into(),
    );
    if spec != defaults {
        notes.insert("overridden".into(), "true".into());
    }
    Ok(record)
}

/// Checks the qualitative shape of a figure's data.
///
/// Time-resolved curves must be monotone in `tau`; wavenumber-resolved curves
/// must peak (`n_a`, `E_c`) or dip (dispersion, variance) at the grid point
/// nearest `k/k0 = 1` for every time.
pub fn shape_check(name: FigureName, record: &RunRecord) -> std::result::Result<(), String> {
    let q = name.quantity();
    let n_tau = record.spec.tau_grid.len();
    let n_k = record.spec.k_ratio_grid.len();
    let column = |i_tau: usize| -> std::result::Result<Vec<f64>, String> {
        (0..n_k)
            .map(|i_k| {
                record.value(i_tau, i_k, q).ok_or_else(|| {
                    format!("{name}: missing {} at row ({i_tau}, {i_k})", q.column())
                })
            })
            .collect()
    };
    let increasing = matches!(q, Quantity::NR | Quantity::NA | Quantity::Ec);

    if name.k_resolved() {
        let edge = nearest(&record.spec.k_ratio_grid, 1.0);
        let peaked = matches!(q, Quantity::NA | Quantity::Ec);
        for i_tau in 0..n_tau {
            if name != FigureName::Fig1 && record.spec.tau_grid[i_tau] == 0.0 {
                continue;
            }
            let v = column(i_tau)?;
            let at = if peaked { argmax(&v) } else { argmin(&v) };
            if at != edge {
                return Err(format!(
                    "{name}: extremum at k/k0 = {} instead of {} for tau = {}",
                    record.spec.k_ratio_grid[at],
                    record.spec.k_ratio_grid[edge],
                    record.spec.tau_grid[i_tau]
                ));
            }
        }
    }
    if name != FigureName::Fig1 {
        for i_k in 0..n_k {
            let series: Vec<f64> = (0..n_tau)
                .filter_map(|i_tau| record.value(i_tau, i_k, q))
                .collect();
            let monotone =
                series
                    .windows(2)
                    .all(|w| if increasing { w[1] > w[0] } else { w[1] < w[0] });
            let ok = monotone && (q != Quantity::Ec || series.iter().all(|&e| e < 1.0));
            if !ok {
                return Err(format!(
                    "{name}: {} is not monotone in tau at k/k0 = {}",
                    q.column(),
                    record.spec.k_ratio_grid[i_k]
                ));
            }
        }
    }
    Ok(())
}

fn nearest(grid: &[f64], x: f64) -> usize {
    argmin(&grid.iter().map(|g| (g - x).abs()).collect::<Vec<_>>())
}

fn argmin(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .fold(
            (0, f64::INFINITY),
            |best, (i, &x)| if x < best.1 { (i, x) } else { best },
        )
        .0
}

fn argmax(v: &[f64]) -> usize {
    v.iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &x)| {
            if x > best.1 {
                (i, x)
            } else {
                best
            }
        })
        .0
}
