//! Grid sweeps over `(tau, k/k0)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spec::{Engine, Quantity, SweepSpec};
use crate::analytic::analytic_moments;
use crate::band::{is_near_edge, normalized_pump_ratio};
use crate::error::{Error, Result};
use crate::fock::{
    bilinear_cutoff, bilinear_tail_mass, build_bilinear_generator, evolve, evolve_sector,
    moments_from_state, prepare_pump, MultiSectorState, Propagator, SectorPropagators, SectorState,
};
use crate::moments::MomentSet;
use crate::witnesses::{duan_variance, ec_ratio, mandel_q};

/// A table value: a number or the literal `NA`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Value(f64),
    NA,
}

impl Cell {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Cell::Value(v) => Some(v),
            Cell::NA => None,
        }
    }
}

/// Per-row condition attached to the values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    /// Mandel factor is 0/0.
    MandelUndefined,
    /// `<ab> = 0`, so `E_c` is not defined.
    EcInapplicable,
    /// Truncation leakage above the configured tolerance.
    LeakageExceeded,
    /// The engine failed for this point; see the metadata.
    EngineError,
    /// `k/k0` outside `[0.75, 1.25]`.
    OutsideNearEdge,
}

impl Flag {
    pub fn token(&self) -> &'static str {
        match self {
            Flag::MandelUndefined => "mandel_undefined",
            Flag::EcInapplicable => "ec_inapplicable",
            Flag::LeakageExceeded => "leakage_exceeded",
            Flag::EngineError => "engine_error",
            Flag::OutsideNearEdge => "outside_near_edge",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Flag::MandelUndefined,
            Flag::EcInapplicable,
            Flag::LeakageExceeded,
            Flag::EngineError,
            Flag::OutsideNearEdge,
        ]
        .into_iter()
        .find(|f| f.token() == s)
        .ok_or_else(|| Error::Parse(format!("unknown flag `{s}`")))
    }
}

/// One grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub tau: f64,
    pub k_ratio: f64,
    /// Aligned with [`SweepSpec::columns`].
    pub values: Vec<Cell>,
    pub flags: Vec<Flag>,
}

impl Row {
    pub fn get(&self, columns: &[Quantity], q: Quantity) -> Option<Cell> {
        columns.iter().position(|&c| c == q).map(|i| self.values[i])
    }
}

/// Provenance and diagnostics written next to the table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub timestamp_unix: u64,
    pub rows: usize,
    pub max_leakage: f64,
    /// `"row <index>: <message>"` for every failed point.
    pub engine_errors: Vec<String>,
    /// Free-form key-value annotations (figure name, default grids, ...).
    pub notes: std::collections::BTreeMap<String, String>,
}

impl Metadata {
    pub fn new() -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            rows: 0,
            max_leakage: 0.0,
            engine_errors: Vec::new(),
            notes: Default::default(),
        }
    }
}

impl Default for Metadata {
    fn default() -> Self {
        Self::new()
    }
}

/// A finished sweep: one row per `(tau, k_ratio)`, `tau` outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub spec: SweepSpec,
    pub rows: Vec<Row>,
    pub metadata: Metadata,
}

impl RunRecord {
    pub fn columns(&self) -> Vec<Quantity> {
        self.spec.columns()
    }

    /// Row at grid indices `(tau index, k index)`.
    pub fn at(&self, i_tau: usize, i_k: usize) -> &Row {
        &self.rows[i_tau * self.spec.k_ratio_grid.len() + i_k]
    }

    /// Numeric value of `q` at grid indices, `None` for `NA` or an unrequested column.
    pub fn value(&self, i_tau: usize, i_k: usize, q: Quantity) -> Option<f64> {
        self.at(i_tau, i_k).get(&self.columns(), q)?.value()
    }
}

/// Moment source shared by all rows of one sweep, built once.
enum Prepared {
    Analytic,
    Bilinear {
        cutoff: usize,
        propagator: Propagator,
    },
    Trilinear {
        initial: MultiSectorState,
        propagators: SectorPropagators,
        g_gamma: f64,
    },
}

impl Prepared {
    fn new(spec: &SweepSpec, tau_eff_max: f64) -> Result<Self> {
        let cfg = &spec.engine_config;
        match spec.engine {
            Engine::Analytic => Ok(Prepared::Analytic),
            Engine::Bilinear => {
                let cutoff = match cfg.cutoff {
                    Some(c) => c,
                    None => bilinear_cutoff(tau_eff_max, cfg.tolerance)?,
                };
                let generator = build_bilinear_generator(1.0, cutoff)?;
                Ok(Prepared::Bilinear {
                    cutoff,
                    propagator: Propagator::new(&generator, cfg.integrator, cfg.max_step)?,
                })
            }
            Engine::Trilinear => {
                let amplitude = spec.pump.amplitude();
                if !(amplitude > 0.0) {
                    return Err(Error::InvalidSpec(
                        "trilinear pump must hold at least one quantum".into(),
                    ));
                }
                // g gamma = 1 so that tau is the parametric time
                let g = 1.0 / amplitude;
                let initial = prepare_pump(spec.pump, cfg.n_max, cfg.tolerance)?;
                let propagators =
                    SectorPropagators::trilinear(g, &initial, cfg.integrator, cfg.max_step)?;
                Ok(Prepared::Trilinear {
                    initial,
                    propagators,
                    g_gamma: g * amplitude,
                })
            }
        }
    }

    fn moments(&self, tau: f64) -> Result<MomentSet> {
        match self {
            Prepared::Analytic => analytic_moments(tau),
            Prepared::Bilinear { cutoff, propagator } => {
                let mut state = SectorState::chain_vacuum(*cutoff)?;
                evolve_sector(&mut state, propagator, tau)?;
                let mut m = moments_from_state(&state.into());
                m.leakage = bilinear_tail_mass(tau, *cutoff);
                Ok(m)
            }
            Prepared::Trilinear {
                initial,
                propagators,
                g_gamma,
            } => {
                let mut state = initial.clone();
                evolve(&mut state, propagators, tau / g_gamma)?;
                Ok(moments_from_state(&state))
            }
        }
    }
}

/// Evaluates every requested quantity on the `(tau, k_ratio)` grid.
///
/// Each point uses `tau_eff = tau * G(omega_k)/G(omega_c)`. Points are computed in
/// parallel and collected in grid order. A failing point yields `NA` values and
/// an `engine_error` flag instead of aborting the sweep.
pub fn run_sweep(spec: &SweepSpec) -> Result<RunRecord> {
    spec.validate()?;
    let columns = spec.columns();
    let needs_moments = columns.iter().any(Quantity::needs_moments);

    let ratios = spec
        .k_ratio_grid
        .iter()
        .map(|&k| normalized_pump_ratio(k))
        .collect::<Result<Vec<f64>>>()?;
    let tau_eff_max =
        spec.tau_grid.last().copied().unwrap_or(0.0) * ratios.iter().copied().fold(0.0, f64::max);

    let prepared = if needs_moments {
        Some(Prepared::new(spec, tau_eff_max)?)
    } else {
        None
    };

    let points: Vec<(f64, f64, f64)> = spec
        .tau_grid
        .iter()
        .flat_map(|&tau| {
            spec.k_ratio_grid
                .iter()
                .zip(&ratios)
                .map(move |(&k, &r)| (tau, k, r))
        })
        .collect();

    let evaluated: Vec<(Row, Option<String>, f64)> = points
        .par_iter()
        .map(|&(tau, k, ratio)| evaluate_point(spec, &columns, prepared.as_ref(), tau, k, ratio))
        .collect();

    let mut metadata = Metadata::new();
    let mut rows = Vec::with_capacity(evaluated.len());
    for (i, (row, err, leakage)) in evaluated.into_iter().enumerate() {
        if let Some(e) = err {
            metadata.engine_errors.push(format!("row {i}: {e}"));
        }
        metadata.max_leakage = metadata.max_leakage.max(leakage);
        rows.push(row);
    }
    metadata.rows = rows.len();
    Ok(RunRecord {
        spec: spec.clone(),
        rows,
        metadata,
    })
}

fn evaluate_point(
    spec: &SweepSpec,
    columns: &[Quantity],
    prepared: Option<&Prepared>,
    tau: f64,
    k: f64,
    ratio: f64,
) -> (Row, Option<String>, f64) {
    let mut flags = Vec::new();
    if !is_near_edge(k) {
        flags.push(Flag::OutsideNearEdge);
    }
    let mut error = None;
    let mut leakage = 0.0;
    let moments = prepared.and_then(|p| match p.moments(tau * ratio) {
        Ok(m) => Some(m),
        Err(e) => {
            flags.push(Flag::EngineError);
            error = Some(e.to_string());
            None
        }
    });
    if let Some(m) = &moments {
        leakage = m.leakage;
        if m.leakage > spec.engine_config.tolerance {
            flags.push(Flag::LeakageExceeded);
        }
    }

    let values = columns
        .iter()
        .map(|q| match q {
            Quantity::Dispersion => {
                let dk = k - 1.0;
                Cell::Value(1.0 + dk * dk)
            }
            _ => match &moments {
                None => Cell::NA,
                Some(m) => match q {
                    Quantity::NR => Cell::Value(m.n_r),
                    Quantity::NA => Cell::Value(m.n_a),
                    Quantity::Duan => Cell::Value(duan_variance(m)),
                    Quantity::Mandel => match mandel_q(m) {
                        Ok(v) => Cell::Value(v),
                        Err(_) => {
                            flags.push(Flag::MandelUndefined);
                            Cell::NA
                        }
                    },
                    Quantity::Ec => match ec_ratio(m) {
                        Ok(v) => Cell::Value(v),
                        Err(_) => {
                            flags.push(Flag::EcInapplicable);
                            Cell::NA
                        }
                    },
                    Quantity::Dispersion => unreachable!(),
                },
            },
        })
        .collect();
    flags.sort();
    flags.dedup();
    (
        Row {
            tau,
            k_ratio: k,
            values,
            flags,
        },
        error,
        leakage,
    )
}
