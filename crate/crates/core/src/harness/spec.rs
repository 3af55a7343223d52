//! Sweep specification and its textual forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{EngineConfig, PumpKind};

/// Source of the moments for each sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Analytic,
    Bilinear,
    Trilinear,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "analytic" => Ok(Engine::Analytic),
            "bilinear" => Ok(Engine::Bilinear),
            "trilinear" => Ok(Engine::Trilinear),
            other => Err(Error::InvalidSpec(format!("unknown engine `{other}`"))),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Analytic => "analytic",
            Engine::Bilinear => "bilinear",
            Engine::Trilinear => "trilinear",
        })
    }
}

/// Requested output column. Declaration order is the column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Dispersion,
    NR,
    NA,
    Mandel,
    Duan,
    Ec,
}

impl Quantity {
    pub const ALL: [Quantity; 6] = [
        Quantity::Dispersion,
        Quantity::NR,
        Quantity::NA,
        Quantity::Mandel,
        Quantity::Duan,
        Quantity::Ec,
    ];

    pub fn column(&self) -> &'static str {
        match self {
            Quantity::Dispersion => "omega_k",
            Quantity::NR => "n_r",
            Quantity::NA => "n_a",
            Quantity::Mandel => "mandel_q",
            Quantity::Duan => "duan_variance",
            Quantity::Ec => "ec_ratio",
        }
    }

    pub fn from_column(col: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|q| q.column() == col)
    }

    /// Whether the quantity needs a moment set.
    pub fn needs_moments(&self) -> bool {
        !matches!(self, Quantity::Dispersion)
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dispersion" | "omega_k" => Ok(Quantity::Dispersion),
            "n_r" | "nr" => Ok(Quantity::NR),
            "n_a" | "na" => Ok(Quantity::NA),
            "mandel" | "mandel_q" => Ok(Quantity::Mandel),
            "duan" | "duan_variance" => Ok(Quantity::Duan),
            "ec" | "ec_ratio" => Ok(Quantity::Ec),
            other => Err(Error::InvalidSpec(format!("unknown quantity `{other}`"))),
        }
    }
}

/// Parses `coherent:<gamma>`, `fock:<n>` or `parametric`.
pub fn parse_pump(s: &str) -> Result<PumpKind> {
    let s = s.trim();
    let bad = || {
        Error::InvalidSpec(format!(
            "bad pump `{s}`; expected coherent:<gamma> or fock:<n>"
        ))
    };
    match s.split_once(':') {
        Some(("coherent", v)) => Ok(PumpKind::Coherent {
            gamma: v.parse().map_err(|_| bad())?,
        }),
        Some(("fock", v)) => Ok(PumpKind::Fock {
            n: v.parse().map_err(|_| bad())?,
        }),
        None if s == "parametric" => Ok(PumpKind::Parametric),
        _ => Err(bad()),
    }
}

/// Parses a grid written either as `start:stop:step` or as a comma list.
///
/// Range points are `start + i * step`, so the endpoint is hit without drift.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| Error::InvalidSpec(format!("bad number `{t}` in grid `{s}`")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.len() {
        1 => s.split(',').map(num).collect(),
        3 => {
            let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
            range_grid(start, stop, step)
        }
        _ => Err(Error::InvalidSpec(format!("bad grid `{s}`"))),
    }
}

pub fn range_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(Error::InvalidSpec(format!(
            "bad range {start}:{stop}:{step}"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| start + i as f64 * step).collect())
}

/// Everything that determines a sweep's output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Dimensionless times `tau = G(omega_c) t`.
    pub tau_grid: Vec<f64>,
    pub k_ratio_grid: Vec<f64>,
    pub engine: Engine,
    /// Pump state for the trilinear engine.
    pub pump: PumpKind,
    #[serde(default)]
    pub engine_config: EngineConfig,
    pub outputs: Vec<Quantity>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            tau_grid: vec![0.0, 0.5, 1.0],
            k_ratio_grid: vec![1.0],
            engine: Engine::Analytic,
            pump: PumpKind::Coherent { gamma: 10.0 },
            engine_config: EngineConfig::default(),
            outputs: Quantity::ALL.to_vec(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        check_grid("tau_grid", &self.tau_grid, |t| t >= 0.0)?;
        check_grid("k_ratio_grid", &self.k_ratio_grid, |k| k > 0.0)?;
        if self.outputs.is_empty() {
            return Err(Error::InvalidSpec("no outputs requested".into()));
        }
        if self.engine == Engine::Trilinear && matches!(self.pump, PumpKind::Parametric) {
            return Err(Error::InvalidSpec(
                "the trilinear engine needs a fock or coherent pump".into(),
            ));
        }
        self.engine_config.validate()
    }

    /// Requested outputs deduplicated in column order.
    pub fn columns(&self) -> Vec<Quantity> {
        let mut q = self.outputs.clone();
        q.sort();
        q.dedup();
        q
    }
}

fn check_grid(name: &str, grid: &[f64], admissible: impl Fn(f64) -> bool) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidSpec(format!("{name} is empty")));
    }
    if let Some(bad) = grid.iter().find(|&&v| !v.is_finite() || !admissible(v)) {
        return Err(Error::InvalidSpec(format!(
            "{name} contains inadmissible value {bad}"
        )));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidSpec(format!(
            "{name} must be strictly increasing"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_grid_hits_the_edge_exactly() {
        let g = parse_grid("0.75:1.25:0.005").unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!(g[50], 1.0);
        assert!((g[100] - 1.25).abs() < 1e-12);
        assert_eq!(parse_grid("0, 0.5,1").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("a,b").is_err());
    }

    #[test]
    fn pump_parsing() {
        assert_eq!(
            parse_pump("coherent:10").unwrap(),
            PumpKind::Coherent { gamma: 10.0 }
        );
        assert_eq!(parse_pump("fock:100").unwrap(), PumpKind::Fock { n: 100 });
        assert!(parse_pump("thermal:2").is_err());
    }

    #[test]
    fn quantity_names_round_trip() {
        for q in Quantity::ALL {
            assert_eq!(Quantity::from_column(q.column()), Some(q));
            assert_eq!(q.column().parse::<Quantity>().unwrap(), q);
        }
        assert!("nope".parse::<Quantity>().is_err());
    }

    #[test]
    fn spec_validation() {
        let mut s = SweepSpec::default();
        s.validate().unwrap();
        s.tau_grid = vec![0.0, 0.0];
        assert!(s.validate().is_err());
        s.tau_grid = vec![];
        assert!(s.validate().is_err());
        s = SweepSpec::default();
        s.k_ratio_grid = vec![-1.0];
        assert!(s.validate().is_err());
        s = SweepSpec {
            engine: Engine::Trilinear,
            pump: PumpKind::Parametric,
            ..SweepSpec::default()
        };
        assert!(s.validate().is_err());
        s = SweepSpec {
            outputs: vec![],
            ..SweepSpec::default()
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn columns_are_sorted_and_unique() {
        let s = SweepSpec {
            outputs: vec![Quantity::Ec, Quantity::NR, Quantity::Ec],
            ..SweepSpec::default()
        };
        assert_eq!(s.columns(), vec![Quantity::NR, Quantity::Ec]);
    }
}
