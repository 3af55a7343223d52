use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// How a sector's unitary is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Integrator {
    /// Exact propagation through a cached eigendecomposition.
    #[default]
    Eigendecomposition,
    /// Repeated Cayley (Crank-Nicolson) steps, unitary but second-order accurate in time.
    FixedStepUnitary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EngineConfig {
    /// Chain cutoff for the parametric engine; chosen from `tolerance` when absent.
    pub cutoff: Option<usize>,
    /// Largest pump sector kept for a coherent pump; chosen from `tolerance` when absent.
    pub n_max: Option<usize>,
    pub integrator: Integrator,
    /// Largest step of the fixed-step integrator.
    pub max_step: f64,
    /// Leakage bound.
    pub tolerance: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            cutoff: None,
            n_max: None,
            integrator: Integrator::Eigendecomposition,
            max_step: 1e-3,
            tolerance: 1e-10,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(c) = self.cutoff {
            if c < 1 {
                return Err(invalid("cutoff", c as f64, "must be at least 1"));
            }
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(invalid("tolerance", self.tolerance, "must lie in (0, 1)"));
        }
        if !(self.max_step > 0.0) || !self.max_step.is_finite() {
            return Err(invalid(
                "max_step",
                self.max_step,
                "must be positive and finite",
            ));
        }
        Ok(())
    }
}
