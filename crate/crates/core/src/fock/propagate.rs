//! Unitary propagation of sector states.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::config::Integrator;
use super::generator::build_trilinear_sector_generator;
use super::state::{MultiSectorState, Sector, SectorState};
use super::tridiag::{symmetric_tridiagonal_eigen, TridiagonalEigen, TridiagonalHermitian};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone)]
enum Scheme {
    Spectral(TridiagonalEigen),
    Cayley {
        diag: Vec<f64>,
        off: Vec<f64>,
        max_step: f64,
    },
}

/// Cached propagator `exp(-i H dt)` for one tridiagonal Hermitian generator.
///
/// Works in the gauge where the generator is real symmetric; the phases are
/// undone on output.
#[derive(Debug, Clone)]
pub struct Propagator {
    phases: Vec<C64>,
    scheme: Scheme,
}

impl Propagator {
    pub fn new(
        generator: &TridiagonalHermitian,
        integrator: Integrator,
        max_step: f64,
    ) -> Result<Self> {
        let phases = generator.gauge_phases();
        let off = generator.real_offdiagonal();
        let scheme = match integrator {
            Integrator::Eigendecomposition => {
                Scheme::Spectral(symmetric_tridiagonal_eigen(&generator.diag, &off)?)
            }
            Integrator::FixedStepUnitary => {
                if !(max_step > 0.0) || !max_step.is_finite() {
                    return Err(invalid("max_step", max_step, "must be positive and finite"));
                }
                Scheme::Cayley {
                    diag: generator.diag.clone(),
                    off,
                    max_step,
                }
            }
        };
        Ok(Self { phases, scheme })
    }

    /// Exact spectral propagator.
    pub fn spectral(generator: &TridiagonalHermitian) -> Result<Self> {
        Self::new(generator, Integrator::Eigendecomposition, 1.0)
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    /// Eigenvalues of the generator, if the spectral scheme is in use.
    pub fn spectrum(&self) -> Option<&[f64]> {
        match &self.scheme {
            Scheme::Spectral(e) => Some(&e.values),
            Scheme::Cayley { .. } => None,
        }
    }

    /// `psi <- exp(-i H dt) psi`.
    pub fn apply(&self, psi: &mut [C64], dt: f64) -> Result<()> {
        let n = self.dim();
        if psi.len() != n {
            return Err(Error::DimensionMismatch {
                generator: n,
                state: psi.len(),
            });
        }
        if dt == 0.0 {
            return Ok(());
        }
        let mut phi: Vec<C64> = psi
            .iter()
            .zip(&self.phases)
            .map(|(p, d)| d.conj() * p)
            .collect();
        match &self.scheme {
            Scheme::Spectral(eig) => {
                let mut coeffs = vec![C64::new(0.0, 0.0); n];
                for (j, c) in coeffs.iter_mut().enumerate() {
                    let mut acc = C64::new(0.0, 0.0);
                    for (m, p) in phi.iter().enumerate() {
                        acc += p * eig.vectors[m * n + j];
                    }
                    *c = acc * C64::from_polar(1.0, -eig.values[j] * dt);
                }
                for (m, p) in phi.iter_mut().enumerate() {
                    let row = &eig.vectors[m * n..(m + 1) * n];
                    *p = row.iter().zip(&coeffs).map(|(v, c)| c * v).sum();
                }
            }
            Scheme::Cayley {
                diag,
                off,
                max_step,
            } => {
                let steps = (dt.abs() / max_step).ceil().max(1.0) as usize;
                let h = dt / steps as f64;
                for _ in 0..steps {
                    cayley_step(diag, off, h, &mut phi);
                }
            }
        }
        for (p, (f, d)) in psi.iter_mut().zip(phi.iter().zip(&self.phases)) {
            *p = d * f;
        }
        Ok(())
    }
}

/// One Crank-Nicolson step `(1 + i h T / 2) x' = (1 - i h T / 2) x` for real
/// symmetric tridiagonal `T`, solved by forward elimination.
///
/// The Hermitian part of the left-hand matrix is the identity, so elimination
/// without pivoting is stable.
fn cayley_step(diag: &[f64], off: &[f64], h: f64, x: &mut [C64]) {
    let n = x.len();
    let k = C64::new(0.0, 0.5 * h);
    let mut rhs: Vec<C64> = (0..n)
        .map(|m| {
            let mut t = x[m] * diag[m];
            if m > 0 {
                t += x[m - 1] * off[m - 1];
            }
            if m + 1 < n {
                t += x[m + 1] * off[m];
            }
            x[m] - k * t
        })
        .collect();
    let mut main: Vec<C64> = diag.iter().map(|&d| 1.0 + k * d).collect();
    let upper: Vec<C64> = off.iter().map(|&o| k * o).collect();
    for m in 1..n {
        let w = upper[m - 1] / main[m - 1];
        main[m] -= w * upper[m - 1];
        let prev = rhs[m - 1];
        rhs[m] -= w * prev;
    }
    x[n - 1] = rhs[n - 1] / main[n - 1];
    for m in (0..n - 1).rev() {
        x[m] = (rhs[m] - upper[m] * x[m + 1]) / main[m];
    }
}

/// Diagnostics from one call to [`evolve`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepReport {
    /// Largest change of any sector's squared norm.
    pub max_norm_drift: f64,
    /// Largest population on the last basis state of a truncated chain.
    pub boundary_population: f64,
    /// Pump-distribution mass outside the retained sectors.
    pub leakage: f64,
}

impl StepReport {
    pub fn exceeds(&self, tolerance: f64) -> bool {
        self.leakage > tolerance || self.boundary_population > tolerance
    }
}

/// One propagator per sector of a [`MultiSectorState`].
#[derive(Debug, Clone)]
pub struct SectorPropagators {
    labels: Vec<Sector>,
    propagators: Vec<Propagator>,
}

impl SectorPropagators {
    pub fn new(
        generators: &[(Sector, TridiagonalHermitian)],
        integrator: Integrator,
        max_step: f64,
    ) -> Result<Self> {
        let propagators = generators
            .par_iter()
            .map(|(_, g)| Propagator::new(g, integrator, max_step))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            labels: generators.iter().map(|(s, _)| *s).collect(),
            propagators,
        })
    }

    /// Trilinear generators with coupling `g` for every sector of `state`.
    pub fn trilinear(
        g: f64,
        state: &MultiSectorState,
        integrator: Integrator,
        max_step: f64,
    ) -> Result<Self> {
        let generators = state
            .sectors
            .iter()
            .map(|s| match s.sector {
                Sector::Pump { excitations } => {
                    Ok((s.sector, build_trilinear_sector_generator(g, excitations)?))
                }
                Sector::Chain { .. } => Err(Error::InvalidSpec(
                    "trilinear generators need pump sectors".into(),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&generators, integrator, max_step)
    }

    pub fn len(&self) -> usize {
        self.propagators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.propagators.is_empty()
    }
}

/// Advances a single sector by `dt`, returning its norm drift.
pub fn evolve_sector(state: &mut SectorState, propagator: &Propagator, dt: f64) -> Result<f64> {
    let before = state.norm_sqr();
    propagator.apply(&mut state.amplitudes, dt)?;
    state.time += dt;
    Ok((state.norm_sqr() - before).abs())
}

/// Advances every sector by `dt`. Sectors are independent and run in parallel;
/// the diagnostics are reduced in sector order, so results do not depend on scheduling.
pub fn evolve(
    state: &mut MultiSectorState,
    propagators: &SectorPropagators,
    dt: f64,
) -> Result<StepReport> {
    if propagators.len() != state.sectors.len() {
        return Err(Error::DimensionMismatch {
            generator: propagators.len(),
            state: state.sectors.len(),
        });
    }
    for (s, label) in state.sectors.iter().zip(&propagators.labels) {
        if s.sector != *label {
            return Err(Error::DimensionMismatch {
                generator: label.dim(),
                state: s.sector.dim(),
            });
        }
    }
    let drifts = state
        .sectors
        .par_iter_mut()
        .zip(propagators.propagators.par_iter())
        .map(|(s, p)| evolve_sector(s, p, dt))
        .collect::<Result<Vec<f64>>>()?;

    let boundary = state
        .sectors
        .iter()
        .zip(&state.weights)
        .filter(|(s, _)| matches!(s.sector, Sector::Chain { .. }))
        .map(|(s, w)| w.norm_sqr() * s.amplitudes.last().map_or(0.0, |a| a.norm_sqr()))
        .fold(0.0, f64::max);

    Ok(StepReport {
        max_norm_drift: drifts.into_iter().fold(0.0, f64::max),
        boundary_population: boundary,
        leakage: state.leakage,
    })
}
