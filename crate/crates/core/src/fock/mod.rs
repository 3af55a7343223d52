//! Exact evolution of the parametric and trilinear Hamiltonians in truncated
//! Fock space, decomposed into independent conserved blocks.

mod config;
mod generator;
mod ladder;
mod observe;
mod propagate;
mod runs;
mod state;
pub mod tridiag;

pub use config::{EngineConfig, Integrator};
pub use generator::{
    bilinear_cutoff, bilinear_tail_mass, build_bilinear_generator, build_trilinear_sector_generator,
};
pub use ladder::{Ladder, SparseKet};
pub use observe::{conserved_charges, moments_from_state, pair_correlation, pump_occupation};
pub use propagate::{evolve, evolve_sector, Propagator, SectorPropagators, StepReport};
pub use runs::{
    parametric_validity_scan, run_bilinear, run_trilinear, run_trilinear_at, BilinearRun,
    TrilinearPoint, TrilinearRun, ValidityRow,
};
pub use state::{
    coherent_n_max, poisson_tail, poisson_weight, prepare_pump, MultiSectorState, PumpKind, Sector,
    SectorState,
};
pub use tridiag::TridiagonalHermitian;
