//! Emitter-radiation entanglement for an ensemble of excited two-level emitters
//! confined to a photonic band edge.
//!
//! The emitters are represented through two boson modes (`b` for the lower
//! level, `c` for the upper level) coupled to the radiation mode `a` by the
//! trilinear interaction `ig(a^dag b^dag c - a b c^dag)`. Replacing `c` by a real
//! amplitude `gamma` yields the parametric generator `iG(a^dag b^dag - a b)`,
//! `G = g gamma`, whose Gaussian state is available in closed form.
//!
//! * [`band`]: dispersion near the band edge and the coupling `g(omega_k)`.
//! * [`analytic`]: closed-form moments; [`qfunction`]: the Husimi Q-function and
//!   its quadrature validation.
//! * [`fock`]: exact sector-decomposed evolution of both Hamiltonians.
//! * [`witnesses`]: Mandel factor, EPR-type variance and the `E_c` ratio.
//! * [`harness`]: sweeps, figure recipes, engine comparison and CSV output.
//! * [`validation`]: the end-to-end numerical checks behind `pbgsim check`.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

// `!(x > 0.0)` also rejects NaN, which is the point.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod band;
pub mod error;
pub mod fock;
pub mod harness;
pub mod moments;
pub mod qfunction;
pub mod validation;
pub mod witnesses;

pub use error::{Error, Result};
pub use moments::{MomentSet, MomentSource};
pub use witnesses::{witness_report, Undefined, WitnessReport};
