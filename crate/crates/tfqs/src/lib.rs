//! Time-fractional Schrödinger dynamics for resonant one- and two-qubit
//! Jaynes-Cummings systems.
//!
//! Four time-fractional generalizations of the Schrödinger equation are
//! supported, differing in the fractional derivative (Caputo or conformable)
//! and in how the time coordinate is continued into the complex plane.  Each
//! one evolves a state by applying a scalar factor to every eigenvector of
//! the interaction Hamiltonian, so the whole pipeline is:
//!
//! 1. [`mlf`]: the Mittag-Leffler function, the special-function kernel
//!    behind the Caputo-derivative variants;
//! 2. [`model`]: resonant interaction Hamiltonians, their spectral
//!    decompositions, and entangled initial states;
//! 3. [`propagate`]: the four time-evolution laws applied spectrally, plus
//!    the closed-form amplitude expressions used to cross-check them;
//! 4. [`observables`]: reduced density matrices by partial trace over the
//!    photon labels, total and excited-level probabilities;
//! 5. [`sweep`] / [`config`] / [`svg`]: parameter sweeps over
//!    (variant, beta, lambda, n, C0, t) with CSV and SVG output, used by the
//!    `simulate` binary.
//!
//! Probability is intentionally not renormalized anywhere: three of the four
//! evolution laws are non-unitary, and the drift of the total probability is
//! itself the quantity of interest.

pub mod config;
pub mod mlf;
pub mod model;
pub mod observables;
pub mod propagate;
pub mod svg;
pub mod sweep;

pub use model::{InitialState, ModelParams, QubitCount};
pub use propagate::{EvolutionSpec, FractionalOrder, TfseVariant};
pub use sweep::{run_sweep, run_sweep_serial, SweepConfig, SweepTable};
