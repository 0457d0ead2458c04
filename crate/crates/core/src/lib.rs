//! Rate-equation simulator for NV-center charge-state dynamics under
//! multi-color pulse sequences.
//!
//! The crate models the seven-level NV⁻/NV⁰ population dynamics driven by
//! one or more lasers, executes the charge-conversion pulse sequences used
//! to search for the singlet-manifold ionization threshold, and produces
//! the paired above/below-threshold observable curves (final NV⁻ population
//! and collected photocurrent) over the standard sweep axes.

pub mod config;
pub mod error;
pub mod expm;
pub mod fit;
pub mod generator;
pub mod model;
pub mod observables;
pub mod propagator;
pub mod seqfile;
pub mod sequence;
pub mod sweep;

pub use error::{Error, Result};
pub use generator::{build_generator, spontaneous_generator, GeneratorMatrix};
pub use model::{
    classify_regime, photon_energy_ev, CurveLabel, LaserField, LaserMode, LaserRole, Level,
    ModelRates, Regime, Scenario, StateVector,
};
pub use observables::{nv_minus_population, nv_zero_population, pc_signal, CurvePoint, ReadoutChannel};
pub use propagator::{propagate, propagate_numeric, propagate_sampled, steady_state, SegmentResult, SteadyState};
pub use sequence::{apply_pi_pulse, default_sequence, run_sequence, PulseSequence, SequenceReport, SequenceStep};
pub use sweep::{figure_suite, sweep, FigureSpec, SweepAxis};
