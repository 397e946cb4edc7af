//! Kerr (anharmonic) oscillator toolkit.
//!
//! * [`coherent`]: coherent states in a truncated number basis.
//! * [`evolution`]: diagonal Kerr evolution for both operator orderings.
//! * [`catsolver`]: exact decomposition of the evolved state at rational
//!   fractions of the period into finite coherent-state superpositions.
//! * [`qpd`]: Husimi Q function on points and grids.
//! * [`analysis`]: peak counting, contour extraction, separation metrics.
//! * [`verify`]: self-checks used by the command-line `verify` verb.

pub mod analysis;
pub mod catsolver;
pub mod coherent;
pub mod error;
pub mod evolution;
pub mod fraction;
pub mod qpd;
pub mod verify;

pub use catsolver::{
    build_superposition, component_count, component_phases, fidelity, solve_coefficients, superposition_to_fock,
    CoherentSuperposition, Component, ComponentPlan, ParityClass,
};
pub use coherent::{
    choose_truncation, coherent_amplitudes, coherent_overlap, coherent_state, ComplexAmplitude, FockVector,
    DEFAULT_EPSILON,
};
pub use error::{KerrError, Result};
pub use evolution::{evolve, period, phase, KerrOrdering, KerrParams};
pub use fraction::{reduce_fraction, PeriodFraction};
pub use qpd::{normalize_check, q_grid, q_series, q_split, q_value, GridWindow, QGrid};
