//! Two-pulse photon echo in an optically thick, inhomogeneously broadened
//! absorber.
//!
//! - [`analytic`]: closed-form efficiency, Area Theorem, penetration depth.
//! - [`bloch`]: single atom-class dynamics.
//! - [`solver`]: 1-D Maxwell–Bloch propagation and echo measurement.
//! - [`dicke`]: collective-emission counting behind the fluorescence noise
//!   bound.
//!
//! Units: times in µs, Rabi frequencies and detunings in rad/µs, depths in
//! units of 1/α.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod bloch;
pub mod dicke;
mod error;
pub mod field;
pub mod medium;
pub mod par;
pub mod presets;
pub mod pulse;
pub mod sequence;
pub mod solver;

pub use error::{Error, Result};
pub use field::{FieldGrid, TimeGrid, Waveform};
pub use medium::MediumParams;
pub use pulse::{Amplitude, PulseShape, PulseSpec};
pub use sequence::Sequence;
pub use solver::{propagate, EchoResult, SolverMode, SolverOptions};
