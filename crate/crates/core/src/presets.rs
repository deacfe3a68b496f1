//! Built-in parameter sets matching the Tm³⁺:YAG experiment: 2.1 µs signal
//! of area 0.09π, 0.8 µs gaussian rephasing pulse, t12 = 25 µs, αL = 5,
//! T₂ = 50 µs.

use std::f64::consts::PI;

use crate::error::Result;
use crate::medium::MediumParams;
use crate::pulse::PulseSpec;
use crate::sequence::Sequence;
use crate::solver::default_medium;

pub const SIGNAL_RMS_US: f64 = 2.1;
/// Signal area in units of π.
pub const SIGNAL_AREA_PI: f64 = 0.09;
pub const SIGNAL_AREA: f64 = SIGNAL_AREA_PI * PI;
pub const REPHASING_RMS_US: f64 = 0.8;
/// Rephasing area in units of π.
pub const REPHASING_AREA_PI: f64 = 1.1;
pub const REPHASING_AREA: f64 = REPHASING_AREA_PI * PI;
pub const T12_US: f64 = 25.0;
pub const OPTICAL_THICKNESS: f64 = 5.0;
pub const T2_US: f64 = 50.0;

/// Thicknesses of the efficiency-curve figure.
pub const FIG2_THICKNESSES: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];

/// Rephasing areas (units of π) of the penetration-depth figure: the main
/// curve over (0, π) and the refinement within 2% of π.
pub const FIG3_AREA_PI: (f64, f64, usize) = (0.01, 0.99, 99);
pub const FIG3_INSET_AREA_PI: (f64, f64, usize) = (0.98, 0.9999, 103);

/// The time-sequence scenario (rephasing area 1.1π).
pub fn reference_sequence() -> Result<Sequence> {
    let signal = PulseSpec::gaussian(0.0, SIGNAL_RMS_US, SIGNAL_AREA)?;
    let rephasing = PulseSpec::gaussian(T12_US, REPHASING_RMS_US, REPHASING_AREA)?;
    Sequence::with_default_end(signal, rephasing, T12_US)
}

/// The crystal, with or without coherence decay, on the default detuning grid.
pub fn reference_medium(with_t2: bool) -> Result<MediumParams> {
    let seq = reference_sequence()?;
    default_medium(OPTICAL_THICKNESS, with_t2.then_some(T2_US), seq.signal())
}
