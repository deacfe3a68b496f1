use crate::error::{Error, Result};
use crate::field::{TimeGrid, Waveform};
use crate::medium::MediumParams;
use crate::pulse::PulseSpec;

use super::{default_dt, propagate_waveform, KickSchedule, PropagationPlan, SolverMode, SolverOptions};

/// Largest probe area accepted by the calibration.
pub const MAX_PROBE_AREA: f64 = 0.01;

/// Weak resonant gaussian probe whose spectral rms is 1/40 of the detuning
/// half-span.
pub fn default_probe(medium: &MediumParams) -> PulseSpec {
    let rms = super::DEFAULT_SPAN_FACTOR / (2f64.sqrt() * medium.detuning_half_span());
    PulseSpec::gaussian(0.0, rms, MAX_PROBE_AREA).expect("positive width")
}

/// Beer's-law self-test with the default probe.
pub fn beer_lambert_calibration(medium: &MediumParams, opts: &SolverOptions) -> Result<f64> {
    beer_lambert_calibration_with(medium, opts, &default_probe(medium))
}

/// Propagates a weak probe and returns
/// `|A_out/A_in − e^{−αL/2}| / e^{−αL/2}` for the peak amplitudes.
pub fn beer_lambert_calibration_with(medium: &MediumParams, opts: &SolverOptions, probe: &PulseSpec) -> Result<f64> {
    opts.validate()?;
    if probe.area() > MAX_PROBE_AREA {
        return Err(Error::invalid(
            "probe",
            format!("area must be <= {MAX_PROBE_AREA}, got {}", probe.area()),
        ));
    }
    let fraction = probe.spectral_energy_fraction(medium.detuning_half_span());
    if fraction < 0.99 {
        return Err(Error::SpanTooNarrow {
            fraction,
            half_span: medium.detuning_half_span(),
        });
    }
    let dt = opts.dt.unwrap_or_else(|| default_dt(&[probe], medium));
    let half = 8.0 * probe.rms_width();
    let grid = TimeGrid::covering(probe.center() - half, probe.center() + half, dt)?;
    let input = Waveform::from_pulses(grid, &[*probe]);
    let plan = PropagationPlan {
        n_z: opts.n_z,
        kicks: match opts.mode {
            SolverMode::Full => KickSchedule::Nonlinear,
            _ => KickSchedule::Linear,
        },
        rotation: None,
        parallel: opts.parallel,
    };
    let run = propagate_waveform(&input, medium, &plan)?;
    let ratio = run.field.output().max_abs() / input.max_abs();
    let expected = (-0.5 * medium.optical_thickness()).exp();
    Ok((ratio - expected).abs() / expected)
}
