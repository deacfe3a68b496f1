//! Oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use twopulse_core::bloch::{self, BlochVector};
use twopulse_core::{PulseSpec, TimeGrid, Waveform};

/// Resonant gaussian pulse centered at 0, sampled from −8σ to 8σ at the
/// default RK4 step (bounded by the detuning rate) and at most σ/500.
pub fn pulse_waveform(area: f64, rms: f64, detuning: f64) -> Waveform {
    let p = PulseSpec::gaussian(0.0, rms, area).unwrap();
    let dt = bloch::default_bloch_step(p.peak().max(detuning.abs())).min(rms / 500.0);
    Waveform::from_pulses(TimeGrid::covering(-8.0 * rms, 8.0 * rms, dt).unwrap(), &[p])
}

/// Relative distance between the RK4 coherence after a weak pulse and its
/// linear-response prediction.
pub fn linearization_deviation(area: f64, detuning: f64) -> f64 {
    let field = pulse_waveform(area, 1.0, detuning);
    let end = *bloch::integrate_bloch(&field, detuning, BlochVector::GROUND, None)
        .unwrap()
        .last()
        .unwrap();
    let spectrum = bloch::signal_spectrum(&field, &[detuning]);
    let linear = bloch::weak_pulse_coherence(&spectrum, &[detuning], field.grid().end())[0];
    (end.coherence() - linear).norm() / linear.norm()
}

/// Least-squares slope of log(y) against log(x).
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn precess(s: BlochVector, detuning: f64, t: f64) -> BlochVector {
    let c = s.coherence() * Complex64::from_polar(1.0, detuning * t);
    BlochVector::new(c.re, c.im, s.w)
}

/// Largest component difference between integrating a brief pulse of `area`
/// (rms `rms`) and drift, instantaneous rotation at the pulse center, drift.
pub fn short_pulse_vs_rotation(initial: BlochVector, area: f64, detuning: f64, rms: f64) -> f64 {
    let field = pulse_waveform(area, rms, detuning);
    let g = field.grid();
    let end = *bloch::integrate_bloch(&field, detuning, initial, None)
        .unwrap()
        .last()
        .unwrap();
    let before = precess(initial, detuning, -g.start());
    let kicked = bloch::apply_instantaneous_rotation(before, area);
    let model = precess(kicked, detuning, g.end());
    (end.u - model.u)
        .abs()
        .max((end.v - model.v).abs())
        .max((end.w - model.w).abs())
}

/// Largest `|‖s‖² − ‖s₀‖²|` along an RK4 trajectory.
pub fn norm_drift(field: &Waveform, detuning: f64, initial: BlochVector) -> f64 {
    let n0 = initial.norm_sq();
    bloch::integrate_bloch(field, detuning, initial, None)
        .unwrap()
        .iter()
        .map(|s| (s.norm_sq() - n0).abs())
        .fold(0.0, f64::max)
}

/// Phase spread of the linear-response coherence at the echo time: weak
/// pulse at 0, rephasing rotation at `t12`, free precession to `2·t12`.
pub fn echo_phase_spread(signal: &Waveform, detunings: &[f64], t12: f64, area: f64) -> f64 {
    let spectrum = bloch::signal_spectrum(signal, detunings);
    let at_rephase = bloch::weak_pulse_coherence(&spectrum, detunings, t12);
    let phases: Vec<f64> = at_rephase
        .iter()
        .zip(detunings)
        .map(|(c, d)| (bloch::rephase_coherence(*c, area) * Complex64::from_polar(1.0, d * t12)).arg())
        .collect();
    let max = phases.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = phases.iter().cloned().fold(f64::INFINITY, f64::min);
    max - min
}
