//! Dynamics of a single class of two-level atoms.
//!
//! Equations of motion, with Δ the detuning and Ω the real Rabi frequency:
//!
//! ```text
//! du/dt = −Δ·v            (− u/T₂)
//! dv/dt = −Ω·w + Δ·u      (− v/T₂)
//! dw/dt =  Ω·v
//! ```
//!
//! The complex coherence `u + i·v` therefore precesses as `e^{iΔt}`, and a
//! resonant field rotates the vector about the u-axis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Waveform;

/// Largest allowed `dt·max(|Δ|, |Ω|)` for the RK4 integrator.
pub const RK4_STEP_GUARD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochVector {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl BlochVector {
    pub const GROUND: BlochVector = BlochVector {
        u: 0.0,
        v: 0.0,
        w: -1.0,
    };

    pub fn new(u: f64, v: f64, w: f64) -> Self {
        Self { u, v, w }
    }

    pub fn norm_sq(&self) -> f64 {
        self.u * self.u + self.v * self.v + self.w * self.w
    }

    pub fn coherence(&self) -> Complex64 {
        Complex64::new(self.u, self.v)
    }

    fn axpy(&self, h: f64, d: &BlochVector) -> BlochVector {
        BlochVector::new(self.u + h * d.u, self.v + h * d.v, self.w + h * d.w)
    }
}

/// An atom class at detuning Δ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomClass {
    pub detuning: f64,
    pub state: BlochVector,
}

impl AtomClass {
    pub fn ground(detuning: f64) -> Self {
        Self {
            detuning,
            state: BlochVector::GROUND,
        }
    }
}

#[inline]
fn derivative(s: &BlochVector, omega: f64, detuning: f64, gamma: f64) -> BlochVector {
    BlochVector {
        u: -detuning * s.v - gamma * s.u,
        v: -omega * s.w + detuning * s.u - gamma * s.v,
        w: omega * s.v,
    }
}

/// Step size giving a per-step rotation of `0.02` rad, well inside the RK4
/// guard. At this step the norm drift over a pulse stays below 1e-10.
pub fn default_bloch_step(max_rate: f64) -> f64 {
    0.02 / max_rate.max(1e-12)
}

/// Fixed-step RK4 trajectory under the sampled field. The field is linearly
/// interpolated at half steps. `t2` switches on decay of u and v; population
/// decay is not modelled. Returns one state per field sample.
pub fn integrate_bloch(
    field: &Waveform,
    detuning: f64,
    initial: BlochVector,
    t2: Option<f64>,
) -> Result<Vec<BlochVector>> {
    let dt = field.grid().dt();
    let rate = detuning.abs().max(field.max_abs());
    if dt * rate > RK4_STEP_GUARD {
        return Err(Error::StepSize {
            what: "dt * max(|detuning|, |omega|)",
            product: dt * rate,
            limit: RK4_STEP_GUARD,
        });
    }
    let gamma = t2.map_or(0.0, |t2| 1.0 / t2);
    let omega = field.values();
    let mut out = Vec::with_capacity(omega.len());
    let mut s = initial;
    out.push(s);
    for pair in omega.windows(2) {
        let (o0, o1) = (pair[0], pair[1]);
        let om = 0.5 * (o0 + o1);
        let k1 = derivative(&s, o0, detuning, gamma);
        let k2 = derivative(&s.axpy(0.5 * dt, &k1), om, detuning, gamma);
        let k3 = derivative(&s.axpy(0.5 * dt, &k2), om, detuning, gamma);
        let k4 = derivative(&s.axpy(dt, &k3), o1, detuning, gamma);
        s = BlochVector {
            u: s.u + dt / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
            v: s.v + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v),
            w: s.w + dt / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w),
        };
        out.push(s);
    }
    Ok(out)
}

/// Rotation by `area` about the u-axis, the action of a brief resonant pulse.
/// At `area = π` this maps `u + iv` to its complex conjugate and inverts w.
pub fn apply_instantaneous_rotation(state: BlochVector, area: f64) -> BlochVector {
    let (s, c) = area.sin_cos();
    BlochVector {
        u: state.u,
        v: state.v * c - state.w * s,
        w: state.w * c + state.v * s,
    }
}

/// Spectrum `S̃(Δ) = ∫ S(τ)·e^{−iΔτ} dτ` of a sampled field, by the
/// trapezoidal rule.
pub fn signal_spectrum(signal: &Waveform, detunings: &[f64]) -> Vec<Complex64> {
    let grid = signal.grid();
    let values = signal.values();
    let last = values.len() - 1;
    detunings
        .iter()
        .map(|&d| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, &s) in values.iter().enumerate() {
                if s == 0.0 {
                    continue;
                }
                let weight = if i == 0 || i == last { 0.5 } else { 1.0 };
                acc += Complex64::from_polar(weight * s, -d * grid.time(i));
            }
            acc * grid.dt()
        })
        .collect()
}

/// Linear-response coherence `u + iv = i·e^{iΔt}·S̃(Δ)` left by a weak pulse
/// in ground-state atoms, valid once the pulse is over.
pub fn weak_pulse_coherence(spectrum: &[Complex64], detunings: &[f64], t: f64) -> Vec<Complex64> {
    spectrum
        .iter()
        .zip(detunings)
        .map(|(s, &d)| Complex64::i() * Complex64::from_polar(1.0, d * t) * s)
        .collect()
}

/// Coherence right after an instantaneous rephasing rotation of `area`,
/// keeping only the conjugated (rephasing) part, weighted by `(1 − cos A)/2`.
pub fn rephase_coherence(coherence: Complex64, area: f64) -> Complex64 {
    0.5 * (1.0 - area.cos()) * coherence.conj()
}
