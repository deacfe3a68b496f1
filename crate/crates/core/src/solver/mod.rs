//! One-dimensional Maxwell–Bloch propagation in retarded time.
//!
//! The field obeys `∂zΩ = −(α/2π)·∫v dΔ` with no time derivative, so each
//! depth slice is a pure source update: the atoms of slice `z` are driven
//! through the whole record by `Ω(z, ·)` and their summed coherence advances
//! the field to the next slice (Heun predictor–corrector in z).
//!
//! Three modes:
//! - [`SolverMode::Full`]: every pulse drives the full nonlinear Bloch
//!   dynamics.
//! - [`SolverMode::InstantaneousRephasing`]: signal and echo are treated in
//!   linear response, the rephasing pulse is an instantaneous rotation whose
//!   area is marched along z by the Area Theorem.
//! - [`SolverMode::Hybrid`]: linear response everywhere except inside the
//!   rephasing-pulse window, where the nonlinear dynamics are used.

mod calibration;
mod kernel;
mod measure;

pub use calibration::{beer_lambert_calibration, beer_lambert_calibration_with, default_probe};
pub use measure::{measure_efficiency, EchoResult};

use crate::error::{Error, Result};
use crate::field::{FieldGrid, TimeGrid, Waveform};
use crate::medium::MediumParams;
use crate::pulse::PulseSpec;
use crate::sequence::Sequence;
use kernel::{Ensemble, RephaseEvent, SliceDrive};

/// Largest allowed rotation `dt·max|Ω|` per time step.
pub const FIELD_STEP_GUARD: f64 = 0.1;
/// Largest allowed precession `dt·max|Δ|` per time step (keeps the detuning
/// span well below the Nyquist frequency of the time grid).
pub const DETUNING_STEP_GUARD: f64 = 1.0;
/// Default ratio of the detuning half-span to the signal spectral rms.
pub const DEFAULT_SPAN_FACTOR: f64 = 40.0;
pub const DEFAULT_N_DETUNING: usize = 2001;
pub const DEFAULT_N_Z: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverMode {
    Full,
    InstantaneousRephasing,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub mode: SolverMode,
    pub n_z: usize,
    /// Time step; `None` picks [`default_dt`].
    pub dt: Option<f64>,
    /// Peak-search window; `None` uses [`Sequence::echo_window`].
    pub echo_window: Option<(f64, f64)>,
    /// Spread detuning classes over the rayon pool (ignored without the
    /// `parallel` feature).
    pub parallel: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            mode: SolverMode::Full,
            n_z: DEFAULT_N_Z,
            dt: None,
            echo_window: None,
            parallel: true,
        }
    }
}

impl SolverOptions {
    pub fn with_mode(mode: SolverMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_z < 8 {
            return Err(Error::invalid("n_z", format!("must be >= 8, got {}", self.n_z)));
        }
        if let Some(dt) = self.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(Error::invalid("dt", format!("must be > 0, got {dt}")));
            }
        }
        Ok(())
    }
}

/// Flat line covering `DEFAULT_SPAN_FACTOR` signal spectral rms widths on
/// each side, with `DEFAULT_N_DETUNING` classes.
pub fn default_medium(optical_thickness: f64, t2: Option<f64>, signal: &PulseSpec) -> Result<MediumParams> {
    MediumParams::with_optical_thickness(
        optical_thickness,
        t2,
        DEFAULT_SPAN_FACTOR * signal.spectral_rms(),
        DEFAULT_N_DETUNING,
    )
}

/// Default time step: half the field guard for the strongest pulse, bounded
/// by the detuning guard and by 1/20 of the shortest pulse.
pub fn default_dt(pulses: &[&PulseSpec], medium: &MediumParams) -> f64 {
    let peak = pulses.iter().map(|p| p.peak()).fold(0.0, f64::max);
    let shortest = pulses.iter().map(|p| p.rms_width()).fold(f64::INFINITY, f64::min);
    let mut dt = (0.5 * DETUNING_STEP_GUARD / medium.detuning_half_span()).min(shortest / 20.0);
    if peak > 0.0 {
        dt = dt.min(0.5 * FIELD_STEP_GUARD / peak);
    }
    dt
}

/// Which kick each time step uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KickSchedule {
    Nonlinear,
    Linear,
    /// Nonlinear for `start <= t < end`, linear elsewhere.
    NonlinearWithin(f64, f64),
}

/// Instantaneous rotation applied to every slice at `time`, with the area
/// entering the medium marched along z by dA/dz = −½·sin A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstantRotation {
    pub time: f64,
    pub area_in: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationPlan {
    pub n_z: usize,
    pub kicks: KickSchedule,
    pub rotation: Option<InstantRotation>,
    pub parallel: bool,
}

/// Output of [`propagate_waveform`].
#[derive(Debug, Clone, PartialEq)]
pub struct Propagation {
    pub field: FieldGrid,
    /// Instantaneous rotation area at every slice (empty without rotation).
    pub rotation_areas: Vec<f64>,
}

fn check_guards(input: &Waveform, medium: &MediumParams) -> Result<()> {
    let dt = input.grid().dt();
    let field = dt * input.max_abs();
    if field > FIELD_STEP_GUARD {
        return Err(Error::StepSize {
            what: "dt * max|omega|",
            product: field,
            limit: FIELD_STEP_GUARD,
        });
    }
    let det = dt * medium.detuning_half_span();
    if det > DETUNING_STEP_GUARD {
        return Err(Error::StepSize {
            what: "dt * detuning_half_span",
            product: det,
            limit: DETUNING_STEP_GUARD,
        });
    }
    Ok(())
}

/// Marches an arbitrary input waveform `Ω(0, t)` through the medium.
pub fn propagate_waveform(input: &Waveform, medium: &MediumParams, plan: &PropagationPlan) -> Result<Propagation> {
    if plan.n_z < 8 {
        return Err(Error::invalid("n_z", format!("must be >= 8, got {}", plan.n_z)));
    }
    check_guards(input, medium)?;
    let grid = *input.grid();
    let dt = grid.dt();
    let nonlinear: Vec<bool> = grid
        .times()
        .map(|t| match plan.kicks {
            KickSchedule::Nonlinear => true,
            KickSchedule::Linear => false,
            KickSchedule::NonlinearWithin(a, b) => t >= a && t < b,
        })
        .collect();
    let rotation_index = match plan.rotation {
        Some(r) => {
            let x = ((r.time - grid.start()) / dt).round();
            if !(x >= 0.0 && (x as usize) < grid.len()) {
                return Err(Error::Range {
                    start: r.time,
                    end: r.time,
                    min: grid.start(),
                    max: grid.end(),
                });
            }
            Some(x as usize)
        }
        None => None,
    };
    let area_rate = |a: f64| -0.5 * a.sin();

    let ensemble = Ensemble::new(medium, dt);
    let depth = medium.optical_thickness();
    let h = depth / plan.n_z as f64;
    let mut slices = Vec::with_capacity(plan.n_z + 1);
    let mut areas = Vec::new();
    let mut omega = input.values().to_vec();
    let mut area = plan.rotation.map_or(0.0, |r| r.area_in);

    let source = |omega: &[f64], area: f64| {
        let drive = SliceDrive {
            omega,
            dt,
            nonlinear: &nonlinear,
            rephase: rotation_index.map(|index| RephaseEvent { index, area }),
        };
        ensemble.source(&drive, plan.parallel)
    };

    for j in 0..plan.n_z {
        if plan.rotation.is_some() {
            areas.push(area);
        }
        let s0 = source(&omega, area);
        let predicted: Vec<f64> = omega.iter().zip(&s0).map(|(o, s)| o + h * s).collect();
        let area_pred = area + h * area_rate(area);
        let s1 = source(&predicted, area_pred);
        let next: Vec<f64> = omega
            .iter()
            .zip(s0.iter().zip(&s1))
            .map(|(o, (a, b))| o + 0.5 * h * (a + b))
            .collect();
        if let Some(i) = next.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                slice: j + 1,
                z: (j + 1) as f64 * h,
                t: grid.time(i),
            });
        }
        area += 0.5 * h * (area_rate(area) + area_rate(area_pred));
        slices.push(std::mem::replace(&mut omega, next));
    }
    if plan.rotation.is_some() {
        areas.push(area);
    }
    slices.push(omega);
    Ok(Propagation {
        field: FieldGrid::from_slices(grid, h, slices),
        rotation_areas: areas,
    })
}

/// Runs a two-pulse sequence and measures the echo at the output face.
pub fn propagate(seq: &Sequence, medium: &MediumParams, opts: &SolverOptions) -> Result<(FieldGrid, EchoResult)> {
    opts.validate()?;
    let signal = *seq.signal();
    let rephasing = *seq.rephasing();
    let instantaneous = opts.mode == SolverMode::InstantaneousRephasing;
    let driving: Vec<&PulseSpec> = if instantaneous {
        vec![&signal]
    } else {
        vec![&signal, &rephasing]
    };
    let dt = opts.dt.unwrap_or_else(|| default_dt(&driving, medium));
    let grid = seq.time_grid(dt)?;

    let echo_window = match opts.echo_window {
        Some((a, b)) => {
            let s = signal.rms_width();
            let (need_a, need_b) = (seq.echo_time() - 3.0 * s, seq.echo_time() + 3.0 * s);
            if !(a <= need_a && b >= need_b) {
                return Err(Error::invalid(
                    "echo_window",
                    format!("must contain [{need_a}, {need_b}], got [{a}, {b}]"),
                ));
            }
            (a, b)
        }
        None => seq.echo_window(),
    };
    if echo_window.1 > grid.end() + 1e-9 * dt {
        return Err(Error::EchoWindowTruncated {
            window_end: echo_window.1,
            t_end: grid.end(),
        });
    }

    let pulses: Vec<PulseSpec> = driving.iter().map(|p| **p).collect();
    let input = Waveform::from_pulses(grid, &pulses);
    let (rw_start, rw_end) = seq.rephasing_window();
    let plan = PropagationPlan {
        n_z: opts.n_z,
        kicks: match opts.mode {
            SolverMode::Full => KickSchedule::Nonlinear,
            SolverMode::InstantaneousRephasing => KickSchedule::Linear,
            SolverMode::Hybrid => KickSchedule::NonlinearWithin(rw_start, rw_end),
        },
        rotation: instantaneous.then(|| InstantRotation {
            time: seq.rephasing_time(),
            area_in: rephasing.area(),
        }),
        parallel: opts.parallel,
    };
    let run = propagate_waveform(&input, medium, &plan)?;
    let signal_in = Waveform::from_pulses(grid, &[signal]);
    if instantaneous {
        let mut result = measure_efficiency(&signal_in, &run.field.output(), echo_window)?;
        result.rephasing_out_area = run.rotation_areas.last().copied();
        return Ok((run.field, result));
    }
    // The stretched rephasing pulse overlaps the echo window; the echo is the
    // signal-induced part of the output, so the rephasing-only response is
    // propagated separately and subtracted.
    let background = propagate_waveform(&Waveform::from_pulses(grid, &[rephasing]), medium, &plan)?;
    let bg_out = background.field.output();
    let induced: Vec<f64> = run
        .field
        .output()
        .values()
        .iter()
        .zip(bg_out.values())
        .map(|(a, b)| a - b)
        .collect();
    let induced = Waveform::new(grid, induced)?;
    let mut result = measure_efficiency(&signal_in, &induced, echo_window)?;
    result.rephasing_out_area = Some(bg_out.pulse_area(rw_start, grid.end())?);
    result.rephasing_out_rms = Some(bg_out.rms_duration(rw_start, grid.end())?);
    Ok((run.field, result))
}

/// Time grid and input waveform `propagate` would use, for callers that
/// want to drive [`propagate_waveform`] directly.
pub fn sequence_grid(seq: &Sequence, medium: &MediumParams, opts: &SolverOptions) -> Result<TimeGrid> {
    let dt = opts
        .dt
        .unwrap_or_else(|| default_dt(&[seq.signal(), seq.rephasing()], medium));
    seq.time_grid(dt)
}
