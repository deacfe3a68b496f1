//! Sampled fields: uniform time grids, single-position waveforms and the
//! space-time Rabi-frequency grid produced by the propagator.

use crate::error::{Error, Result};
use crate::pulse::PulseSpec;

/// Uniform time samples `start + i·dt`, `i in 0..len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    start: f64,
    dt: f64,
    len: usize,
}

impl TimeGrid {
    pub fn new(start: f64, dt: f64, len: usize) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::invalid("dt", format!("must be > 0, got {dt}")));
        }
        if len < 2 {
            return Err(Error::invalid("len", "a time grid needs at least two samples"));
        }
        if !start.is_finite() {
            return Err(Error::invalid("start", "must be finite"));
        }
        Ok(Self { start, dt, len })
    }

    /// Grid covering `[start, end]` with a step no larger than `max_dt`.
    pub fn covering(start: f64, end: f64, max_dt: f64) -> Result<Self> {
        if !(end > start) {
            return Err(Error::invalid("end", format!("must exceed start ({start}), got {end}")));
        }
        if !(max_dt > 0.0) {
            return Err(Error::invalid("dt", format!("must be > 0, got {max_dt}")));
        }
        let steps = ((end - start) / max_dt).ceil().max(1.0) as usize;
        Self::new(start, (end - start) / steps as f64, steps + 1)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn end(&self) -> f64 {
        self.time(self.len - 1)
    }

    #[inline]
    pub fn time(&self, i: usize) -> f64 {
        self.start + i as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(move |i| self.time(i))
    }

    /// Index range of samples with `start <= t <= end` (with a small slack
    /// for rounding of the sample times).
    pub fn index_range(&self, start: f64, end: f64) -> std::ops::Range<usize> {
        let eps = 1e-9 * self.dt;
        let lo = ((start - self.start - eps) / self.dt).ceil().max(0.0) as usize;
        let hi = (((end - self.start + eps) / self.dt).floor() + 1.0).max(0.0) as usize;
        lo.min(self.len)..hi.min(self.len)
    }
}

/// A real Rabi-frequency time series on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    grid: TimeGrid,
    values: Vec<f64>,
}

impl Waveform {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(
                "values",
                format!("expected {} samples, got {}", grid.len(), values.len()),
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: TimeGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    /// Samples the sum of the given pulses.
    pub fn from_pulses(grid: TimeGrid, pulses: &[PulseSpec]) -> Self {
        let values = grid
            .times()
            .map(|t| pulses.iter().map(|p| p.envelope_value(t)).sum())
            .collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    fn check_window(&self, start: f64, end: f64) -> Result<()> {
        let (min, max) = (self.grid.start(), self.grid.end());
        let slack = 1e-9 * self.grid.dt();
        if !(start <= end) || start < min - slack || end > max + slack {
            return Err(Error::Range { start, end, min, max });
        }
        Ok(())
    }

    /// Linear interpolation between samples.
    fn value_at(&self, t: f64) -> f64 {
        let x = ((t - self.grid.start()) / self.grid.dt()).clamp(0.0, (self.grid.len() - 1) as f64);
        let i = (x.floor() as usize).min(self.grid.len() - 2);
        let f = x - i as f64;
        self.values[i] * (1.0 - f) + self.values[i + 1] * f
    }

    /// Integral of `g(Ω)` over `[start, end]` by the trapezoidal rule on the
    /// samples, with partial end intervals taken from the linear interpolant.
    fn integrate_map(&self, start: f64, end: f64, g: impl Fn(f64) -> f64) -> Result<f64> {
        self.check_window(start, end)?;
        let dt = self.grid.dt();
        let inner = self.grid.index_range(start, end);
        if inner.is_empty() {
            let (a, b) = (g(self.value_at(start)), g(self.value_at(end)));
            return Ok(0.5 * (a + b) * (end - start));
        }
        let (lo, hi) = (inner.start, inner.end - 1);
        let mut acc = 0.0;
        for i in lo..hi {
            acc += 0.5 * (g(self.values[i]) + g(self.values[i + 1])) * dt;
        }
        let t_lo = self.grid.time(lo);
        if t_lo > start {
            acc += 0.5 * (g(self.value_at(start)) + g(self.values[lo])) * (t_lo - start);
        }
        let t_hi = self.grid.time(hi);
        if end > t_hi {
            acc += 0.5 * (g(self.values[hi]) + g(self.value_at(end))) * (end - t_hi);
        }
        Ok(acc)
    }

    /// Trapezoidal pulse area ∫Ω dt over `[start, end]`.
    pub fn pulse_area(&self, start: f64, end: f64) -> Result<f64> {
        self.integrate_map(start, end, |v| v)
    }

    /// ∫Ω² dt over `[start, end]`.
    pub fn energy(&self, start: f64, end: f64) -> Result<f64> {
        self.integrate_map(start, end, |v| v * v)
    }

    /// Area over the full record.
    pub fn total_area(&self) -> f64 {
        self.pulse_area(self.grid.start(), self.grid.end()).unwrap_or(0.0)
    }

    /// rms duration of `|Ω|` inside `[start, end]`: square root of the second
    /// central moment with `|Ω|` as weight. For a gaussian envelope this is
    /// its `rms_width`. Returns 0 for an all-zero window.
    pub fn rms_duration(&self, start: f64, end: f64) -> Result<f64> {
        self.check_window(start, end)?;
        let idx = self.grid.index_range(start, end);
        let (mut m0, mut m1, mut m2) = (0.0, 0.0, 0.0);
        for i in idx {
            let w = self.values[i].abs();
            let t = self.grid.time(i);
            m0 += w;
            m1 += w * t;
            m2 += w * t * t;
        }
        if m0 == 0.0 {
            return Ok(0.0);
        }
        let mean = m1 / m0;
        Ok((m2 / m0 - mean * mean).max(0.0).sqrt())
    }

    /// Largest `|Ω|` inside the window and the time of its earliest occurrence.
    pub fn peak_in(&self, start: f64, end: f64) -> Result<(f64, f64)> {
        self.check_window(start, end)?;
        let idx = self.grid.index_range(start, end);
        if idx.is_empty() {
            return Err(Error::EmptyWindow { start, end });
        }
        let mut best = (f64::NEG_INFINITY, 0.0);
        for i in idx {
            let a = self.values[i].abs();
            if a > best.0 {
                best = (a, self.grid.time(i));
            }
        }
        Ok(best)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Real Rabi-frequency envelope Ω(z_j, t_i) on a uniform (z, t) grid. Depth
/// is in units of 1/α, so the last slice sits at z = αL.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    times: TimeGrid,
    dz: f64,
    n_slices: usize,
    omega: Vec<f64>,
}

impl FieldGrid {
    pub(crate) fn from_slices(times: TimeGrid, dz: f64, slices: Vec<Vec<f64>>) -> Self {
        let n_slices = slices.len();
        let omega = slices.into_iter().flatten().collect();
        Self {
            times,
            dz,
            n_slices,
            omega,
        }
    }

    pub fn times(&self) -> &TimeGrid {
        &self.times
    }

    pub fn dz(&self) -> f64 {
        self.dz
    }

    /// Number of depth samples (n_z + 1, including both faces).
    pub fn n_slices(&self) -> usize {
        self.n_slices
    }

    pub fn z(&self, j: usize) -> f64 {
        j as f64 * self.dz
    }

    pub fn slice(&self, j: usize) -> &[f64] {
        let n = self.times.len();
        &self.omega[j * n..(j + 1) * n]
    }

    pub fn waveform(&self, j: usize) -> Waveform {
        Waveform {
            grid: self.times,
            values: self.slice(j).to_vec(),
        }
    }

    pub fn input(&self) -> Waveform {
        self.waveform(0)
    }

    pub fn output(&self) -> Waveform {
        self.waveform(self.n_slices - 1)
    }
}
