use crate::error::{Error, Result};
use crate::field::TimeGrid;
use crate::pulse::PulseSpec;

/// Signal pulse followed, `t12` later, by the rephasing pulse. The echo is
/// expected at `signal.center + 2·t12`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sequence {
    signal: PulseSpec,
    rephasing: PulseSpec,
    t12: f64,
    t_end: f64,
}

impl Sequence {
    /// Builds a sequence; the rephasing pulse is re-centered at
    /// `signal.center + t12`.
    pub fn new(signal: PulseSpec, rephasing: PulseSpec, t12: f64, t_end: f64) -> Result<Self> {
        if !(t12 > 0.0 && t12.is_finite()) {
            return Err(Error::invalid("t12", format!("must be > 0, got {t12}")));
        }
        let rephasing = rephasing.with_center(signal.center() + t12)?;
        let required = 4.0 * (signal.rms_width() + rephasing.rms_width());
        if t12 < required {
            return Err(Error::PulsesOverlap {
                separation: t12,
                required,
            });
        }
        let min_end = signal.center() + 2.0 * t12 + 4.0 * signal.rms_width();
        if !(t_end >= min_end) {
            return Err(Error::invalid(
                "t_end",
                format!("must be >= {min_end} (echo time + 4 signal rms widths), got {t_end}"),
            ));
        }
        Ok(Self {
            signal,
            rephasing,
            t12,
            t_end,
        })
    }

    /// Sequence ending 8 signal rms widths after the echo.
    pub fn with_default_end(signal: PulseSpec, rephasing: PulseSpec, t12: f64) -> Result<Self> {
        let t_end = signal.center() + 2.0 * t12 + 8.0 * signal.rms_width();
        Self::new(signal, rephasing, t12, t_end)
    }

    pub fn signal(&self) -> &PulseSpec {
        &self.signal
    }

    pub fn rephasing(&self) -> &PulseSpec {
        &self.rephasing
    }

    pub fn t12(&self) -> f64 {
        self.t12
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn with_rephasing_area(&self, area: f64) -> Result<Self> {
        Self::new(self.signal, self.rephasing.with_area(area)?, self.t12, self.t_end)
    }

    pub fn with_signal_area(&self, area: f64) -> Result<Self> {
        Self::new(self.signal.with_area(area)?, self.rephasing, self.t12, self.t_end)
    }

    pub fn rephasing_time(&self) -> f64 {
        self.signal.center() + self.t12
    }

    pub fn echo_time(&self) -> f64 {
        self.signal.center() + 2.0 * self.t12
    }

    /// First simulated instant: six signal rms widths before its center.
    pub fn t_start(&self) -> f64 {
        self.signal.center() - 6.0 * self.signal.rms_width()
    }

    /// Peak-search window `[2·t12 − 3σ, 2·t12 + 6σ]` around the echo (σ the
    /// signal rms width). Skewed late because a stretched rephasing pulse
    /// delays the echo.
    pub fn echo_window(&self) -> (f64, f64) {
        let s = self.signal.rms_width();
        (self.echo_time() - 3.0 * s, self.echo_time() + 6.0 * s)
    }

    /// Window holding the rephasing pulse and its stretched tail: from midway
    /// between signal and rephasing up to the start of the echo window.
    pub fn rephasing_window(&self) -> (f64, f64) {
        (self.signal.center() + 0.5 * self.t12, self.echo_window().0)
    }

    /// Window holding the signal.
    pub fn signal_window(&self) -> (f64, f64) {
        (self.t_start(), self.signal.center() + 0.5 * self.t12)
    }

    pub fn time_grid(&self, max_dt: f64) -> Result<TimeGrid> {
        TimeGrid::covering(self.t_start(), self.t_end, max_dt)
    }
}
