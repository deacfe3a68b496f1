//! Pulse envelopes.
//!
//! Envelopes are real Rabi-frequency profiles Ω(t). Times are in µs and Rabi
//! frequencies in rad/µs throughout the crate.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseShape {
    Gaussian,
    /// Flat top whose full width is `2·√3·rms`, so the rms duration matches
    /// a gaussian of the same `rms_width`.
    Rectangular,
}

/// How the pulse strength is declared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Amplitude {
    /// Pulse area ∫Ω dt in radians.
    Area(f64),
    /// Peak Rabi frequency in rad/µs.
    Peak(f64),
}

/// One optical pulse envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    shape: PulseShape,
    center: f64,
    rms_width: f64,
    amplitude: Amplitude,
}

impl PulseSpec {
    pub fn new(shape: PulseShape, center: f64, rms_width: f64, amplitude: Amplitude) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::invalid("center", "must be finite"));
        }
        if !(rms_width > 0.0 && rms_width.is_finite()) {
            return Err(Error::invalid("rms_width", format!("must be > 0, got {rms_width}")));
        }
        match amplitude {
            Amplitude::Area(a) if !(a >= 0.0 && a.is_finite()) => {
                return Err(Error::invalid("area", format!("must be >= 0, got {a}")))
            }
            Amplitude::Peak(p) if !(p >= 0.0 && p.is_finite()) => {
                return Err(Error::invalid("peak", format!("must be >= 0, got {p}")))
            }
            _ => {}
        }
        Ok(Self {
            shape,
            center,
            rms_width,
            amplitude,
        })
    }

    pub fn gaussian(center: f64, rms_width: f64, area: f64) -> Result<Self> {
        Self::new(PulseShape::Gaussian, center, rms_width, Amplitude::Area(area))
    }

    pub fn rectangular(center: f64, rms_width: f64, area: f64) -> Result<Self> {
        Self::new(PulseShape::Rectangular, center, rms_width, Amplitude::Area(area))
    }

    pub fn shape(&self) -> PulseShape {
        self.shape
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn rms_width(&self) -> f64 {
        self.rms_width
    }

    pub fn amplitude(&self) -> Amplitude {
        self.amplitude
    }

    /// Same pulse with a different area.
    pub fn with_area(&self, area: f64) -> Result<Self> {
        Self::new(self.shape, self.center, self.rms_width, Amplitude::Area(area))
    }

    pub fn with_center(&self, center: f64) -> Result<Self> {
        Self::new(self.shape, center, self.rms_width, self.amplitude)
    }

    /// Ratio peak / area for this shape and width.
    fn peak_per_area(&self) -> f64 {
        match self.shape {
            PulseShape::Gaussian => 1.0 / (self.rms_width * (2.0 * PI).sqrt()),
            PulseShape::Rectangular => 1.0 / (2.0 * SQRT_3 * self.rms_width),
        }
    }

    /// Peak Rabi frequency.
    pub fn peak(&self) -> f64 {
        match self.amplitude {
            Amplitude::Area(a) => a * self.peak_per_area(),
            Amplitude::Peak(p) => p,
        }
    }

    /// Declared area ∫Ω dt.
    pub fn area(&self) -> f64 {
        match self.amplitude {
            Amplitude::Area(a) => a,
            Amplitude::Peak(p) => p / self.peak_per_area(),
        }
    }

    /// Half-width of the interval outside which the envelope is treated as
    /// zero (exactly zero for rectangular pulses, below 1e-8 of the peak for
    /// gaussians).
    pub fn support_half_width(&self) -> f64 {
        match self.shape {
            PulseShape::Gaussian => 6.0 * self.rms_width,
            PulseShape::Rectangular => SQRT_3 * self.rms_width,
        }
    }

    /// Envelope value Ω(t).
    pub fn envelope_value(&self, t: f64) -> f64 {
        let x = t - self.center;
        match self.shape {
            PulseShape::Gaussian => {
                let s = x / self.rms_width;
                self.peak() * (-0.5 * s * s).exp()
            }
            PulseShape::Rectangular => {
                if x.abs() <= SQRT_3 * self.rms_width {
                    self.peak()
                } else {
                    0.0
                }
            }
        }
    }

    /// Nominal rms width of the power spectrum |Ω̃(Δ)|², `1/(√2·rms_width)`.
    /// Exact for gaussians; used as the bandwidth scale for rectangular
    /// pulses too (their sinc² spectrum has no finite second moment).
    pub fn spectral_rms(&self) -> f64 {
        1.0 / (2f64.sqrt() * self.rms_width)
    }

    /// Fraction of the pulse spectral energy inside detunings `[-half_span, half_span]`.
    pub fn spectral_energy_fraction(&self, half_span: f64) -> f64 {
        if half_span <= 0.0 {
            return 0.0;
        }
        match self.shape {
            PulseShape::Gaussian => statrs::function::erf::erf(half_span * self.rms_width),
            PulseShape::Rectangular => {
                // |FT|² ∝ sin²x / x² with x = Δ·T/2, ∫_R sin²x/x² dx = π.
                let x_max = half_span * SQRT_3 * self.rms_width;
                let n = ((x_max * 400.0).ceil() as usize).clamp(2_000, 2_000_000) & !1;
                let h = x_max / n as f64;
                let f = |x: f64| {
                    if x == 0.0 {
                        1.0
                    } else {
                        let s = x.sin() / x;
                        s * s
                    }
                };
                let mut acc = f(0.0) + f(x_max);
                for i in 1..n {
                    let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                    acc += w * f(i as f64 * h);
                }
                (2.0 * acc * h / 3.0 / PI).min(1.0)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_pi_peak() {
        let p = PulseSpec::gaussian(0.0, 1.0, PI).unwrap();
        assert_relative_eq!(p.peak(), PI / (2.0 * PI).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(p.peak(), 1.2533141373155, max_relative = 1e-12);
    }

    #[test]
    fn far_outside_support_is_zero() {
        let g = PulseSpec::gaussian(0.0, 1.0, PI).unwrap();
        assert_eq!(g.envelope_value(100.0), 0.0);
        let r = PulseSpec::rectangular(3.0, 1.0, PI).unwrap();
        assert_eq!(r.envelope_value(3.0 + 1.75), 0.0);
        assert_eq!(r.envelope_value(3.0 - 1.75), 0.0);
        assert!(r.envelope_value(3.0 + 1.73) > 0.0);
    }

    #[test]
    fn peak_and_area_modes_agree() {
        let a = PulseSpec::gaussian(0.0, 0.8, 1.1 * PI).unwrap();
        let b = PulseSpec::new(PulseShape::Gaussian, 0.0, 0.8, Amplitude::Peak(a.peak())).unwrap();
        assert_relative_eq!(b.area(), a.area(), max_relative = 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PulseSpec::gaussian(0.0, 0.0, 1.0).is_err());
        assert!(PulseSpec::gaussian(0.0, 1.0, -1.0).is_err());
        assert!(PulseSpec::new(PulseShape::Gaussian, 0.0, 1.0, Amplitude::Peak(-2.0)).is_err());
        assert!(PulseSpec::gaussian(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn spectral_fraction_limits() {
        let g = PulseSpec::gaussian(0.0, 2.0, 0.1).unwrap();
        assert!(g.spectral_energy_fraction(10.0) > 0.999_999);
        assert_relative_eq!(
            g.spectral_energy_fraction(0.5),
            statrs::function::erf::erf(1.0),
            max_relative = 1e-12
        );
        let r = PulseSpec::rectangular(0.0, 2.0, 0.1).unwrap();
        let narrow = r.spectral_energy_fraction(0.5);
        let wide = r.spectral_energy_fraction(20.0);
        assert!(narrow < wide && wide < 1.0 && wide > 0.99);
    }
}
