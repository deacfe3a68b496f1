use crate::error::{Error, Result};

/// Inhomogeneously broadened absorber.
///
/// Only the optical thickness `alpha·length` enters the propagation; depths
/// are measured in units of `1/alpha` internally. The line is flat over
/// `[-detuning_half_span, detuning_half_span]` and sampled at `n_detuning`
/// equally spaced classes (odd, so Δ = 0 is on the grid).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    alpha: f64,
    length: f64,
    t2: Option<f64>,
    detuning_half_span: f64,
    n_detuning: usize,
}

impl MediumParams {
    pub fn new(alpha: f64, length: f64, t2: Option<f64>, detuning_half_span: f64, n_detuning: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::invalid("alpha", format!("must be > 0, got {alpha}")));
        }
        // A zero-length medium is accepted as the trivial transmission case.
        if !(length >= 0.0 && length.is_finite()) {
            return Err(Error::invalid("length", format!("must be >= 0, got {length}")));
        }
        if let Some(t2) = t2 {
            if !(t2 > 0.0) {
                return Err(Error::invalid("t2", format!("must be > 0 when given, got {t2}")));
            }
        }
        if !(detuning_half_span > 0.0 && detuning_half_span.is_finite()) {
            return Err(Error::invalid(
                "detuning_half_span",
                format!("must be > 0, got {detuning_half_span}"),
            ));
        }
        if n_detuning < 3 || n_detuning.is_multiple_of(2) {
            return Err(Error::invalid(
                "n_detuning",
                format!("must be odd and >= 3, got {n_detuning}"),
            ));
        }
        Ok(Self {
            alpha,
            length,
            t2,
            detuning_half_span,
            n_detuning,
        })
    }

    /// Medium given directly by its optical thickness (α = 1 units).
    pub fn with_optical_thickness(
        optical_thickness: f64,
        t2: Option<f64>,
        detuning_half_span: f64,
        n_detuning: usize,
    ) -> Result<Self> {
        Self::new(1.0, optical_thickness, t2, detuning_half_span, n_detuning)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn t2(&self) -> Option<f64> {
        self.t2
    }

    pub fn detuning_half_span(&self) -> f64 {
        self.detuning_half_span
    }

    pub fn n_detuning(&self) -> usize {
        self.n_detuning
    }

    /// Dimensionless αL.
    pub fn optical_thickness(&self) -> f64 {
        self.alpha * self.length
    }

    pub fn with_t2(&self, t2: Option<f64>) -> Result<Self> {
        Self::new(self.alpha, self.length, t2, self.detuning_half_span, self.n_detuning)
    }

    pub fn with_thickness(&self, optical_thickness: f64) -> Result<Self> {
        Self::new(
            1.0,
            optical_thickness,
            self.t2,
            self.detuning_half_span,
            self.n_detuning,
        )
    }

    pub fn detuning_step(&self) -> f64 {
        2.0 * self.detuning_half_span / (self.n_detuning - 1) as f64
    }

    /// Detuning of every class, ascending.
    pub fn detunings(&self) -> Vec<f64> {
        let step = self.detuning_step();
        let half = (self.n_detuning / 2) as isize;
        (-half..=half).map(|k| k as f64 * step).collect()
    }

    /// Trapezoidal quadrature weights of the flat line (sum = 2·half_span).
    pub fn detuning_weights(&self) -> Vec<f64> {
        let step = self.detuning_step();
        let mut w = vec![step; self.n_detuning];
        w[0] *= 0.5;
        w[self.n_detuning - 1] *= 0.5;
        w
    }
}
