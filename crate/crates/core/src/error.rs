use thiserror::Error;

/// Errors raised by parameter validation and the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("pulses not well separated: center separation {separation} < {required} (4 x sum of rms widths)")]
    PulsesOverlap { separation: f64, required: f64 },

    #[error("step size too large: {what} = {product:.4} rad exceeds the {limit} rad guard")]
    StepSize {
        what: &'static str,
        product: f64,
        limit: f64,
    },

    #[error("window [{start}, {end}] lies outside the sampled interval [{min}, {max}]")]
    Range { start: f64, end: f64, min: f64, max: f64 },

    #[error("empty window: no samples in [{start}, {end}]")]
    EmptyWindow { start: f64, end: f64 },

    #[error("echo window ends at {window_end} but the simulation stops at t_end = {t_end}")]
    EchoWindowTruncated { window_end: f64, t_end: f64 },

    #[error("non-finite field at slice {slice} (z = {z}), t = {t}")]
    NonFinite { slice: usize, z: f64, t: f64 },

    #[error("detuning span too narrow: only {fraction:.4} of the pulse spectral energy lies inside +/-{half_span} (need 0.99)")]
    SpanTooNarrow { fraction: f64, half_span: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors caused by the numerics rather than by the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonFinite { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
