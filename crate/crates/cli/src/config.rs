//! Scenario configuration files.
//!
//! A file holds one optional section per subcommand. TOML is the default;
//! files ending in `.json` are read as JSON with the same layout. Unknown keys
//! are rejected at every level. Areas are given in units of π, times in µs,
//! detunings in rad/µs.
//!
//! ```toml
//! [simulate.sequence]
//! t12_us = 25.0
//!
//! [simulate.sequence.signal]
//! rms_us = 2.1
//! area_pi = 0.09
//!
//! [simulate.sequence.rephasing]
//! rms_us = 0.8
//! area_pi = 1.1
//!
//! [simulate.medium]
//! alpha_per_mm = 1.25
//! length_mm = 4.0
//! t2_us = 50.0
//!
//! [simulate.solver]
//! mode = "full"
//! n_z = 200
//! ```

use std::f64::consts::PI;
use std::path::Path;

use serde::Deserialize;
use twopulse_core::presets;
use twopulse_core::solver::{self, SolverMode, SolverOptions};
use twopulse_core::{MediumParams, PulseShape, PulseSpec, Sequence};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub efficiency_curve: Option<EfficiencyCurveConfig>,
    pub penetration: Option<PenetrationConfig>,
    pub simulate: Option<SimulateConfig>,
    pub dicke: Option<DickeConfig>,
    pub calibrate: Option<CalibrateConfig>,
}

impl ConfigFile {
    pub fn parse(text: &str, json: bool) -> Result<Self> {
        if json {
            serde_json::from_str(text).map_err(|e| CliError::validation(format!("config: {e}")))
        } else {
            toml::from_str(text).map_err(|e| CliError::validation(format!("config: {e}")))
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
        let json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        Self::parse(&text, json)
    }
}

/// Evenly spaced grid from `start` to `end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl Range {
    pub fn values(&self) -> Result<Vec<f64>> {
        if !(self.start.is_finite() && self.end.is_finite()) || self.points == 0 {
            return Err(CliError::validation(format!("invalid range {self:?}")));
        }
        if self.points == 1 {
            return Ok(vec![self.start]);
        }
        let step = (self.end - self.start) / (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.end
                } else {
                    self.start + i as f64 * step
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeConfig {
    #[default]
    Gaussian,
    Rectangular,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseConfig {
    #[serde(default)]
    pub shape: ShapeConfig,
    pub rms_us: f64,
    pub area_pi: f64,
}

impl PulseConfig {
    fn build(&self, center: f64) -> Result<PulseSpec> {
        let shape = match self.shape {
            ShapeConfig::Gaussian => PulseShape::Gaussian,
            ShapeConfig::Rectangular => PulseShape::Rectangular,
        };
        Ok(PulseSpec::new(
            shape,
            center,
            self.rms_us,
            twopulse_core::Amplitude::Area(self.area_pi * PI),
        )?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceConfig {
    pub signal: PulseConfig,
    pub rephasing: PulseConfig,
    pub t12_us: f64,
    #[serde(default)]
    pub t_end_us: Option<f64>,
}

impl Default for SequenceConfig {
    fn default() -> Self {
        Self {
            signal: PulseConfig {
                shape: ShapeConfig::Gaussian,
                rms_us: presets::SIGNAL_RMS_US,
                area_pi: presets::SIGNAL_AREA_PI,
            },
            rephasing: PulseConfig {
                shape: ShapeConfig::Gaussian,
                rms_us: presets::REPHASING_RMS_US,
                area_pi: presets::REPHASING_AREA_PI,
            },
            t12_us: presets::T12_US,
            t_end_us: None,
        }
    }
}

impl SequenceConfig {
    pub fn build(&self) -> Result<Sequence> {
        let signal = self.signal.build(0.0)?;
        let rephasing = self.rephasing.build(self.t12_us)?;
        Ok(match self.t_end_us {
            Some(t_end) => Sequence::new(signal, rephasing, self.t12_us, t_end)?,
            None => Sequence::with_default_end(signal, rephasing, self.t12_us)?,
        })
    }
}

/// Medium thickness either as αL directly or as α (1/mm) times L (mm).
#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumConfig {
    pub optical_thickness: Option<f64>,
    pub alpha_per_mm: Option<f64>,
    pub length_mm: Option<f64>,
    pub t2_us: Option<f64>,
    pub detuning_half_span_rad_per_us: Option<f64>,
    pub n_detuning: Option<usize>,
}

impl MediumConfig {
    pub fn optical_thickness(&self) -> Result<f64> {
        match (self.optical_thickness, self.alpha_per_mm, self.length_mm) {
            (Some(ol), None, None) => Ok(ol),
            (None, Some(a), Some(l)) => {
                if !(a > 0.0 && l >= 0.0) {
                    return Err(CliError::validation(format!(
                        "alpha_per_mm must be > 0 and length_mm >= 0, got {a} and {l}"
                    )));
                }
                Ok(a * l)
            }
            (None, None, None) => Err(CliError::validation(
                "medium needs optical_thickness or alpha_per_mm with length_mm",
            )),
            _ => Err(CliError::validation(
                "give either optical_thickness or both alpha_per_mm and length_mm",
            )),
        }
    }

    /// Medium on a detuning grid sized for `signal` unless overridden.
    pub fn build(&self, signal: &PulseSpec) -> Result<MediumParams> {
        let ol = self.optical_thickness()?;
        let span = self
            .detuning_half_span_rad_per_us
            .unwrap_or(solver::DEFAULT_SPAN_FACTOR * signal.spectral_rms());
        let n = self.n_detuning.unwrap_or(solver::DEFAULT_N_DETUNING);
        Ok(MediumParams::with_optical_thickness(ol, self.t2_us, span, n)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeConfig {
    #[default]
    Full,
    InstantaneousRephasing,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    #[serde(default)]
    pub mode: ModeConfig,
    pub n_z: Option<usize>,
    pub dt_us: Option<f64>,
    pub echo_window_us: Option<[f64; 2]>,
}

impl SolverConfig {
    pub fn build(&self) -> Result<SolverOptions> {
        let mode = match self.mode {
            ModeConfig::Full => SolverMode::Full,
            ModeConfig::InstantaneousRephasing => SolverMode::InstantaneousRephasing,
            ModeConfig::Hybrid => SolverMode::Hybrid,
        };
        let opts = SolverOptions {
            mode,
            n_z: self.n_z.unwrap_or(solver::DEFAULT_N_Z),
            dt: self.dt_us,
            echo_window: self.echo_window_us.map(|[a, b]| (a, b)),
            parallel: true,
        };
        opts.validate()?;
        Ok(opts)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EfficiencyCurveConfig {
    pub optical_thickness: Vec<f64>,
    pub area_pi: Range,
    /// Adds a solver column (one propagation per row).
    #[serde(default)]
    pub simulated: bool,
    #[serde(default)]
    pub sequence: Option<SequenceConfig>,
    #[serde(default)]
    pub t2_us: Option<f64>,
    #[serde(default)]
    pub solver: Option<SolverConfig>,
}

impl Default for EfficiencyCurveConfig {
    fn default() -> Self {
        Self {
            optical_thickness: presets::FIG2_THICKNESSES.to_vec(),
            area_pi: Range {
                start: 0.0,
                end: 2.0,
                points: 201,
            },
            simulated: false,
            sequence: None,
            t2_us: None,
            solver: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PenetrationConfig {
    pub area_pi: Range,
    /// Extra points merged into the curve, typically close to π.
    #[serde(default)]
    pub refine_area_pi: Option<Range>,
}

impl Default for PenetrationConfig {
    fn default() -> Self {
        let range = |(start, end, points): (f64, f64, usize)| Range { start, end, points };
        Self {
            area_pi: range(presets::FIG3_AREA_PI),
            refine_area_pi: Some(range(presets::FIG3_INSET_AREA_PI)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    #[serde(default)]
    pub sequence: SequenceConfig,
    pub medium: MediumConfig,
    #[serde(default)]
    pub solver: SolverConfig,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        Self {
            sequence: SequenceConfig::default(),
            medium: MediumConfig {
                optical_thickness: Some(presets::OPTICAL_THICKNESS),
                t2_us: Some(presets::T2_US),
                ..MediumConfig::default()
            },
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DickeConfig {
    pub n_atoms: Vec<usize>,
    /// Largest N that also gets brute-force columns.
    #[serde(default = "default_brute_force_max")]
    pub brute_force_max: usize,
}

fn default_brute_force_max() -> usize {
    12
}

impl Default for DickeConfig {
    fn default() -> Self {
        Self {
            n_atoms: (2..=12).chain([20, 50, 100, 1000, 10_000]).collect(),
            brute_force_max: default_brute_force_max(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrateConfig {
    pub optical_thickness: Vec<f64>,
    /// Signal whose bandwidth sets the default detuning span.
    #[serde(default = "default_signal_rms")]
    pub signal_rms_us: f64,
    #[serde(default)]
    pub detuning_half_span_rad_per_us: Option<f64>,
    #[serde(default)]
    pub n_detuning: Option<usize>,
    #[serde(default)]
    pub n_z: Option<usize>,
}

fn default_signal_rms() -> f64 {
    presets::SIGNAL_RMS_US
}

impl Default for CalibrateConfig {
    fn default() -> Self {
        Self {
            optical_thickness: vec![0.0, 1.0, 2.0, 5.0],
            signal_rms_us: default_signal_rms(),
            detuning_half_span_rad_per_us: None,
            n_detuning: None,
            n_z: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// Efficiency against rephasing area for αL in {0.5, 1, 2, 5, 10}.
    #[value(name = "paper-fig2")]
    Fig2,
    /// Penetration depth against rephasing area.
    #[value(name = "paper-fig3")]
    Fig3,
    /// Full simulation of the 1.1π sequence at αL = 5 with T₂ = 50 µs.
    #[value(name = "paper-fig4")]
    Fig4,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::Fig2 => "paper-fig2",
            Preset::Fig3 => "paper-fig3",
            Preset::Fig4 => "paper-fig4",
        }
    }
}
