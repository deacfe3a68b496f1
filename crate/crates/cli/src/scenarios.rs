//! Scenario runners. Each returns one or more tables; sweep points run on the
//! current rayon pool and come back in input order.

use std::f64::consts::PI;

use rayon::prelude::*;
use twopulse_core::analytic::{efficiency_closed_form, penetration_depth};
use twopulse_core::dicke::{brute_force_emission_strength_exact, echo_snr, MAX_BRUTE_FORCE_ATOMS};
use twopulse_core::solver::{beer_lambert_calibration, default_medium, SolverMode, SolverOptions};
use twopulse_core::{propagate, MediumParams, PulseSpec};

use crate::config::{CalibrateConfig, DickeConfig, EfficiencyCurveConfig, PenetrationConfig, SimulateConfig};
use crate::error::{CliError, Result};
use crate::table::Table;

pub const EFFICIENCY_COLUMNS: [&str; 4] = ["optical_thickness", "area_in_rad", "area_in_pi", "eta_analytic"];
pub const EFFICIENCY_SIMULATED_COLUMNS: [&str; 5] = [
    "optical_thickness",
    "area_in_rad",
    "area_in_pi",
    "eta_analytic",
    "eta_simulated",
];
pub const PENETRATION_COLUMNS: [&str; 3] = ["area_in_rad", "area_in_pi", "penetration_depth_inv_alpha"];
pub const WAVEFORM_COLUMNS: [&str; 4] = ["t_us", "omega_in_rad_per_us", "omega_out_rad_per_us", "echo_rad_per_us"];
pub const SUMMARY_COLUMNS: [&str; 9] = [
    "optical_thickness",
    "efficiency_peak",
    "efficiency_energy",
    "echo_peak_time_us",
    "echo_window_start_us",
    "echo_window_end_us",
    "rephasing_in_rms_us",
    "rephasing_out_rms_us",
    "rephasing_out_area_rad",
];
pub const DICKE_COLUMNS: [&str; 7] = [
    "n_atoms",
    "strength_stored",
    "strength_empty",
    "ratio",
    "snr",
    "brute_force_stored",
    "brute_force_empty",
];
pub const CALIBRATE_COLUMNS: [&str; 3] = ["optical_thickness", "expected_amplitude_ratio", "relative_error"];

fn check_nonempty<T>(items: &[T], what: &str) -> Result<()> {
    if items.is_empty() {
        return Err(CliError::validation(format!("{what} must not be empty")));
    }
    Ok(())
}

/// Analytic efficiency curve, optionally with a solver column.
pub fn efficiency_curve(cfg: &EfficiencyCurveConfig) -> Result<Table> {
    check_nonempty(&cfg.optical_thickness, "optical_thickness")?;
    let areas = cfg.area_pi.values()?;
    if let Some(bad) = cfg.optical_thickness.iter().find(|ol| !(**ol >= 0.0 && ol.is_finite())) {
        return Err(CliError::validation(format!(
            "optical_thickness must be >= 0, got {bad}"
        )));
    }
    let points: Vec<(f64, f64)> = cfg
        .optical_thickness
        .iter()
        .flat_map(|&ol| areas.iter().map(move |&a| (ol, a)))
        .collect();
    if !cfg.simulated {
        let mut t = Table::new(&EFFICIENCY_COLUMNS);
        for (ol, a) in points {
            t.push(vec![ol, a * PI, a, efficiency_closed_form(a * PI, ol)]);
        }
        return Ok(t);
    }
    let seq = cfg.sequence.unwrap_or_default().build()?;
    let opts = match cfg.solver {
        Some(s) => s.build()?,
        None => SolverOptions::with_mode(SolverMode::InstantaneousRephasing),
    };
    let simulated: Vec<f64> = points
        .par_iter()
        .map(|&(ol, a)| -> Result<f64> {
            let medium = default_medium(ol, cfg.t2_us, seq.signal())?;
            let s = seq.with_rephasing_area(a * PI)?;
            Ok(propagate(&s, &medium, &opts)?.1.efficiency_peak)
        })
        .collect::<Result<_>>()?;
    let mut t = Table::new(&EFFICIENCY_SIMULATED_COLUMNS);
    for ((ol, a), eta) in points.into_iter().zip(simulated) {
        t.push(vec![ol, a * PI, a, efficiency_closed_form(a * PI, ol), eta]);
    }
    Ok(t)
}

/// Penetration depth over (0, 2π); π itself gives `inf`.
pub fn penetration(cfg: &PenetrationConfig) -> Result<Table> {
    let mut areas = cfg.area_pi.values()?;
    if let Some(r) = cfg.refine_area_pi {
        areas.extend(r.values()?);
    }
    areas.sort_by(f64::total_cmp);
    areas.dedup();
    let mut t = Table::new(&PENETRATION_COLUMNS);
    for a in areas {
        t.push(vec![a * PI, a, penetration_depth(a * PI)?]);
    }
    Ok(t)
}

/// Output of [`simulate`]: the waveform table and a one-row summary.
pub struct Simulation {
    pub waveforms: Table,
    pub summary: Table,
}

pub fn simulate(cfg: &SimulateConfig) -> Result<Simulation> {
    let seq = cfg.sequence.build()?;
    let medium = cfg.medium.build(seq.signal())?;
    let opts = cfg.solver.build()?;
    let (field, echo) = propagate(&seq, &medium, &opts)?;
    let (input, output) = (field.input(), field.output());
    let mut waveforms = Table::new(&WAVEFORM_COLUMNS);
    for (i, t) in field.times().times().enumerate() {
        waveforms.push(vec![
            t,
            input.values()[i],
            output.values()[i],
            echo.echo_waveform.values()[i],
        ]);
    }
    let mut summary = Table::new(&SUMMARY_COLUMNS);
    summary.push(vec![
        medium.optical_thickness(),
        echo.efficiency_peak,
        echo.efficiency_energy,
        echo.echo_peak_time,
        echo.echo_window.0,
        echo.echo_window.1,
        seq.rephasing().rms_width(),
        echo.rephasing_out_rms.unwrap_or(f64::NAN),
        echo.rephasing_out_area.unwrap_or(f64::NAN),
    ]);
    Ok(Simulation { waveforms, summary })
}

/// Collective emission strengths with and without a stored excitation.
pub fn dicke_table(cfg: &DickeConfig) -> Result<Table> {
    check_nonempty(&cfg.n_atoms, "n_atoms")?;
    if cfg.brute_force_max > MAX_BRUTE_FORCE_ATOMS {
        return Err(CliError::validation(format!(
            "brute_force_max must be <= {MAX_BRUTE_FORCE_ATOMS}, got {}",
            cfg.brute_force_max
        )));
    }
    let rows: Vec<Vec<f64>> = cfg
        .n_atoms
        .par_iter()
        .map(|&n| -> Result<Vec<f64>> {
            let snr = echo_snr(n)?;
            let exact = |k| -> Result<f64> {
                let (sum, norm) = brute_force_emission_strength_exact(n, k)?;
                Ok(sum as f64 / norm as f64)
            };
            let (bs, be) = if n <= cfg.brute_force_max {
                (exact(n - 1)?, exact(n)?)
            } else {
                (f64::NAN, f64::NAN)
            };
            Ok(vec![
                n as f64,
                snr.signal_strength as f64,
                snr.noise_strength as f64,
                snr.ratio,
                snr.snr,
                bs,
                be,
            ])
        })
        .collect::<Result<_>>()?;
    let mut t = Table::new(&DICKE_COLUMNS);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

/// Beer's-law self-test of the solver at each thickness.
pub fn calibrate(cfg: &CalibrateConfig) -> Result<Table> {
    check_nonempty(&cfg.optical_thickness, "optical_thickness")?;
    let signal = PulseSpec::gaussian(0.0, cfg.signal_rms_us, 0.01)?;
    let mut opts = SolverOptions::default();
    if let Some(n_z) = cfg.n_z {
        opts.n_z = n_z;
    }
    let errors: Vec<f64> = cfg
        .optical_thickness
        .par_iter()
        .map(|&ol| -> Result<f64> {
            let base = default_medium(ol, None, &signal)?;
            let medium = MediumParams::with_optical_thickness(
                ol,
                None,
                cfg.detuning_half_span_rad_per_us.unwrap_or(base.detuning_half_span()),
                cfg.n_detuning.unwrap_or(base.n_detuning()),
            )?;
            Ok(beer_lambert_calibration(&medium, &opts)?)
        })
        .collect::<Result<_>>()?;
    let mut t = Table::new(&CALIBRATE_COLUMNS);
    for (&ol, err) in cfg.optical_thickness.iter().zip(errors) {
        t.push(vec![ol, (-0.5 * ol).exp(), err]);
    }
    Ok(t)
}
