use std::f64::consts::PI;

use twopulse_core::analytic::{area_theorem_closed_form, efficiency_closed_form};
use twopulse_core::solver::{
    default_dt, propagate_waveform, KickSchedule, PropagationPlan, SolverMode, SolverOptions, DEFAULT_SPAN_FACTOR,
};
use twopulse_core::{propagate, MediumParams, PulseSpec, Sequence, TimeGrid, Waveform};

fn nonlinear(n_z: usize) -> PropagationPlan {
    PropagationPlan {
        n_z,
        kicks: KickSchedule::Nonlinear,
        rotation: None,
        parallel: true,
    }
}

/// Signal σ = 2 µs, rephasing σ = 0.1 µs, t12 = 10 µs, no decay.
fn short_rephasing_run(optical_thickness: f64, area: f64, mode: SolverMode) -> f64 {
    let signal = PulseSpec::gaussian(0.0, 2.0, 0.01).unwrap();
    let rephasing = PulseSpec::gaussian(10.0, 0.1, area).unwrap();
    let seq = Sequence::with_default_end(signal, rephasing, 10.0).unwrap();
    let medium = MediumParams::with_optical_thickness(
        optical_thickness,
        None,
        DEFAULT_SPAN_FACTOR * signal.spectral_rms(),
        601,
    )
    .unwrap();
    let opts = SolverOptions {
        n_z: 50,
        ..SolverOptions::with_mode(mode)
    };
    propagate(&seq, &medium, &opts).unwrap().1.efficiency_peak
}

#[test]
fn full_solver_reproduces_closed_form() {
    for ol in [0.5, 1.0, 2.0] {
        for a in [0.5 * PI, 0.75 * PI, PI] {
            let eta = short_rephasing_run(ol, a, SolverMode::Full);
            let expected = efficiency_closed_form(a, ol);
            assert!(
                (eta / expected - 1.0).abs() < 0.05,
                "αL={ol} A={a}: {eta} vs {expected}"
            );
        }
    }
}

#[test]
fn hybrid_agrees_with_full_for_weak_signal() {
    let full = short_rephasing_run(1.0, 0.75 * PI, SolverMode::Full);
    let hybrid = short_rephasing_run(1.0, 0.75 * PI, SolverMode::Hybrid);
    assert!((hybrid / full - 1.0).abs() < 0.01, "{hybrid} vs {full}");
}

#[test]
fn transmitted_area_follows_area_theorem() {
    let medium = MediumParams::with_optical_thickness(2.0, None, 12.0, 1201).unwrap();
    for a in [0.5 * PI, PI, 1.5 * PI] {
        let p = PulseSpec::gaussian(0.0, 0.5, a).unwrap();
        let grid = TimeGrid::covering(-4.0, 60.0, default_dt(&[&p], &medium)).unwrap();
        let run = propagate_waveform(&Waveform::from_pulses(grid, &[p]), &medium, &nonlinear(40)).unwrap();
        for j in 0..run.field.n_slices() {
            let got = run.field.waveform(j).total_area();
            let want = area_theorem_closed_form(a, run.field.z(j));
            assert!(
                (got / want - 1.0).abs() < 0.02,
                "A={a} z={}: {got} vs {want}",
                run.field.z(j)
            );
        }
    }
}

#[test]
fn inverted_medium_amplifies_probe() {
    let pi = PulseSpec::gaussian(0.0, 0.2, PI).unwrap();
    let probe = PulseSpec::gaussian(60.0, 12.0, 0.001).unwrap();
    let medium = MediumParams::with_optical_thickness(5.0, None, 12.0, 801).unwrap();
    let grid = TimeGrid::covering(-2.0, 130.0, default_dt(&[&pi], &medium)).unwrap();
    let both = propagate_waveform(&Waveform::from_pulses(grid, &[pi, probe]), &medium, &nonlinear(50)).unwrap();
    let alone = propagate_waveform(&Waveform::from_pulses(grid, &[pi]), &medium, &nonlinear(50)).unwrap();
    let diff: Vec<f64> = both
        .field
        .output()
        .values()
        .iter()
        .zip(alone.field.output().values())
        .map(|(a, b)| a - b)
        .collect();
    let (peak, _) = Waveform::new(grid, diff).unwrap().peak_in(10.0, 130.0).unwrap();
    let gain = peak / probe.peak();
    let expected = 2.5f64.exp();
    assert!((gain / expected - 1.0).abs() < 0.10, "{gain} vs {expected}");
}
