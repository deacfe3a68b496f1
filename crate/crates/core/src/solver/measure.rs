use crate::error::{Error, Result};
use crate::field::Waveform;

/// Echo measurement at the output face.
#[derive(Debug, Clone, PartialEq)]
pub struct EchoResult {
    /// `(max|echo| / max|signal|)²`.
    pub efficiency_peak: f64,
    /// `∫echo² / ∫signal²`, echo integrated over the echo window.
    pub efficiency_energy: f64,
    /// Earliest time of the echo maximum inside the echo window.
    pub echo_peak_time: f64,
    /// Signal-induced output-face waveform: the raw output in instantaneous
    /// mode, output minus the rephasing-only response otherwise.
    pub echo_waveform: Waveform,
    pub echo_window: (f64, f64),
    /// Area of the transmitted rephasing pulse, integrated from midway
    /// between the pulses to the end of the record (the marched rotation area
    /// in instantaneous mode).
    pub rephasing_out_area: Option<f64>,
    /// rms duration of the transmitted rephasing pulse (not defined in
    /// instantaneous mode).
    pub rephasing_out_rms: Option<f64>,
}

/// Compares the echo inside `echo_window` of `output` with the input signal.
/// A zero signal gives zero efficiencies.
pub fn measure_efficiency(input_signal: &Waveform, output: &Waveform, echo_window: (f64, f64)) -> Result<EchoResult> {
    let (start, end) = echo_window;
    let idx = output.grid().index_range(start, end);
    if !(start <= end) || idx.is_empty() {
        return Err(Error::EmptyWindow { start, end });
    }
    let (echo_peak, echo_peak_time) = output.peak_in(start, end)?;
    let signal_peak = input_signal.max_abs();
    let g = input_signal.grid();
    let signal_energy = input_signal.energy(g.start(), g.end())?;
    let echo_energy = output.energy(start, end)?;
    let (efficiency_peak, efficiency_energy) = if signal_peak == 0.0 {
        (0.0, 0.0)
    } else {
        let r = echo_peak / signal_peak;
        (r * r, echo_energy / signal_energy)
    };
    Ok(EchoResult {
        efficiency_peak,
        efficiency_energy,
        echo_peak_time,
        echo_waveform: output.clone(),
        echo_window,
        rephasing_out_area: None,
        rephasing_out_rms: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::TimeGrid;
    use crate::pulse::PulseSpec;
    use approx::assert_abs_diff_eq;

    fn setup() -> (Waveform, Waveform) {
        let grid = TimeGrid::covering(-10.0, 60.0, 0.01).unwrap();
        let s = PulseSpec::gaussian(0.0, 2.0, 0.1).unwrap();
        let input = Waveform::from_pulses(grid, &[s]);
        // same pulse moved into the echo window
        let output = Waveform::from_pulses(grid, &[s.with_center(50.0).unwrap()]);
        (input, output)
    }

    #[test]
    fn copied_signal_has_unit_efficiency() {
        let (input, output) = setup();
        let r = measure_efficiency(&input, &output, (38.0, 60.0)).unwrap();
        assert_abs_diff_eq!(r.efficiency_peak, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.efficiency_energy, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(r.echo_peak_time, 50.0, epsilon = 1e-9);
    }

    #[test]
    fn half_amplitude_quarter_efficiency() {
        let (input, output) = setup();
        let r = measure_efficiency(&input, &output.scaled(0.5), (44.0, 60.0)).unwrap();
        assert_abs_diff_eq!(r.efficiency_peak, 0.25, epsilon = 1e-12);
        let neg = measure_efficiency(&input, &output.scaled(-0.5), (44.0, 60.0)).unwrap();
        assert_abs_diff_eq!(neg.efficiency_peak, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn zero_signal_and_empty_window() {
        let (input, output) = setup();
        let r = measure_efficiency(&input.scaled(0.0), &output, (44.0, 60.0)).unwrap();
        assert_eq!(r.efficiency_peak, 0.0);
        assert!(matches!(
            measure_efficiency(&input, &output, (50.001, 50.002)),
            Err(Error::EmptyWindow { .. })
        ));
    }
}
