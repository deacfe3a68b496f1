//! Ensemble kernel: drives every detuning class of one slice through the
//! whole time record and returns the macroscopic source −(1/2π)·∫v dΔ.
//!
//! Each time step is a kick followed by a drift:
//! - kick at `t_i`: rotation of (v, w) by `Ω_i·dt` about the u-axis, or its
//!   linearization `v -= w·Ω_i·dt` with w frozen;
//! - drift to `t_{i+1}`: exact precession `u + iv -> e^{iΔ·dt}(u + iv)`, with
//!   the T₂ factor `e^{−dt/T₂}` folded into the phasor.
//!
//! The coherence sampled at `t_i` is the mean of the pre- and post-kick
//! values. Precession is exact, so the step only has to resolve the field,
//! not the detuning span.

use std::f64::consts::PI;

use crate::medium::MediumParams;
use crate::par;

const CHUNK: usize = 64;

struct Chunk {
    rot_re: Vec<f64>,
    rot_im: Vec<f64>,
    /// Quadrature weight / (2π) / 2 (the 1/2 averages pre- and post-kick v).
    weight: Vec<f64>,
}

pub(crate) struct Ensemble {
    chunks: Vec<Chunk>,
}

/// Linear rephasing applied at one time index: `u + iv -> k·(u − iv)` with
/// `k = (1 − cos A)/2`, and `w -> −cos A`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RephaseEvent {
    pub index: usize,
    pub area: f64,
}

pub(crate) struct SliceDrive<'a> {
    pub omega: &'a [f64],
    pub dt: f64,
    /// Per-step switch between the full rotation and the linear kick.
    pub nonlinear: &'a [bool],
    pub rephase: Option<RephaseEvent>,
}

impl Ensemble {
    pub fn new(medium: &MediumParams, dt: f64) -> Self {
        let decay = medium.t2().map_or(1.0, |t2| (-dt / t2).exp());
        let detunings = medium.detunings();
        let weights = medium.detuning_weights();
        let chunks = detunings
            .chunks(CHUNK)
            .zip(weights.chunks(CHUNK))
            .map(|(d, w)| Chunk {
                rot_re: d.iter().map(|d| decay * (d * dt).cos()).collect(),
                rot_im: d.iter().map(|d| decay * (d * dt).sin()).collect(),
                weight: w.iter().map(|w| 0.5 * w / (2.0 * PI)).collect(),
            })
            .collect();
        Self { chunks }
    }

    /// Source term `∂zΩ` (α = 1) at every time sample.
    pub fn source(&self, drive: &SliceDrive<'_>, parallel: bool) -> Vec<f64> {
        let partials = par::map_ordered(&self.chunks, parallel, |c| c.run(drive).0);
        let mut total = vec![0.0; drive.omega.len()];
        for p in partials {
            for (t, x) in total.iter_mut().zip(p) {
                *t -= x;
            }
        }
        total
    }

    /// Final Bloch vectors (at `t_last + dt`) of every class, in detuning order.
    #[cfg(test)]
    pub fn final_states(&self, drive: &SliceDrive<'_>) -> Vec<crate::bloch::BlochVector> {
        self.chunks.iter().flat_map(|c| c.run(drive).1).collect()
    }
}

impl Chunk {
    fn run(&self, drive: &SliceDrive<'_>) -> (Vec<f64>, Vec<crate::bloch::BlochVector>) {
        let n = self.weight.len();
        let (re, im, wt) = (&self.rot_re[..n], &self.rot_im[..n], &self.weight[..n]);
        let mut u = vec![0.0; n];
        let mut v = vec![0.0; n];
        let mut w = vec![-1.0; n];
        let mut out = vec![0.0; drive.omega.len()];
        for (i, (&om, &nonlinear)) in drive.omega.iter().zip(drive.nonlinear).enumerate() {
            if let Some(ev) = drive.rephase {
                if ev.index == i {
                    let (s, c) = (0.5 * (1.0 - ev.area.cos()), ev.area.cos());
                    for k in 0..n {
                        u[k] *= s;
                        v[k] *= -s;
                        w[k] = -c;
                    }
                }
            }
            let theta = om * drive.dt;
            let mut acc = 0.0;
            if nonlinear {
                let (s, c) = theta.sin_cos();
                for k in 0..n {
                    let vp = v[k];
                    let vn = vp * c - w[k] * s;
                    w[k] = w[k] * c + vp * s;
                    acc += wt[k] * (vp + vn);
                    let un = u[k] * re[k] - vn * im[k];
                    v[k] = u[k] * im[k] + vn * re[k];
                    u[k] = un;
                }
            } else {
                for k in 0..n {
                    let vp = v[k];
                    let vn = vp - w[k] * theta;
                    acc += wt[k] * (vp + vn);
                    let un = u[k] * re[k] - vn * im[k];
                    v[k] = u[k] * im[k] + vn * re[k];
                    u[k] = un;
                }
            }
            out[i] = acc;
        }
        let states = (0..n)
            .map(|k| crate::bloch::BlochVector::new(u[k], v[k], w[k]))
            .collect();
        (out, states)
    }
}
