//! Closed-form results of the weak-signal theory: retrieval efficiency,
//! pulse-area propagation (McCall–Hahn Area Theorem), penetration depth and
//! the T₂ penalty.
//!
//! Depths are in units of 1/α, so `z` is an optical depth and the Area
//! Theorem reads dA/dz = −½·sin A.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// One point of an efficiency curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyPoint {
    pub area_in: f64,
    pub optical_thickness: f64,
    pub eta: f64,
}

impl EfficiencyPoint {
    pub fn evaluate(area_in: f64, optical_thickness: f64) -> Self {
        Self {
            area_in,
            optical_thickness,
            eta: efficiency_closed_form(area_in, optical_thickness),
        }
    }
}

/// Reduces an area to `[0, 2π)`.
pub fn canonical_area(area: f64) -> f64 {
    let r = area.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Echo efficiency for a rephasing pulse of input area `area_in` in a medium
/// of optical thickness αL:
///
/// η = [2·sinh(αL/2) / (1 + e^{αL}·cot²(A/2))]²
///
/// Evaluated as `sin²` over `sin² + e^{αL}·cos²` so that A ≡ 0 gives the
/// limit value 0 instead of dividing by zero.
pub fn efficiency_closed_form(area_in: f64, optical_thickness: f64) -> f64 {
    let a = canonical_area(area_in);
    let (s, c) = (0.5 * a).sin_cos();
    let (s2, c2) = (s * s, c * c);
    let denom = s2 + optical_thickness.exp() * c2;
    if denom == 0.0 {
        return 0.0;
    }
    let amp = 2.0 * (0.5 * optical_thickness).sinh() * s2 / denom;
    amp * amp
}

/// Efficiency of a perfect π rephasing pulse, [e^{αL/2} − e^{−αL/2}]².
pub fn efficiency_pi(optical_thickness: f64) -> f64 {
    let h = 2.0 * (0.5 * optical_thickness).sinh();
    h * h
}

/// The literal printed expression with numerator `2·sinh(αL)`. Kept only to
/// quantify how far it is from the solver; not a valid efficiency.
pub fn efficiency_printed_numerator(area_in: f64, optical_thickness: f64) -> f64 {
    let a = canonical_area(area_in);
    let (s, c) = (0.5 * a).sin_cos();
    let denom = s * s + optical_thickness.exp() * c * c;
    if denom == 0.0 {
        return 0.0;
    }
    let amp = 2.0 * optical_thickness.sinh() * s * s / denom;
    amp * amp
}

/// Area after propagating to optical depth `z`.
///
/// For A(0) in (0, π): `2·atan(tan(A(0)/2)·e^{−z/2})`, decaying to 0.
/// For A(0) in (π, 2π): the branch continuous from A(0), growing to 2π.
/// Multiples of π are fixed points. Areas outside `[0, 2π]` are handled
/// periodically.
pub fn area_theorem_closed_form(area_in: f64, z: f64) -> f64 {
    let turns = (area_in / TAU).floor();
    let mut base = area_in - turns * TAU;
    if base >= TAU {
        base = 0.0;
    }
    let offset = turns * TAU;
    if base == 0.0 || base == PI {
        return area_in;
    }
    let t0 = (0.5 * base).tan();
    let decayed = 2.0 * (t0 * (-0.5 * z).exp()).atan();
    if base < PI {
        offset + decayed
    } else {
        offset + TAU + decayed
    }
}

/// RK4 integration of dA/dz = −½·sin A from 0 to `z_max`; returns the
/// `n_steps + 1` sampled pairs `(z, A)`.
pub fn area_theorem_ode(area_in: f64, z_max: f64, n_steps: usize) -> Result<Vec<(f64, f64)>> {
    if n_steps < 16 {
        return Err(Error::invalid("n_steps", format!("must be >= 16, got {n_steps}")));
    }
    if !(z_max >= 0.0) {
        return Err(Error::invalid("z_max", format!("must be >= 0, got {z_max}")));
    }
    let f = |a: f64| -0.5 * a.sin();
    let h = z_max / n_steps as f64;
    let mut out = Vec::with_capacity(n_steps + 1);
    let mut a = area_in;
    out.push((0.0, a));
    for i in 1..=n_steps {
        let k1 = f(a);
        let k2 = f(a + 0.5 * h * k1);
        let k3 = f(a + 0.5 * h * k2);
        let k4 = f(a + h * k3);
        a += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.push((i as f64 * h, a));
    }
    Ok(out)
}

/// Depth (units of 1/α) at which a pulse of input area `area_in` has its
/// area reduced by a factor √e. Pulses above π are mapped to their mirror
/// `2π − A`; a π-pulse never decays and gives `f64::INFINITY`.
pub fn penetration_depth(area_in: f64) -> Result<f64> {
    if !(area_in > 0.0 && area_in < TAU) {
        return Err(Error::Domain(format!(
            "penetration depth needs 0 < A < 2π, got {area_in}"
        )));
    }
    let a = if area_in > PI { TAU - area_in } else { area_in };
    if a == PI {
        return Ok(f64::INFINITY);
    }
    let target = a / std::f64::consts::E.sqrt();
    let t0 = (0.5 * a).tan();
    let t1 = (0.5 * target).tan();
    let z = 2.0 * (t0 / t1).ln();
    if z.is_finite() && t0 < 1e12 {
        Ok(z)
    } else {
        penetration_depth_bisect(a, 1e-10)
    }
}

/// Bisection on the closed-form A(z) for the first depth where it falls to
/// `A(0)/√e` (`A(0)` in (0, π)).
pub fn penetration_depth_bisect(area_in: f64, tol: f64) -> Result<f64> {
    if !(area_in > 0.0 && area_in < PI) {
        return Err(Error::Domain(format!("bisection needs 0 < A < π, got {area_in}")));
    }
    let target = area_in / std::f64::consts::E.sqrt();
    let g = |z: f64| area_theorem_closed_form(area_in, z) - target;
    let (mut lo, mut hi) = (0.0, 1.0);
    while g(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Ok(f64::INFINITY);
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Factor `exp(4·t12/T₂)` by which coherence decay divides the echo
/// intensity.
pub fn t2_intensity_factor(t12: f64, t2: f64) -> Result<f64> {
    if !(t12 >= 0.0) {
        return Err(Error::invalid("t12", format!("must be >= 0, got {t12}")));
    }
    if !(t2 > 0.0) {
        return Err(Error::invalid("t2", format!("must be > 0, got {t2}")));
    }
    Ok((4.0 * t12 / t2).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn golden_efficiency_at_thickness_five() {
        assert_abs_diff_eq!(efficiency_pi(5.0), 146.41, epsilon = 0.01);
        assert_abs_diff_eq!(efficiency_closed_form(PI, 5.0), 146.41, epsilon = 0.01);
        assert_eq!(efficiency_pi(0.0), 0.0);
        // (2·sinh 0.5)²
        assert_abs_diff_eq!(efficiency_pi(1.0), 1.0861, epsilon = 1e-4);
    }

    #[test]
    fn zero_area_gives_zero() {
        for ol in [0.0, 0.5, 1.0, 5.0, 20.0] {
            assert_eq!(efficiency_closed_form(0.0, ol), 0.0);
            assert_abs_diff_eq!(efficiency_closed_form(TAU, ol), 0.0, epsilon = 1e-20);
        }
    }

    #[test]
    fn half_pi_at_unit_thickness() {
        // [2 sinh(0.5) / (1 + e)]², evaluated independently of the sin/cos form.
        let direct = (2.0 * 0.5f64.sinh() / (1.0 + 1f64.exp() * (PI / 4.0).tan().powi(-2))).powi(2);
        assert_relative_eq!(efficiency_closed_form(PI / 2.0, 1.0), direct, max_relative = 1e-12);
        assert_abs_diff_eq!(efficiency_closed_form(PI / 2.0, 1.0), 0.0786, epsilon = 1e-4);
    }

    #[test]
    fn printed_numerator_is_far_off() {
        let ratio = efficiency_printed_numerator(PI, 5.0) / efficiency_pi(5.0);
        assert!(ratio > 100.0, "ratio {ratio}");
    }

    #[test]
    fn area_theorem_fixed_points_and_small_area() {
        for z in [0.0, 1.0, 10.0, 100.0] {
            assert_eq!(area_theorem_closed_form(PI, z), PI);
            assert_eq!(area_theorem_closed_form(0.0, z), 0.0);
        }
        assert_abs_diff_eq!(area_theorem_closed_form(0.1, 2.0), 0.1 * (-1f64).exp(), epsilon = 1e-4);
    }

    #[test]
    fn area_theorem_branches() {
        let a = area_theorem_closed_form(1.5 * PI, 2.0);
        assert!(a > 1.5 * PI && a < TAU);
        assert_abs_diff_eq!(area_theorem_closed_form(1.999 * PI, 50.0), TAU, epsilon = 1e-9);
        // periodic beyond 2π
        assert_abs_diff_eq!(
            area_theorem_closed_form(TAU + 0.5, 3.0),
            TAU + area_theorem_closed_form(0.5, 3.0),
            epsilon = 1e-12
        );
    }

    #[test]
    fn ode_oracle() {
        let path = area_theorem_ode(PI, 10.0, 1024).unwrap();
        assert!(path.iter().all(|(_, a)| (a - PI).abs() < 1e-10));
        let up = area_theorem_ode(1.01 * PI, 10.0, 1024).unwrap();
        assert!(up.windows(2).all(|w| w[1].1 > w[0].1));
        assert!(up.last().unwrap().1 < TAU);
        for (z, a) in area_theorem_ode(0.5, 6.0, 1024).unwrap() {
            assert_abs_diff_eq!(a, area_theorem_closed_form(0.5, z), epsilon = 1e-9);
        }
        let (z, a) = *area_theorem_ode(1.9 * PI, 4.0, 1024).unwrap().last().unwrap();
        assert_abs_diff_eq!(a, area_theorem_closed_form(1.9 * PI, z), epsilon = 1e-9);
        assert!(area_theorem_ode(1.0, 1.0, 8).is_err());
    }

    #[test]
    fn penetration_depth_values() {
        assert_relative_eq!(penetration_depth(1e-6).unwrap(), 1.0, max_relative = 1e-6);
        let lp = penetration_depth(0.99 * PI).unwrap();
        assert!(lp >= 7.0);
        assert_abs_diff_eq!(lp, 7.66, epsilon = 0.01);
        assert_eq!(penetration_depth(PI).unwrap(), f64::INFINITY);
        assert!(penetration_depth(0.0).is_err());
        assert!(penetration_depth(TAU).is_err());
        assert!(penetration_depth(-1.0).is_err());
        assert_abs_diff_eq!(
            penetration_depth(1.2).unwrap(),
            penetration_depth_bisect(1.2, 1e-12).unwrap(),
            epsilon = 1e-9
        );
        assert_eq!(
            penetration_depth(1.3 * PI).unwrap(),
            penetration_depth(0.7 * PI).unwrap()
        );
    }

    #[test]
    fn t2_factor() {
        assert_abs_diff_eq!(t2_intensity_factor(25.0, 50.0).unwrap(), 7.389, epsilon = 1e-3);
        assert_eq!(t2_intensity_factor(0.0, 50.0).unwrap(), 1.0);
        assert_abs_diff_eq!(
            t2_intensity_factor(12.5, 50.0).unwrap(),
            std::f64::consts::E,
            epsilon = 1e-12
        );
        assert!(t2_intensity_factor(1.0, 0.0).is_err());
        assert!(t2_intensity_factor(-1.0, 1.0).is_err());
    }
}
