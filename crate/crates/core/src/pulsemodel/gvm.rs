//! Effective pump profile under group-velocity walk-off: the temporal pump
//! envelope convolved twice with a unit-area rectangular gate of duration
//! `tau_g`, then refitted by a gaussian.

use super::geometry::PulseGeometry;
use crate::error::{ensure, Result};
use crate::numeric::{golden_section, integrate, linspace, QuadOptions};

const GRID_POINTS: usize = 1201;

#[derive(Debug, Clone, PartialEq)]
pub struct EffectivePump {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// Duration of the best gaussian `a exp(-2t²/τ²)` fit.
    pub fitted_tau_p: f64,
    pub fitted_amplitude: f64,
    /// `‖F - fit‖ / ‖F‖` over the grid.
    pub residual: f64,
}

impl EffectivePump {
    /// Trapezoidal area under the sampled profile.
    pub fn area(&self) -> f64 {
        let dt = self.times[1] - self.times[0];
        let n = self.values.len();
        dt * (self.values.iter().sum::<f64>() - 0.5 * (self.values[0] + self.values[n - 1]))
    }
}

fn gaussian(t: f64, tau: f64) -> f64 {
    (-2.0 * t * t / (tau * tau)).exp()
}

/// Pump envelope `exp(-2t²/τ_P²)` smeared by the walk-off gate.
pub fn effective_pump(geom: &PulseGeometry) -> Result<EffectivePump> {
    geom.validate()?;
    let (tau_p, tau_g) = (geom.tau_p, geom.tau_g);
    let half = 6.0 * (tau_p + tau_g);
    let times = linspace(-half, half, GRID_POINTS);
    if tau_g == 0.0 {
        let values = times.iter().map(|&t| gaussian(t, tau_p)).collect();
        return Ok(EffectivePump { times, values, fitted_tau_p: tau_p, fitted_amplitude: 1.0, residual: 0.0 });
    }

    // two unit gates convolve to a unit-area triangle on [-tau_g, tau_g]
    let opts = QuadOptions::new(1e-14, 1e-13);
    let triangle = |s: f64| (tau_g - s.abs()) / (tau_g * tau_g);
    let values = times
        .iter()
        .map(|&t| {
            let f = |s: f64| gaussian(t - s, tau_p) * triangle(s);
            Ok(integrate(f, -tau_g, 0.0, &opts)?.value + integrate(f, 0.0, tau_g, &opts)?.value)
        })
        .collect::<Result<Vec<f64>>>()?;

    let norm2: f64 = values.iter().map(|v| v * v).sum();
    let fit = |tau: f64| {
        let shape: Vec<f64> = times.iter().map(|&t| gaussian(t, tau)).collect();
        let amplitude = dot(&values, &shape) / dot(&shape, &shape);
        let resid: f64 = values.iter().zip(&shape).map(|(v, g)| (v - amplitude * g).powi(2)).sum();
        (amplitude, (resid / norm2).sqrt())
    };
    let best = golden_section(|tau| fit(tau).1, 0.5 * tau_p, 2.0 * (tau_p + tau_g), 1e-9 * tau_p)?;
    let (fitted_amplitude, residual) = fit(best.x);
    ensure(values.iter().all(|&v| v >= 0.0), "F_P", values.iter().cloned().fold(0.0, f64::min), "must be >= 0")?;
    Ok(EffectivePump { times, values, fitted_tau_p: best.x, fitted_amplitude, residual })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn no_walk_off_is_identity() {
        let g = PulseGeometry { tau_g: 0.0, ..PulseGeometry::default() };
        let e = effective_pump(&g).unwrap();
        assert_eq!(e.residual, 0.0);
        assert_eq!(e.fitted_tau_p, g.tau_p);
        for (&t, &v) in e.times.iter().zip(&e.values) {
            assert_eq!(v, gaussian(t, g.tau_p));
        }
    }

    #[test]
    fn area_is_conserved() {
        let g = PulseGeometry::shg_preset();
        let e = effective_pump(&g).unwrap();
        let expected = g.tau_p * (PI / 2.0).sqrt();
        assert!((e.area() - expected).abs() < 1e-10 * expected, "{} vs {expected}", e.area());
    }

    #[test]
    fn symmetric_about_origin() {
        let e = effective_pump(&PulseGeometry::shg_preset()).unwrap();
        let n = e.values.len();
        for i in 0..n / 2 {
            assert!((e.values[i] - e.values[n - 1 - i]).abs() < 1e-14);
        }
    }

    #[test]
    fn walk_off_broadens_to_about_the_homodyne_duration() {
        let g = PulseGeometry::shg_preset();
        let e = effective_pump(&g).unwrap();
        assert!(((e.fitted_tau_p - g.tau) / g.tau).abs() < 0.1, "{}", e.fitted_tau_p);
        assert!(e.residual < 0.05);
    }
}
