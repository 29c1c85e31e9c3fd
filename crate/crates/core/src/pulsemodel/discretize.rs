//! Time-discretized model: the pump acts pointwise on a grid of temporal
//! modes, giving a diagonal finite Bogoliubov transform that the generic
//! mode reduction can process directly.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::geometry::{PulseGeometry, Profile};
use crate::conditioning::{conditional_state, detection_coeffs, ConditionalState, DetectionCoeffs};
use crate::error::{Error, Result};
use crate::modecore::{mode_reduce, FiniteBogoliubov, ModeReduction, ModeVector};
use crate::numeric::linspace;

#[derive(Debug, Clone)]
pub struct DiscreteModel {
    pub times: Vec<f64>,
    pub dt: f64,
    pub transform: FiniteBogoliubov,
    pub homodyne: ModeVector,
}

/// Discretize a [`Profile::TemporalOnly`] geometry on `points` samples
/// spanning `±8 max(tau, tau_P)`.
pub fn discretize_temporal(geom: &PulseGeometry, points: usize) -> Result<DiscreteModel> {
    geom.validate()?;
    if geom.profile != Profile::TemporalOnly {
        return Err(Error::UnsupportedProfile("temporal discretization needs a uniform transverse profile"));
    }
    if points < 3 {
        return Err(Error::Shape(format!("{points} grid points")));
    }
    let half = 8.0 * geom.tau.max(geom.tau_p);
    let times = linspace(-half, half, points);
    let dt = times[1] - times[0];
    let pump: Vec<f64> = times.iter().map(|&t| geom.qle0 * (-2.0 * t * t / (geom.tau_p * geom.tau_p)).exp()).collect();
    let u: Vec<f64> = pump.iter().map(|x| x.cosh()).collect();
    let v: Vec<f64> = pump.iter().map(|x| x.sinh()).collect();
    let transform = FiniteBogoliubov::diagonal(&u, &v)?;
    let envelope: Vec<f64> = times.iter().map(|&t| (-2.0 * t * t / (geom.tau * geom.tau)).exp()).collect();
    let homodyne = ModeVector::from_real(&envelope)?;
    Ok(DiscreteModel { times, dt, transform, homodyne })
}

impl DiscreteModel {
    pub fn modered(&self) -> Result<ModeReduction> {
        mode_reduce(&self.transform, &self.homodyne)
    }

    /// Monochromatic detection mode at angular frequency `omega`, spread over the grid window.
    pub fn detection_mode(&self, omega: f64) -> ModeVector {
        let n = self.times.len();
        let comps = self.times.iter().map(|&t| C64::from_polar(1.0 / (n as f64).sqrt(), omega * t));
        ModeVector::normalized(nalgebra::DVector::from_iterator(n, comps)).expect("unit-modulus components")
    }

    /// Factor turning the discrete `gamma` into the continuum amplitude per `sqrt(η_c R Ω)`.
    pub fn continuum_scale(&self) -> f64 {
        (self.times.len() as f64 * self.dt).sqrt() / (2.0 * PI)
    }

    pub fn detect(&self, omega: f64) -> Result<(ModeReduction, DetectionCoeffs, ConditionalState)> {
        let mr = self.modered()?;
        let dc = detection_coeffs(&self.transform, &self.homodyne, &mr, &self.detection_mode(omega))?;
        let cs = conditional_state(&dc)?;
        Ok((mr, dc, cs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulsemodel::{FilterChain, NarrowFilter};

    #[test]
    fn matches_series_model() {
        let g = PulseGeometry::default().with_qle0(0.6).with_profile(Profile::TemporalOnly);
        let model = discretize_temporal(&g, 401).unwrap();
        let (mr, dc, cs) = model.detect(0.0).unwrap();
        let fc = FilterChain::default();
        let nf = NarrowFilter::evaluate(&g, &fc).unwrap();
        assert!((mr.eta - nf.modered.eta).abs() < 1e-9);
        assert!((mr.alpha - nf.modered.alpha).abs() < 1e-9);
        assert!((mr.beta - nf.modered.beta).abs() < 1e-9);
        assert!((dc.gamma.re * model.continuum_scale() - nf.gamma_bar / fc.scale().sqrt()).abs() < 1e-9);
        assert!((cs.xi - nf.xi_bar()).abs() < 1e-9);
        assert!((cs.theta - nf.theta_bar()).abs() < 1e-9);
    }

    #[test]
    fn rejects_spatial_profiles() {
        assert!(discretize_temporal(&PulseGeometry::default(), 101).is_err());
    }
}
