use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::pulsemodel::{series_tables, spatial_factor, MomentKind, Profile, PulseGeometry, DEFAULT_SERIES_TOL};

/// `amplitude * exp(-rate t²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTerm {
    pub amplitude: f64,
    pub rate: f64,
}

impl GaussianTerm {
    pub fn variance(&self) -> f64 {
        0.5 / self.rate
    }

    pub fn value(&self, t: f64) -> f64 {
        self.amplitude * (-self.rate * t * t).exp()
    }

    /// `∫ f(t) e^{-iωt} dt`, real for an even term.
    pub fn fourier(&self, omega: f64) -> f64 {
        self.amplitude * (PI / self.rate).sqrt() * (-omega * omega / (4.0 * self.rate)).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelTag {
    /// Transform of `e_h u v φ_s`, weighted by `c_m`.
    Gamma,
    /// Transform of `e_h v² φ_s`, weighted by `d_m`.
    Delta2,
}

/// Real even time-domain kernel, a sum of gaussians with the transverse
/// overlaps already folded into the amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeKernel {
    pub terms: Vec<GaussianTerm>,
    pub tag: KernelTag,
}

impl TimeKernel {
    pub fn value(&self, t: f64) -> f64 {
        self.terms.iter().map(|g| g.value(t)).sum()
    }

    pub fn fourier(&self, omega: f64) -> f64 {
        self.terms.iter().map(|g| g.fourier(omega)).sum()
    }

    /// `∫ f(t) dt`.
    pub fn integral(&self) -> f64 {
        self.fourier(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|g| g.amplitude == 0.0)
    }
}

/// The `γ` and `δ₂` kernels of a geometry, one gaussian per series order.
pub fn time_kernels(geom: &PulseGeometry) -> Result<(TimeKernel, TimeKernel)> {
    if geom.profile == Profile::Uniform {
        return Err(Error::UnsupportedProfile("spectral filtering needs a pulsed temporal profile"));
    }
    let tables = series_tables(geom, DEFAULT_SERIES_TOL)?;
    let e_t0 = (2.0 / (PI.sqrt() * geom.tau)).sqrt();
    let build = |coefs: &[f64], tag| {
        let terms = coefs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(m, &c)| GaussianTerm {
                amplitude: c * spatial_factor(geom, MomentKind::R, m) * e_t0,
                rate: 2.0 / (geom.tau * geom.tau) + 2.0 * m as f64 / (geom.tau_p * geom.tau_p),
            })
            .collect();
        TimeKernel { terms, tag }
    };
    Ok((build(&tables.c, KernelTag::Gamma), build(&tables.d, KernelTag::Delta2)))
}
