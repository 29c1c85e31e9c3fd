//! Direct numerical integration of the spatio-temporal overlaps, used to
//! check the closed-form moments and the series sums.

use std::f64::consts::PI;

use super::geometry::{FilterChain, PulseGeometry, Profile};
use crate::error::{Error, Result};
use crate::numeric::{integrate, integrate_2d, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleQuantity {
    Pm,
    Qm,
    Rm,
    Eta2,
    EtaAlpha,
    Ptot,
    GammaBar,
    DeltaBar,
}

struct Fields<'a>(&'a PulseGeometry);

impl Fields<'_> {
    fn homodyne_space(&self, rho: f64) -> f64 {
        let w = self.0.w;
        (2.0 / (PI * w * w)).sqrt() * (-rho * rho / (w * w)).exp()
    }

    fn fiber_space(&self, rho: f64) -> f64 {
        let wf = self.0.w_f;
        (2.0 / (PI * wf * wf)).sqrt() * (-rho * rho / (wf * wf)).exp()
    }

    fn pump_space(&self, rho: f64) -> f64 {
        (-rho * rho / (self.0.w_p * self.0.w_p)).exp()
    }

    fn homodyne_time(&self, t: f64) -> f64 {
        let tau = self.0.tau;
        (2.0 / (PI.sqrt() * tau)).sqrt() * (-2.0 * t * t / (tau * tau)).exp()
    }

    fn pump_time(&self, t: f64) -> f64 {
        (-2.0 * t * t / (self.0.tau_p * self.0.tau_p)).exp()
    }

    fn rho_max(&self) -> f64 {
        8.0 * self.0.w.max(self.0.w_f)
    }

    fn t_max(&self) -> f64 {
        8.0 * self.0.tau.max(self.0.tau_p)
    }
}

/// Which transverse and temporal field products enter an overlap.
#[derive(Clone, Copy)]
enum Overlap {
    HomodyneSquared,
    FiberSquared,
    Cross,
}

impl Overlap {
    fn space(self, f: &Fields, rho: f64) -> f64 {
        match self {
            Overlap::HomodyneSquared => f.homodyne_space(rho).powi(2),
            Overlap::FiberSquared => f.fiber_space(rho).powi(2),
            Overlap::Cross => f.homodyne_space(rho) * f.fiber_space(rho),
        }
    }

    fn time(self, f: &Fields, t: f64) -> f64 {
        match self {
            Overlap::HomodyneSquared => f.homodyne_time(t).powi(2),
            Overlap::FiberSquared => 1.0,
            Overlap::Cross => f.homodyne_time(t),
        }
    }

    fn prefactor(self) -> f64 {
        match self {
            Overlap::HomodyneSquared => 1.0,
            Overlap::FiberSquared => 1.0 / (4.0 * PI * PI),
            Overlap::Cross => 1.0 / (2.0 * PI),
        }
    }
}

/// `∫ d²ρ dt overlap(ρ, t) · g(qlE0 e_P(ρ, t))`.
fn overlap_integral(geom: &PulseGeometry, overlap: Overlap, g: impl Fn(f64) -> f64, opts: &QuadOptions) -> Result<f64> {
    let f = Fields(geom);
    let (rho_max, t_max) = (f.rho_max(), f.t_max());
    let value = if geom.profile.spatial_gaussian() {
        let integrand = |rho: f64, t: f64| {
            let pump = geom.qle0 * f.pump_space(rho) * f.pump_time(t);
            2.0 * PI * rho * overlap.space(&f, rho) * overlap.time(&f, t) * g(pump)
        };
        integrate_2d(integrand, 0.0, rho_max, |_| (-t_max, t_max), opts)?.value
    } else {
        integrate(|t| overlap.time(&f, t) * g(geom.qle0 * f.pump_time(t)), -t_max, t_max, opts)?.value
    };
    Ok(overlap.prefactor() * value)
}

/// Separable moment of order `m`: a radial and a temporal 1-D quadrature.
fn moment_integral(geom: &PulseGeometry, overlap: Overlap, m: usize, opts: &QuadOptions) -> Result<f64> {
    let f = Fields(geom);
    let mi = m as i32;
    let space = if geom.profile.spatial_gaussian() {
        integrate(|rho| 2.0 * PI * rho * overlap.space(&f, rho) * f.pump_space(rho).powi(mi), 0.0, f.rho_max(), opts)?.value
    } else {
        1.0
    };
    let t_max = f.t_max();
    let time = integrate(|t| overlap.time(&f, t) * f.pump_time(t).powi(mi), -t_max, t_max, opts)?.value;
    Ok(overlap.prefactor() * space * time)
}

/// Evaluate one model quantity by brute-force quadrature. `m` selects the
/// order for the moments and is ignored otherwise.
pub fn quadrature_oracle(
    geom: &PulseGeometry,
    fc: &FilterChain,
    which: OracleQuantity,
    m: usize,
    opts: &QuadOptions,
) -> Result<f64> {
    geom.validate()?;
    if geom.profile == Profile::Uniform {
        return Err(Error::UnsupportedProfile("quadrature needs decaying profiles"));
    }
    let scale = fc.scale();
    let cosh2 = |x: f64| x.cosh().powi(2);
    let sinh2 = |x: f64| x.sinh().powi(2);
    let sinh_cosh = |x: f64| x.sinh() * x.cosh();
    match which {
        OracleQuantity::Pm => moment_integral(geom, Overlap::HomodyneSquared, m, opts),
        OracleQuantity::Qm if m == 0 => {
            Err(Error::InvalidParameter { name: "m", value: 0.0, reason: "Q_0 diverges for a pulsed pump" })
        }
        OracleQuantity::Qm => moment_integral(geom, Overlap::FiberSquared, m, opts),
        OracleQuantity::Rm => moment_integral(geom, Overlap::Cross, m, opts),
        OracleQuantity::Eta2 => overlap_integral(geom, Overlap::HomodyneSquared, cosh2, opts),
        OracleQuantity::EtaAlpha => overlap_integral(geom, Overlap::HomodyneSquared, sinh_cosh, opts),
        OracleQuantity::Ptot => Ok(scale * overlap_integral(geom, Overlap::FiberSquared, sinh2, opts)?),
        OracleQuantity::GammaBar | OracleQuantity::DeltaBar => {
            let eta = overlap_integral(geom, Overlap::HomodyneSquared, cosh2, opts)?.sqrt();
            let gamma = scale.sqrt() / eta * overlap_integral(geom, Overlap::Cross, sinh_cosh, opts)?;
            if which == OracleQuantity::GammaBar {
                return Ok(gamma);
            }
            let alpha = overlap_integral(geom, Overlap::HomodyneSquared, sinh_cosh, opts)? / eta;
            let beta = (eta * eta - alpha * alpha - 1.0).max(0.0).sqrt();
            if beta == 0.0 {
                return Ok(0.0);
            }
            let dr = overlap_integral(geom, Overlap::Cross, sinh2, opts)?;
            Ok((scale.sqrt() * dr - alpha * gamma) / beta)
        }
    }
}
