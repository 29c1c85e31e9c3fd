//! Conversions among the equivalent two-mode parameterizations:
//! `(eta, alpha, beta)`, quadrature variances `(V_x, V_p)` and the
//! DOPA + NDOPA squeezing pair `(r, g)`.

use super::reduction::ModeReduction;
use crate::error::{Error, Result};

/// Vacuum-normalized quadrature variances (vacuum = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadVariances {
    pub vx: f64,
    pub vp: f64,
}

impl QuadVariances {
    pub const VACUUM: Self = Self { vx: 1.0, vp: 1.0 };

    pub fn new(vx: f64, vp: f64) -> Result<Self> {
        if !(vx > 0.0) || !(vp > 0.0) {
            return Err(Error::InvalidParameter { name: "variance", value: vx.min(vp), reason: "must be positive" });
        }
        if vx * vp < 1.0 - 1e-12 {
            return Err(Error::UncertaintyViolation { product: vx * vp });
        }
        Ok(Self { vx, vp })
    }

    pub fn product(&self) -> f64 {
        self.vx * self.vp
    }
}

/// NDOPA gain ratio `g`. Undefined when the DOPA squeezing `r` vanishes
/// while the NDOPA is active; that case keeps the product `g r` instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GainRatio {
    Ratio(f64),
    PureNdopa { gr: f64 },
}

impl GainRatio {
    pub fn ratio(&self) -> Option<f64> {
        match *self {
            GainRatio::Ratio(g) => Some(g),
            GainRatio::PureNdopa { .. } => None,
        }
    }
}

/// DOPA squeezing `r` (with `s = exp(-2 r)`) followed by an NDOPA of gain `g r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeSpec {
    pub r: f64,
    pub g: GainRatio,
    pub s: f64,
}

impl SqueezeSpec {
    pub fn new(r: f64, g: f64) -> Result<Self> {
        if !(r >= 0.0) || !(g >= 0.0) {
            return Err(Error::InvalidParameter { name: "r/g", value: r.min(g), reason: "must be >= 0" });
        }
        Ok(Self { r, g: GainRatio::Ratio(g), s: (-2.0 * r).exp() })
    }

    pub fn from_s(s: f64, g: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidParameter { name: "s", value: s, reason: "must lie in (0, 1]" });
        }
        Self::new(-0.5 * s.ln(), g)
    }

    /// Product `g r`, defined in every case.
    pub fn gr(&self) -> f64 {
        match self.g {
            GainRatio::Ratio(g) => g * self.r,
            GainRatio::PureNdopa { gr } => gr,
        }
    }
}

pub fn variances_from_modered(mr: &ModeReduction) -> QuadVariances {
    let b2 = mr.beta * mr.beta;
    QuadVariances { vx: (mr.eta + mr.alpha).powi(2) + b2, vp: (mr.eta - mr.alpha).powi(2) + b2 }
}

pub fn modered_from_variances(v: &QuadVariances) -> Result<ModeReduction> {
    let excess = v.vx * v.vp - 1.0;
    if excess < -1e-12 {
        return Err(Error::UncertaintyViolation { product: v.vx * v.vp });
    }
    let norm = (v.vx + v.vp + 2.0).sqrt();
    let beta = excess.max(0.0).sqrt();
    Ok(ModeReduction {
        eta: 0.5 * (v.vp + v.vx + 2.0) / norm,
        alpha: 0.5 * (v.vx - v.vp) / norm,
        beta: beta / norm,
        phase: 0.0,
    })
}

pub fn squeeze_convert(mr: &ModeReduction) -> SqueezeSpec {
    let r = (mr.alpha / mr.eta).atanh();
    let gr = mr.beta.asinh();
    let g = if r > 0.0 {
        GainRatio::Ratio(gr / r)
    } else if gr > 0.0 {
        GainRatio::PureNdopa { gr }
    } else {
        GainRatio::Ratio(0.0)
    };
    SqueezeSpec { r, g, s: (-2.0 * r).exp() }
}

pub fn modered_from_squeeze(spec: &SqueezeSpec) -> ModeReduction {
    let gr = spec.gr();
    ModeReduction {
        eta: spec.r.cosh() * gr.cosh(),
        alpha: spec.r.sinh() * gr.cosh(),
        beta: gr.sinh(),
        phase: 0.0,
    }
}
