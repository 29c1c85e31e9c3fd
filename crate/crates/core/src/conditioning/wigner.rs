use std::f64::consts::PI;

use super::state::AveragedMoments;
use crate::error::{Error, Result};
use crate::modecore::{variances_from_modered, ModeReduction, QuadVariances};
use crate::numeric::{integrate_2d, QuadOptions};

/// Conditional Wigner function
/// `W(x, p) = (C + 2A x²/V_x² + 2B p²/V_p² + D x p/(V_x V_p)) W_sqz(x, p)`
/// with `W_sqz` the gaussian of variances `V_x / 2`, `V_p / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub vx: f64,
    pub vp: f64,
}

impl WignerForm {
    /// Unconditioned squeezed vacuum with variances `v`.
    pub fn squeezed_vacuum(v: &QuadVariances) -> Self {
        Self { a: 0.0, b: 0.0, c: 1.0, d: 0.0, vx: v.vx, vp: v.vp }
    }

    /// Form with `C` fixed by normalization.
    pub fn normalized(a: f64, b: f64, d: f64, v: &QuadVariances) -> Self {
        Self { a, b, c: 1.0 - a / v.vx - b / v.vp, d, vx: v.vx, vp: v.vp }
    }

    pub fn variances(&self) -> QuadVariances {
        QuadVariances { vx: self.vx, vp: self.vp }
    }

    /// Residual of `C = 1 - A/V_x - B/V_p`.
    pub fn normalization_residual(&self) -> f64 {
        (self.c - (1.0 - self.a / self.vx - self.b / self.vp)).abs()
    }

    pub fn at_origin(&self) -> f64 {
        self.c / (PI * (self.vx * self.vp).sqrt())
    }

    pub fn eval(&self, x: f64, p: f64) -> f64 {
        eval_wigner(self, x, p)
    }
}

pub fn wigner_coeffs(mr: &ModeReduction, m: &AveragedMoments) -> Result<WignerForm> {
    if !(m.p_tot > 0.0) {
        return Err(Error::NoDetection);
    }
    let (eta, alpha, beta) = (mr.eta, mr.alpha, mr.beta);
    let v = variances_from_modered(mr);
    let (plus, minus) = (eta + alpha, eta - alpha);
    let re = m.gd.re;
    let a = (plus * plus * m.gg + beta * beta * m.dd + 2.0 * plus * beta * re) / m.p_tot;
    let b = (minus * minus * m.gg + beta * beta * m.dd - 2.0 * minus * beta * re) / m.p_tot;
    let d = -8.0 * m.gd.im * eta * beta / m.p_tot;
    Ok(WignerForm::normalized(a, b, d, &v))
}

pub fn eval_wigner(w: &WignerForm, x: f64, p: f64) -> f64 {
    let (vx, vp) = (w.vx, w.vp);
    let poly = w.c + 2.0 * w.a * x * x / (vx * vx) + 2.0 * w.b * p * p / (vp * vp) + w.d * x * p / (vx * vp);
    poly * (-x * x / vx - p * p / vp).exp() / (PI * (vx * vp).sqrt())
}

/// Homodyne efficiency and sampling-beamsplitter transmission.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossChain {
    pub eta_hom: f64,
    pub t: f64,
}

impl LossChain {
    pub const LOSSLESS: Self = Self { eta_hom: 1.0, t: 1.0 };

    pub fn new(eta_hom: f64, t: f64) -> Result<Self> {
        for (name, value) in [("eta_hom", eta_hom), ("T", t)] {
            if !(value > 0.0 && value <= 1.0) {
                return Err(Error::InvalidParameter { name, value, reason: "must lie in (0, 1]" });
            }
        }
        Ok(Self { eta_hom, t })
    }

    pub fn efficiency(&self) -> f64 {
        self.eta_hom * self.t
    }
}

pub fn apply_losses(w: &WignerForm, losses: &LossChain) -> WignerForm {
    let l = losses.efficiency();
    let v = QuadVariances { vx: l * (w.vx - 1.0) + 1.0, vp: l * (w.vp - 1.0) + 1.0 };
    WignerForm::normalized(l * w.a, l * w.b, l * w.d, &v)
}

/// `∫∫ W dx dp` by adaptive quadrature over ±10 standard deviations.
pub fn integrate_wigner(w: &WignerForm, opts: &QuadOptions) -> Result<f64> {
    let (hx, hp) = (10.0 * (0.5 * w.vx).sqrt(), 10.0 * (0.5 * w.vp).sqrt());
    Ok(integrate_2d(|x, p| eval_wigner(w, x, p), -hx, hx, |_| (-hp, hp), opts)?.value)
}

/// Minimum of `W` over an `n x n` grid covering `[-half_width, half_width]²`.
pub fn grid_minimum(w: &WignerForm, half_width: f64, n: usize) -> f64 {
    let axis = crate::numeric::linspace(-half_width, half_width, n);
    axis.iter()
        .flat_map(|&x| axis.iter().map(move |&p| (x, p)))
        .map(|(x, p)| eval_wigner(w, x, p))
        .fold(f64::INFINITY, f64::min)
}
