use nalgebra::DVector;
use num_complex::Complex64 as C64;

use super::bogoliubov::{FiniteBogoliubov, ModeVector};
use crate::error::{Error, Result};

/// Radicands within this distance below zero are treated as exact zeros.
pub const RADICAND_CLAMP: f64 = 1e-10;

/// Effective two-mode form of the homodyne output,
/// `a_h,out = eta a_0 + alpha a_0† + beta a_1†`.
///
/// `phase` is the rotation applied to the homodyne mode to make `alpha`
/// real and non-negative, so `x` is always the anti-squeezed quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeReduction {
    pub eta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub phase: f64,
}

impl ModeReduction {
    pub const VACUUM: Self = Self { eta: 1.0, alpha: 0.0, beta: 0.0, phase: 0.0 };

    /// Build from `eta` and `alpha`, deriving `beta` from `eta² - alpha² - beta² = 1`.
    pub fn from_eta_alpha(eta: f64, alpha: f64) -> Result<Self> {
        if !(eta >= 1.0 - RADICAND_CLAMP) {
            return Err(Error::InvalidParameter { name: "eta", value: eta, reason: "must be >= 1" });
        }
        if !(alpha >= 0.0) {
            return Err(Error::InvalidParameter { name: "alpha", value: alpha, reason: "must be >= 0" });
        }
        let beta = clamped_sqrt(eta * eta - alpha * alpha - 1.0, "beta^2 = eta^2 - alpha^2 - 1")?;
        Ok(Self { eta, alpha, beta, phase: 0.0 })
    }

    /// Residual of `eta² - alpha² - beta² = 1`.
    pub fn identity_residual(&self) -> f64 {
        (self.eta * self.eta - self.alpha * self.alpha - self.beta * self.beta - 1.0).abs()
    }

    /// Single-mode regime: the homodyne output involves only mode 0.
    pub fn is_single_mode(&self) -> bool {
        self.beta == 0.0
    }

    /// Mixing angle of the empirical model, `tan theta_0 = beta / alpha`.
    pub fn theta0(&self) -> f64 {
        self.beta.atan2(self.alpha)
    }
}

pub(crate) fn clamped_sqrt(radicand: f64, quantity: &'static str) -> Result<f64> {
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else if radicand >= -RADICAND_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::Inconsistent { quantity, radicand })
    }
}

/// Orthonormal pair spanned by the homodyne output: `e0 = u† psi / eta` and
/// `e1`, the normalized part of `(v† psi)*` orthogonal to `e0`. `e1` is built
/// with a second Gram-Schmidt pass so it stays orthogonal to `e0` even when
/// `beta` is many orders of magnitude below `alpha`.
pub(crate) struct EffectiveModes {
    pub eta: f64,
    pub raw_alpha: C64,
    pub beta: f64,
    pub e0: DVector<C64>,
    pub e1: Option<DVector<C64>>,
}

/// `beta` below this fraction of `|v† psi|` is rounding noise.
const BETA_NOISE: f64 = 1e-13;

pub(crate) fn effective_modes(b: &FiniteBogoliubov, psi: &DVector<C64>) -> Result<EffectiveModes> {
    let u_dag_psi = b.u().adjoint() * psi;
    let f = (b.v().adjoint() * psi).conjugate();
    let eta = u_dag_psi.norm();
    if !(eta > 0.0) {
        return Err(Error::Inconsistent { quantity: "eta^2 = psi† u u† psi", radicand: eta * eta });
    }
    let e0 = u_dag_psi / C64::from(eta);
    let raw_alpha = e0.dotc(&f);
    let mut w = &f - &e0 * raw_alpha;
    let again = e0.dotc(&w);
    w -= &e0 * again;
    let beta = w.norm();
    if beta <= BETA_NOISE * f.norm() {
        return Ok(EffectiveModes { eta, raw_alpha, beta: 0.0, e0, e1: None });
    }
    let e1 = w / C64::from(beta);
    Ok(EffectiveModes { eta, raw_alpha, beta, e0, e1: Some(e1) })
}

/// Reduce the homodyne mode `psi_h` of a multimode transform to `(eta, alpha, beta)`.
pub fn mode_reduce(b: &FiniteBogoliubov, psi_h: &ModeVector) -> Result<ModeReduction> {
    if psi_h.len() != b.n() {
        return Err(Error::Shape(format!("homodyne mode has {} components, transform has {} modes", psi_h.len(), b.n())));
    }
    let m = effective_modes(b, psi_h.as_vector())?;
    let mr = ModeReduction { eta: m.eta, alpha: m.raw_alpha.norm(), beta: m.beta, phase: 0.5 * m.raw_alpha.arg() };
    if mr.identity_residual() > RADICAND_CLAMP * mr.eta * mr.eta {
        let radicand = mr.eta * mr.eta - mr.alpha * mr.alpha - 1.0;
        return Err(Error::Inconsistent { quantity: "beta^2 = eta^2 - alpha^2 - 1", radicand });
    }
    Ok(mr)
}
