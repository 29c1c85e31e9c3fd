use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::modecore::{effective_modes, FiniteBogoliubov, ModeReduction, ModeVector};

/// Tolerance on `|gamma|² + |delta|² <= P`.
const PURITY_TOL: f64 = 1e-10;

/// Projection of one detection mode onto the two effective modes:
/// `gamma` on `a_0†`, `delta` on `a_1†`, and the detection probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionCoeffs {
    pub gamma: C64,
    pub delta: C64,
    pub p: f64,
    /// Set when `beta = 0`: mode 1 does not exist and `delta` is forced to 0.
    pub single_mode: bool,
}

impl DetectionCoeffs {
    pub fn new(gamma: C64, delta: C64, p: f64) -> Result<Self> {
        let dc = Self { gamma, delta, p, single_mode: false };
        dc.validate()?;
        Ok(dc)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p >= 0.0) {
            return Err(Error::InvalidParameter { name: "P", value: self.p, reason: "must be >= 0" });
        }
        let weight = self.gamma.norm_sqr() + self.delta.norm_sqr();
        if weight > self.p * (1.0 + PURITY_TOL) + f64::MIN_POSITIVE {
            return Err(Error::InvalidParameter {
                name: "|gamma|^2 + |delta|^2",
                value: weight,
                reason: "exceeds the detection probability",
            });
        }
        Ok(())
    }

    /// Vacuum expectation of the photon number outside the two effective modes.
    pub fn n_perp(&self) -> f64 {
        self.p - self.gamma.norm_sqr() - self.delta.norm_sqr()
    }
}

/// Detection coefficients of mode `phi_d` for a transform whose homodyne
/// mode `psi_h` reduces to `mr` (see [`crate::modecore::mode_reduce`]).
pub fn detection_coeffs(
    b: &FiniteBogoliubov,
    psi_h: &ModeVector,
    mr: &ModeReduction,
    phi_d: &ModeVector,
) -> Result<DetectionCoeffs> {
    let n = b.n();
    if psi_h.len() != n || phi_d.len() != n {
        return Err(Error::Shape(format!(
            "mode vectors have {} and {} components, transform has {n} modes",
            psi_h.len(),
            phi_d.len()
        )));
    }
    let psi = psi_h.rotated(mr.phase);
    let modes = effective_modes(b, psi.as_vector())?;
    let g = (b.v().adjoint() * phi_d.as_vector()).conjugate();
    let gamma = modes.e0.dotc(&g);
    let p = g.norm_squared();
    match (&modes.e1, mr.is_single_mode()) {
        (Some(e1), false) => Ok(DetectionCoeffs { gamma, delta: e1.dotc(&g), p, single_mode: false }),
        _ => Ok(DetectionCoeffs { gamma, delta: C64::from(0.0), p, single_mode: true }),
    }
}
