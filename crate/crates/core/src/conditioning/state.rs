use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::detection::DetectionCoeffs;
use crate::error::{Error, Result};

/// Conditional state of the two effective modes after one detection:
/// vacuum with weight `1 - xi`, otherwise a photon in
/// `cos(theta) a_0† + e^{i rel_phase} sin(theta) a_1†`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalState {
    pub xi: f64,
    pub theta: f64,
    pub rel_phase: f64,
}

impl ConditionalState {
    pub fn new(xi: f64, theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::InvalidParameter { name: "xi", value: xi, reason: "must lie in [0, 1]" });
        }
        Ok(Self { xi, theta, rel_phase: 0.0 })
    }

    pub fn with_phase(self, rel_phase: f64) -> Self {
        Self { rel_phase, ..self }
    }
}

fn state_from_moments(weight: f64, p: f64, gg: f64, dd: f64, gd: C64) -> Result<ConditionalState> {
    if !(p > 0.0) {
        return Err(Error::NoDetection);
    }
    let xi = weight / p;
    if xi > 1.0 + 1e-10 {
        return Err(Error::InvalidParameter { name: "xi", value: xi, reason: "modal purity exceeds 1" });
    }
    let rel_phase = if gd.norm() > 0.0 { gd.arg() } else { 0.0 };
    Ok(ConditionalState { xi: xi.min(1.0), theta: dd.sqrt().atan2(gg.sqrt()), rel_phase })
}

pub fn conditional_state(dc: &DetectionCoeffs) -> Result<ConditionalState> {
    let (gg, dd) = (dc.gamma.norm_sqr(), dc.delta.norm_sqr());
    state_from_moments(gg + dd, dc.p, gg, dd, dc.gamma.conj() * dc.delta)
}

/// Reduced density matrix in the basis `{|00>, |10>, |01>}`.
pub fn density_matrix(cs: &ConditionalState) -> DMatrix<C64> {
    let (s, c) = cs.theta.sin_cos();
    let photon = [C64::from(0.0), C64::from(c), C64::from_polar(s, cs.rel_phase)];
    let mut rho = DMatrix::<C64>::zeros(3, 3);
    rho[(0, 0)] = C64::from(1.0 - cs.xi);
    for i in 1..3 {
        for j in 1..3 {
            rho[(i, j)] += photon[i] * photon[j].conj() * cs.xi;
        }
    }
    rho
}

/// Detection-averaged sums `sum |gamma|²`, `sum |delta|²`, `sum gamma* delta`
/// and `P_tot = sum P`, kept unnormalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragedMoments {
    pub gg: f64,
    pub dd: f64,
    pub gd: C64,
    pub p_tot: f64,
}

impl AveragedMoments {
    /// Narrow-filter form where averages of products are products of averages.
    pub fn from_amplitudes(gamma: C64, delta: C64, p_tot: f64) -> Self {
        Self { gg: gamma.norm_sqr(), dd: delta.norm_sqr(), gd: gamma.conj() * delta, p_tot }
    }

    pub fn validate(&self) -> Result<()> {
        let tol = 1.0 + 1e-10;
        if !(self.gg >= 0.0 && self.dd >= 0.0) {
            return Err(Error::InvalidParameter { name: "GG/DD", value: self.gg.min(self.dd), reason: "must be >= 0" });
        }
        if self.gd.norm_sqr() > self.gg * self.dd * tol + f64::MIN_POSITIVE {
            return Err(Error::InvalidParameter {
                name: "|GD|^2",
                value: self.gd.norm_sqr(),
                reason: "violates Cauchy-Schwarz",
            });
        }
        if self.gg + self.dd > self.p_tot * tol + f64::MIN_POSITIVE {
            return Err(Error::InvalidParameter { name: "GG + DD", value: self.gg + self.dd, reason: "exceeds P_tot" });
        }
        Ok(())
    }

    /// Averaged conditional state: modal purity, mixing angle and relative phase.
    pub fn state(&self) -> Result<ConditionalState> {
        state_from_moments(self.gg + self.dd, self.p_tot, self.gg, self.dd, self.gd)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self { gg: self.gg * k, dd: self.dd * k, gd: self.gd * k, p_tot: self.p_tot * k }
    }
}

/// Weighted sums over detection modes; `weights` are quadrature weights for
/// continuum mode labels (all ones for discrete modes).
pub fn average_moments(coeffs: &[DetectionCoeffs], weights: &[f64]) -> Result<AveragedMoments> {
    if coeffs.is_empty() {
        return Err(Error::Shape("no detection modes to average".into()));
    }
    if coeffs.len() != weights.len() {
        return Err(Error::Shape(format!("{} detection modes, {} weights", coeffs.len(), weights.len())));
    }
    let mut m = AveragedMoments { gg: 0.0, dd: 0.0, gd: C64::from(0.0), p_tot: 0.0 };
    for (dc, &w) in coeffs.iter().zip(weights) {
        m.gg += w * dc.gamma.norm_sqr();
        m.dd += w * dc.delta.norm_sqr();
        m.gd += dc.gamma.conj() * dc.delta * w;
        m.p_tot += w * dc.p;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::SymmetricEigen;
    use std::f64::consts::FRAC_PI_2;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn pure_single_mode_state() {
        let r: f64 = 0.3;
        let dc = DetectionCoeffs::new(C64::from(r.sinh()), C64::from(0.0), r.sinh().powi(2)).unwrap();
        let cs = conditional_state(&dc).unwrap();
        assert!((cs.xi - 1.0).abs() < 1e-15);
        assert_eq!(cs.theta, 0.0);
    }

    #[test]
    fn photon_in_mode_one() {
        let dc = DetectionCoeffs::new(C64::from(0.0), C64::from(0.2), 0.1).unwrap();
        assert!((conditional_state(&dc).unwrap().theta - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn no_detection() {
        let dc = DetectionCoeffs::new(C64::from(0.0), C64::from(0.0), 0.0).unwrap();
        assert_eq!(conditional_state(&dc), Err(Error::NoDetection));
    }

    #[test]
    fn density_matrices() {
        let rho = density_matrix(&ConditionalState::new(0.0, 0.3).unwrap());
        assert_eq!(rho[(0, 0)], C64::from(1.0));
        assert_eq!(rho.iter().map(|z| z.norm()).sum::<f64>(), 1.0);

        let rho = density_matrix(&ConditionalState::new(1.0, 0.0).unwrap());
        assert!((rho[(1, 1)] - C64::from(1.0)).norm() < 1e-15);
        assert!((rho.iter().map(|z| z.norm()).sum::<f64>() - 1.0).abs() < 1e-15);

        let rho = density_matrix(&ConditionalState::new(0.5, FRAC_PI_4).unwrap().with_phase(0.7));
        assert!((rho.trace() - C64::from(1.0)).norm() < 1e-15);
        assert!((&rho - rho.adjoint()).norm() < 1e-15);
        let mut ev: Vec<f64> = SymmetricEigen::new(rho).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        for (got, want) in ev.iter().zip([0.0, 0.5, 0.5]) {
            assert!((got - want).abs() < 1e-14, "{ev:?}");
        }
    }

    #[test]
    fn averaging_identical_modes() {
        let dc = DetectionCoeffs::new(C64::from(0.1), C64::new(0.05, 0.02), 0.02).unwrap();
        let one = average_moments(&[dc], &[1.0]).unwrap();
        let two = average_moments(&[dc, dc], &[1.0, 1.0]).unwrap();
        assert_eq!(one.gg, dc.gamma.norm_sqr());
        assert!((two.p_tot - 2.0 * one.p_tot).abs() < 1e-16);
        let (s1, s2) = (one.state().unwrap(), two.state().unwrap());
        assert!((s1.xi - s2.xi).abs() < 1e-15);
        assert!((s1.theta - s2.theta).abs() < 1e-15);
        assert!((s1.rel_phase - s2.rel_phase).abs() < 1e-15);
    }

    #[test]
    fn averaging_errors() {
        assert!(average_moments(&[], &[]).is_err());
        let dc = DetectionCoeffs::new(C64::from(0.1), C64::from(0.0), 0.02).unwrap();
        assert!(average_moments(&[dc], &[1.0, 2.0]).is_err());
    }
}
