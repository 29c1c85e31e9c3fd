//! Brute-force conditional Wigner function: integrate the four-variable
//! Wigner function of the two effective input modes over mode 1.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::state::ConditionalState;
use crate::error::{Error, Result};
use crate::modecore::{variances_from_modered, ModeReduction};
use crate::numeric::{integrate_2d, QuadOptions};

/// Window half-width in standard deviations of the gaussian envelope.
const WINDOW_SIGMAS: f64 = 8.0;

/// Evaluates the conditional Wigner function at each probe point by 2-D
/// adaptive quadrature over the mode-1 quadratures.
pub fn oracle_wigner_numeric(
    mr: &ModeReduction,
    cs: &ConditionalState,
    probes: &[(f64, f64)],
    opts: &QuadOptions,
) -> Result<Vec<f64>> {
    let (eta, alpha, beta) = (mr.eta, mr.alpha, mr.beta);
    let v = variances_from_modered(mr);
    let (plus, minus) = (eta + alpha, eta - alpha);
    let (sin_t, cos_t) = cs.theta.sin_cos();
    let mix = C64::from_polar(sin_t, -cs.rel_phase);
    let jacobian = 1.0 / (1.0 + beta * beta);
    let (sd_x1, sd_p1) = (plus / (2.0 * v.vx).sqrt(), minus / (2.0 * v.vp).sqrt());

    probes
        .iter()
        .map(|&(x, p)| {
            let integrand = |x1: f64, p1: f64| {
                let x0 = (x - beta * x1) / plus;
                let p0 = (p + beta * p1) / minus;
                let z = C64::new(x0, p0) * cos_t + C64::new(x1, p1) * mix;
                let r2 = x0 * x0 + p0 * p0 + x1 * x1 + p1 * p1;
                (-r2).exp() / (PI * PI) * (1.0 - 2.0 * cs.xi + 2.0 * cs.xi * z.norm_sqr())
            };
            let (cx, cp) = (beta * x / v.vx, -beta * p / v.vp);
            let (hx, hp) = (WINDOW_SIGMAS * sd_x1.max(1e-3), WINDOW_SIGMAS * sd_p1.max(1e-3));
            let r = integrate_2d(integrand, cx - hx, cx + hx, |_| (cp - hp, cp + hp), opts)?;
            if !r.value.is_finite() {
                return Err(Error::Quadrature { value: r.value, error: r.error });
            }
            Ok(jacobian * r.value)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditioning::{eval_wigner, wigner_coeffs, AveragedMoments, WignerForm};

    #[test]
    fn zero_purity_is_squeezed_vacuum() {
        let mr = ModeReduction::from_eta_alpha(1.25, 0.55).unwrap();
        let cs = ConditionalState::new(0.0, 0.4).unwrap();
        let probes = [(0.0, 0.0), (0.7, -0.3), (-1.5, 0.9)];
        let got = oracle_wigner_numeric(&mr, &cs, &probes, &QuadOptions::new(1e-8, 1e-10)).unwrap();
        let vac = WignerForm::squeezed_vacuum(&variances_from_modered(&mr));
        for (&(x, p), g) in probes.iter().zip(got) {
            assert!((g - eval_wigner(&vac, x, p)).abs() < 1e-8);
        }
    }

    #[test]
    fn single_mode_photon_at_origin() {
        let r: f64 = 0.3;
        let mr = ModeReduction { eta: r.cosh(), alpha: r.sinh(), beta: 0.0, phase: 0.0 };
        let cs = ConditionalState::new(1.0, 0.0).unwrap();
        let got = oracle_wigner_numeric(&mr, &cs, &[(0.0, 0.0)], &QuadOptions::new(1e-10, 1e-10)).unwrap();
        assert!((got[0] + 1.0 / PI).abs() < 1e-8, "{}", got[0]);
    }

    #[test]
    fn matches_closed_form_with_complex_mixing() {
        let mr = ModeReduction { eta: 1.3, alpha: 0.6, beta: (1.69f64 - 0.36 - 1.0).sqrt(), phase: 0.0 };
        let cs = ConditionalState::new(0.8, 0.6).unwrap().with_phase(0.9);
        let (s, c) = cs.theta.sin_cos();
        let m = AveragedMoments {
            gg: cs.xi * c * c,
            dd: cs.xi * s * s,
            gd: C64::from_polar(cs.xi * c * s, cs.rel_phase),
            p_tot: 1.0,
        };
        let w = wigner_coeffs(&mr, &m).unwrap();
        assert!(w.d.abs() > 0.1);
        let probes = [(0.0, 0.0), (0.8, 0.5), (-0.6, 0.9), (1.1, -0.7)];
        let got = oracle_wigner_numeric(&mr, &cs, &probes, &QuadOptions::new(1e-10, 1e-10)).unwrap();
        for (&(x, p), g) in probes.iter().zip(got) {
            assert!((g - eval_wigner(&w, x, p)).abs() < 1e-8, "({x}, {p}): {g} vs {}", eval_wigner(&w, x, p));
        }
    }
}
