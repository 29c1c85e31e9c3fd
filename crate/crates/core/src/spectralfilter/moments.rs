use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use statrs::function::erf::{erf, erf_inv, erfc};

use super::kernel::{time_kernels, TimeKernel};
use super::mask::SpectralMask;
use crate::conditioning::{apply_losses, wigner_coeffs, AveragedMoments, ConditionalState, LossChain, WignerForm};
use crate::error::{ensure, Result};
use crate::modecore::ModeReduction;
use crate::numeric::{integrate, QuadOptions};
use crate::pulsemodel::{modered_from_tables, ptot_from_tables, series_tables, FilterChain, PulseGeometry, DEFAULT_SERIES_TOL};

/// `∫_lo^hi exp(-c ω²) dω`, using `erfc` on the tails to avoid cancellation.
fn gaussian_interval(c: f64, lo: f64, hi: f64) -> f64 {
    let s = c.sqrt();
    let half = 0.5 * (PI / c).sqrt();
    if lo >= 0.0 {
        half * (erfc(s * lo) - erfc(s * hi))
    } else if hi <= 0.0 {
        half * (erfc(-s * hi) - erfc(-s * lo))
    } else {
        half * (erf(s * hi) - erf(s * lo))
    }
}

/// `(η_c R / 4π²) ∫ T(ω) f̃(ω) h̃*(ω) dω`, evaluated term by term in closed form.
pub fn spectral_moment(f: &TimeKernel, h: &TimeKernel, mask: &SpectralMask, fc: &FilterChain) -> f64 {
    let mut total = 0.0;
    for a in &f.terms {
        for b in &h.terms {
            let amp = a.amplitude * b.amplitude * PI / (a.rate * b.rate).sqrt();
            let c = 0.25 / a.rate + 0.25 / b.rate;
            for &(lo, hi, value) in mask.segments() {
                total += value * amp * gaussian_interval(c, lo, hi);
            }
        }
    }
    fc.eta_c * fc.r / (4.0 * PI * PI) * total
}

/// Same integral by adaptive quadrature over each mask segment.
pub fn spectral_moment_numeric(
    f: &TimeKernel,
    h: &TimeKernel,
    mask: &SpectralMask,
    fc: &FilterChain,
    opts: &QuadOptions,
) -> Result<f64> {
    let widest = f.terms.iter().chain(&h.terms).map(|g| g.rate).fold(0.0, f64::max);
    let cutoff = 40.0 * widest.sqrt();
    let mut total = 0.0;
    for &(lo, hi, value) in mask.segments() {
        let (lo, hi) = (lo.max(-cutoff), hi.min(cutoff));
        if hi > lo && value > 0.0 {
            total += value * integrate(|w| f.fourier(w) * h.fourier(w), lo, hi, opts)?.value;
        }
    }
    Ok(fc.eta_c * fc.r / (4.0 * PI * PI) * total)
}

/// Fraction of the homodyne pulse energy inside a centered slit of width `omega`.
pub fn homodyne_slit_transmission(geom: &PulseGeometry, omega: f64) -> f64 {
    erf(omega * geom.tau / 4.0)
}

/// Slit width giving homodyne transmission `t`.
pub fn omega_for_transmission(geom: &PulseGeometry, t: f64) -> Result<f64> {
    ensure(t > 0.0 && t < 1.0, "transmission", t, "must lie in (0, 1)")?;
    Ok(4.0 * erf_inv(t) / geom.tau)
}

/// Detection-averaged state through a slit of finite width, before losses.
#[derive(Debug, Clone, PartialEq)]
pub struct FullFilter {
    pub omega: f64,
    pub transmission: f64,
    pub modered: ModeReduction,
    pub moments: AveragedMoments,
    pub state: ConditionalState,
    pub wigner: WignerForm,
}

impl FullFilter {
    pub fn evaluate(geom: &PulseGeometry, fc: &FilterChain, omega: f64) -> Result<Self> {
        let fc = FilterChain { omega, ..*fc };
        fc.validate()?;
        let tables = series_tables(geom, DEFAULT_SERIES_TOL)?;
        let modered = modered_from_tables(&tables)?;
        let (gk, dk) = time_kernels(geom)?;
        let mask = SpectralMask::slit(omega)?;
        let (eta, alpha, beta) = (modered.eta, modered.alpha, modered.beta);

        let m_gg = spectral_moment(&gk, &gk, &mask, &fc);
        let gg = m_gg / (eta * eta);
        let (dd, gd) = if modered.is_single_mode() {
            (0.0, 0.0)
        } else {
            let m_gd = spectral_moment(&gk, &dk, &mask, &fc);
            let m_dd = spectral_moment(&dk, &dk, &mask, &fc);
            let dd = (alpha * alpha * gg - 2.0 * alpha * m_gd / eta + m_dd) / (beta * beta);
            (dd, (-alpha * gg + m_gd / eta) / beta)
        };
        let p_tot = ptot_from_tables(&tables, &fc);
        let moments = AveragedMoments { gg, dd, gd: C64::from(gd), p_tot };
        let state = moments.state()?;
        let wigner = wigner_coeffs(&modered, &moments)?;
        Ok(Self { omega, transmission: homodyne_slit_transmission(geom, omega), modered, moments, state, wigner })
    }
}

pub fn wigner_full(geom: &PulseGeometry, fc: &FilterChain, omega: f64, losses: &LossChain) -> Result<WignerForm> {
    Ok(apply_losses(&FullFilter::evaluate(geom, fc, omega)?.wigner, losses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulsemodel::{solve_pump_amplitude, NarrowFilter};

    fn operating_geometry() -> PulseGeometry {
        let g = PulseGeometry::default();
        g.with_qle0(solve_pump_amplitude(&g, 0.56).unwrap())
    }

    #[test]
    fn analytic_and_numeric_paths_agree() {
        let geom = operating_geometry();
        let (gk, dk) = time_kernels(&geom).unwrap();
        let fc = FilterChain::default();
        let opts = QuadOptions::new(1e-14, 1e-12);
        let masks = [
            SpectralMask::slit(0.005).unwrap(),
            SpectralMask::slit(0.05).unwrap(),
            SpectralMask::all_pass(),
            SpectralMask::new(vec![(-0.03, -0.01, 0.3), (0.0, 0.02, 0.9)]).unwrap(),
        ];
        for mask in &masks {
            for (f, h) in [(&gk, &gk), (&gk, &dk), (&dk, &dk)] {
                let a = spectral_moment(f, h, mask, &fc);
                let n = spectral_moment_numeric(f, h, mask, &fc, &opts).unwrap();
                assert!((a - n).abs() < 1e-10 * a.abs().max(1e-3), "{a} vs {n}");
            }
        }
    }

    #[test]
    fn parseval() {
        let (gk, _) = time_kernels(&operating_geometry()).unwrap();
        let fc = FilterChain::default();
        let opts = QuadOptions::new(1e-13, 1e-13);
        let time_integral = integrate(|t| gk.value(t).powi(2), -3000.0, 3000.0, &opts).unwrap().value;
        let expected = fc.eta_c * fc.r / (2.0 * PI) * time_integral;
        let got = spectral_moment(&gk, &gk, &SpectralMask::all_pass(), &fc);
        assert!((got - expected).abs() < 1e-10 * expected, "{got} vs {expected}");
    }

    #[test]
    fn narrow_slit_limit() {
        let (gk, _) = time_kernels(&operating_geometry()).unwrap();
        let fc = FilterChain::default();
        let omega = 1e-6;
        let got = spectral_moment(&gk, &gk, &SpectralMask::slit(omega).unwrap(), &fc) / omega;
        let expected = fc.eta_c * fc.r / (4.0 * PI * PI) * gk.fourier(0.0).powi(2);
        assert!((got - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn full_filter_reduces_to_narrow_filter() {
        let geom = operating_geometry();
        let fc = FilterChain::default();
        let omega = omega_for_transmission(&geom, 1e-4).unwrap();
        let full = FullFilter::evaluate(&geom, &fc, omega).unwrap();
        let narrow = NarrowFilter::evaluate(&geom, &FilterChain { omega, ..fc }).unwrap();
        assert!((full.wigner.at_origin() - narrow.wigner.at_origin()).abs() < 1e-6);
        assert!((full.state.xi - narrow.xi_bar()).abs() < 1e-6);
        assert_eq!(full.wigner.d, 0.0);
    }

    #[test]
    fn transmission_limits() {
        let geom = PulseGeometry::default();
        assert!((homodyne_slit_transmission(&geom, 1e3) - 1.0).abs() < 1e-15);
        let small = homodyne_slit_transmission(&geom, 1e-8);
        assert!((small / 1e-8 - geom.tau / (2.0 * PI.sqrt())).abs() < 1e-6);
        let omega = omega_for_transmission(&geom, 0.3).unwrap();
        assert!((homodyne_slit_transmission(&geom, omega) - 0.3).abs() < 1e-12);
    }
}
