//! Detection-averaged quantities in the narrow-filter limit, where the
//! spectral slit is narrow enough that averages of products reduce to
//! products of averages.

use super::geometry::{FilterChain, PulseGeometry};
use super::series::{series_tables, SeriesTables, DEFAULT_SERIES_TOL, MAX_QLE0};
use crate::conditioning::{wigner_coeffs, AveragedMoments, ConditionalState, WignerForm};
use crate::error::Result;
use crate::modecore::{clamped_sqrt, squeeze_convert, ModeReduction};
use crate::numeric::bisect;

/// Detection probabilities above this trigger a warning: the single-click
/// model assumes far less than one photon per pulse at the detector.
pub const PTOT_WARN: f64 = 0.1;

/// Radicands of `β²` below this fraction of their leading terms are rounding noise.
const BETA_REL_FLOOR: f64 = 1e-13;

pub fn modered_from_tables(t: &SeriesTables) -> Result<ModeReduction> {
    let excess = t.eta2_minus_one();
    let eta2 = 1.0 + excess;
    let eta_alpha = t.eta_alpha();
    let eta = eta2.sqrt();
    // η²β² = (η² - 1)η² - (ηα)², which vanishes exactly for a uniform pump
    let leading = excess * eta2;
    let mut numerator = leading - eta_alpha * eta_alpha;
    if numerator.abs() <= BETA_REL_FLOOR * leading {
        numerator = 0.0;
    }
    let beta = clamped_sqrt(numerator / eta2, "beta^2 = eta^2 - alpha^2 - 1")?;
    Ok(ModeReduction { eta, alpha: eta_alpha / eta, beta, phase: 0.0 })
}

pub fn modered_from_pulse(geom: &PulseGeometry) -> Result<ModeReduction> {
    modered_from_tables(&series_tables(geom, DEFAULT_SERIES_TOL)?)
}

pub fn ptot_from_tables(t: &SeriesTables, fc: &FilterChain) -> f64 {
    let p_tot = fc.scale() * t.dq();
    if p_tot >= PTOT_WARN {
        log::warn!("detection probability per pulse {p_tot:.3} is not small; single-click conditioning assumes P_tot << 1");
    }
    p_tot
}

/// Average detection probability per pulse through a narrow slit.
pub fn ptot_narrow(geom: &PulseGeometry, fc: &FilterChain) -> Result<f64> {
    fc.validate()?;
    Ok(ptot_from_tables(&series_tables(geom, DEFAULT_SERIES_TOL)?, fc))
}

/// Averaged detection amplitudes `(γ̄, δ̄)`; `δ̄ = 0` when `β = 0`.
pub fn narrowfilter_from_tables(t: &SeriesTables, mr: &ModeReduction, fc: &FilterChain) -> (f64, f64) {
    let amp = fc.scale().sqrt();
    let gamma = amp * t.cr() / mr.eta;
    if mr.is_single_mode() {
        return (gamma, 0.0);
    }
    let delta = (amp * t.dr() - mr.alpha * gamma) / mr.beta;
    (gamma, delta)
}

pub fn narrowfilter_coeffs(geom: &PulseGeometry, fc: &FilterChain) -> Result<(f64, f64)> {
    fc.validate()?;
    let t = series_tables(geom, DEFAULT_SERIES_TOL)?;
    Ok(narrowfilter_from_tables(&t, &modered_from_tables(&t)?, fc))
}

/// Everything the narrow-filter model produces for one geometry, before losses.
#[derive(Debug, Clone, PartialEq)]
pub struct NarrowFilter {
    pub tables: SeriesTables,
    pub modered: ModeReduction,
    pub gamma_bar: f64,
    pub delta_bar: f64,
    pub p_tot: f64,
    pub moments: AveragedMoments,
    pub state: ConditionalState,
    pub wigner: WignerForm,
}

impl NarrowFilter {
    pub fn evaluate(geom: &PulseGeometry, fc: &FilterChain) -> Result<Self> {
        fc.validate()?;
        let tables = series_tables(geom, DEFAULT_SERIES_TOL)?;
        let modered = modered_from_tables(&tables)?;
        let (gamma_bar, delta_bar) = narrowfilter_from_tables(&tables, &modered, fc);
        let p_tot = ptot_from_tables(&tables, fc);
        let moments = AveragedMoments::from_amplitudes(gamma_bar.into(), delta_bar.into(), p_tot);
        let state = moments.state()?;
        let wigner = wigner_coeffs(&modered, &moments)?;
        Ok(Self { tables, modered, gamma_bar, delta_bar, p_tot, moments, state, wigner })
    }

    pub fn xi_bar(&self) -> f64 {
        self.state.xi
    }

    pub fn theta_bar(&self) -> f64 {
        self.state.theta
    }

    pub fn theta0(&self) -> f64 {
        self.modered.theta0()
    }
}

pub fn wigner_narrow(geom: &PulseGeometry, fc: &FilterChain) -> Result<WignerForm> {
    Ok(NarrowFilter::evaluate(geom, fc)?.wigner)
}

/// Squeezing `s = exp(-2r)` produced by a geometry.
pub fn squeezing_of(geom: &PulseGeometry) -> Result<f64> {
    Ok(squeeze_convert(&modered_from_pulse(geom)?).s)
}

/// Pump strength `qlE0` in `[0, 2]` at which the geometry produces squeezing `target_s`.
pub fn solve_pump_amplitude(geom: &PulseGeometry, target_s: f64) -> Result<f64> {
    crate::error::ensure(target_s > 0.0 && target_s <= 1.0, "s", target_s, "must lie in (0, 1]")?;
    if target_s == 1.0 {
        return Ok(0.0);
    }
    bisect(|q| Ok(squeezing_of(&geom.with_qle0(q))? - target_s), 0.0, MAX_QLE0, 1e-15, 1e-13)
}
