use super::wigner::{apply_losses, eval_wigner, LossChain, WignerForm};
use crate::error::{Error, Result};
use crate::modecore::{
    modered_from_squeeze, modered_from_variances, squeeze_convert, variances_from_modered, QuadVariances, SqueezeSpec,
};
use crate::numeric::{golden_section, linspace};

/// Empirical-model Wigner form; `degenerate` marks vacuum input where the
/// model has no photon-added part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalForm {
    pub form: WignerForm,
    pub degenerate: bool,
}

pub fn empirical_coeffs(v: &QuadVariances, xi: f64) -> Result<EmpiricalForm> {
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::InvalidParameter { name: "xi", value: xi, reason: "must lie in [0, 1]" });
    }
    let excess = v.vx + v.vp - 2.0;
    if excess <= 0.0 {
        return Ok(EmpiricalForm { form: WignerForm::squeezed_vacuum(v), degenerate: true });
    }
    let a = xi * (v.vx - 1.0).powi(2) / excess;
    let b = xi * (v.vp - 1.0).powi(2) / excess;
    Ok(EmpiricalForm { form: WignerForm::normalized(a, b, 0.0, v), degenerate: false })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalParams {
    pub xi_emp: f64,
    /// NDOPA gain ratio used by the model; the source value unless fitted.
    pub g_emp: f64,
    pub g_fitted: bool,
    /// RMS section deviation in percent of `max |W_target|`.
    pub fit_error: f64,
}

/// Section grid and optimizer settings for [`fit_empirical`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitSettings {
    pub half_width: f64,
    pub points: usize,
    pub x_tol: f64,
    pub g_max: f64,
}

impl Default for FitSettings {
    fn default() -> Self {
        Self { half_width: 4.0, points: 161, x_tol: 1e-7, g_max: 2.0 }
    }
}

/// RMS deviation of `model` from `target` along `(x, 0)` and `(0, p)`,
/// as a percentage of the largest `|W_target|` on those sections.
pub fn section_error(target: &WignerForm, model: &WignerForm, settings: &FitSettings) -> f64 {
    let axis = linspace(-settings.half_width, settings.half_width, settings.points);
    let mut scale: f64 = 0.0;
    let mut sum_sq = 0.0;
    for &t in &axis {
        for (x, p) in [(t, 0.0), (0.0, t)] {
            let w = eval_wigner(target, x, p);
            scale = scale.max(w.abs());
            sum_sq += (eval_wigner(model, x, p) - w).powi(2);
        }
    }
    100.0 * (sum_sq / (2 * axis.len()) as f64).sqrt() / scale
}

/// Fit the empirical model to `target`.
///
/// `source` holds the lossless variances of the multimode state; the model is
/// built from them (or from the same DOPA squeezing with a refitted NDOPA gain
/// when `fit_g` is set) and passed through `losses` before comparison.
pub fn fit_empirical(
    target: &WignerForm,
    source: &QuadVariances,
    losses: &LossChain,
    fit_g: bool,
    settings: &FitSettings,
) -> Result<EmpiricalParams> {
    let spec = squeeze_convert(&modered_from_variances(source)?);
    let g_source = spec.g.ratio().unwrap_or(0.0);

    let fit_xi = |v: &QuadVariances| -> Result<(f64, f64)> {
        let cost = |xi: f64| match empirical_coeffs(v, xi) {
            Ok(e) => section_error(target, &apply_losses(&e.form, losses), settings),
            Err(_) => f64::NAN,
        };
        let best = golden_section(cost, 0.0, 1.0, settings.x_tol)?;
        Ok((best.x, best.value))
    };

    if !fit_g {
        let (xi_emp, fit_error) = fit_xi(source)?;
        return Ok(EmpiricalParams { xi_emp, g_emp: g_source, g_fitted: false, fit_error });
    }
    if !(spec.r > 0.0) {
        return Err(Error::Optimizer("NDOPA gain ratio is undefined without DOPA squeezing".into()));
    }
    let variances_for = |g: f64| -> Result<QuadVariances> {
        Ok(variances_from_modered(&modered_from_squeeze(&SqueezeSpec::new(spec.r, g)?)))
    };
    let mut failure = None;
    let best = golden_section(
        |g| match variances_for(g).and_then(|v| fit_xi(&v)) {
            Ok((_, err)) => err,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        settings.g_max,
        settings.x_tol,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let g_emp = best?.x;
    let (xi_emp, fit_error) = fit_xi(&variances_for(g_emp)?)?;
    Ok(EmpiricalParams { xi_emp, g_emp, g_fitted: true, fit_error })
}

/// Splitting ratio `rho / tau` of the beamsplitter that maps the empirical
/// mixing angle `theta_0` onto `theta_j` for DOPA squeezing `r`.
pub fn equivalent_bs_ratio(theta_j: f64, theta_0: f64, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::InvalidParameter { name: "r", value: r, reason: "must be >= 0" });
    }
    let cot = |theta: f64| -> Result<f64> {
        let (s, c) = theta.sin_cos();
        if s.abs() < 1e-12 {
            return Err(Error::Pole { quantity: "equivalent beamsplitter ratio", angle: theta });
        }
        Ok(c / s)
    };
    Ok((cot(theta_j)? - cot(theta_0)?) / r.cosh())
}
