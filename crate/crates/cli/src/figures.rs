use std::fmt;

use photosub::conditioning::{empirical_coeffs, fit_empirical, EmpiricalParams};
use photosub::modecore::{modered_from_squeeze, squeeze_convert, variances_from_modered, ModeReduction, SqueezeSpec};
use photosub::numeric::{linspace, logspace};
use photosub::pulsemodel::solve_pump_amplitude;
use photosub::spectralfilter::omega_for_transmission;
use photosub::{apply_losses, eval_wigner, ConditionalState, FullFilter, NarrowFilter, PulseGeometry, WignerForm};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, Fig7Hold};
use crate::error::CliError;
use crate::result::{Metadata, SweepResult, SweepRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
            Figure::Fig7 => "fig7",
            Figure::Fig8 => "fig8",
            Figure::Fig9 => "fig9",
        };
        f.write_str(name)
    }
}

impl Figure {
    pub const ALL: [Figure; 5] = [Figure::Fig5, Figure::Fig6, Figure::Fig7, Figure::Fig8, Figure::Fig9];

    pub fn x_label(self) -> &'static str {
        match self {
            Figure::Fig5 | Figure::Fig8 => "squeezing s",
            Figure::Fig6 => "homodyne slit transmission",
            Figure::Fig7 => "pump waist ratio w_P/w",
            Figure::Fig9 => "section coordinate (x in W(x,0), p in W(0,p))",
        }
    }
}

pub fn metadata(cfg: &ExperimentConfig, command: &str, x_label: &str) -> Metadata {
    Metadata {
        command: command.to_string(),
        x_label: x_label.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        config: cfg.to_toml(),
    }
}

fn gain_ratio(mr: &ModeReduction) -> Result<f64, CliError> {
    let spec = squeeze_convert(mr);
    let undefined = photosub::Error::InvalidParameter { name: "g", value: f64::INFINITY, reason: "undefined without DOPA squeezing" };
    spec.g.ratio().ok_or(CliError::Numeric(undefined))
}

fn row(x: f64, mr: &ModeReduction, state: &ConditionalState, wigner: &WignerForm, cfg: &ExperimentConfig) -> Result<SweepRow, CliError> {
    let w = apply_losses(wigner, &cfg.losses());
    Ok(SweepRow {
        x,
        w00: w.at_origin(),
        xi_bar: state.xi,
        theta_bar: state.theta,
        theta0: mr.theta0(),
        vx: w.vx,
        vp: w.vp,
        c: w.c,
        g: gain_ratio(mr)?,
        s: squeeze_convert(mr).s,
    })
}

fn narrow_row(x: f64, geom: &PulseGeometry, cfg: &ExperimentConfig) -> Result<SweepRow, CliError> {
    let nf = NarrowFilter::evaluate(geom, &cfg.filter())?;
    row(x, &nf.modered, &nf.state, &nf.wigner, cfg)
}

/// Geometry at the operating squeezing `sweep.s`.
pub fn operating_geometry(cfg: &ExperimentConfig) -> Result<PulseGeometry, CliError> {
    let g = cfg.geometry();
    Ok(g.with_qle0(solve_pump_amplitude(&g, cfg.sweep.s)?))
}

fn par_rows<F>(xs: Vec<f64>, f: F) -> Result<Vec<SweepRow>, CliError>
where
    F: Fn(f64) -> Result<SweepRow, CliError> + Send + Sync,
{
    xs.into_par_iter().map(f).collect()
}

fn s_sweep(cfg: &ExperimentConfig, spec: crate::config::SweepSpec) -> Result<Vec<SweepRow>, CliError> {
    let base = cfg.geometry();
    par_rows(linspace(spec.from, spec.to, spec.steps), |s| {
        let geom = base.with_qle0(solve_pump_amplitude(&base, s)?);
        narrow_row(s, &geom, cfg)
    })
}

pub fn run_figure(cfg: &ExperimentConfig, fig: Figure) -> Result<SweepResult, CliError> {
    cfg.validate()?;
    let meta = metadata(cfg, &fig.to_string(), fig.x_label());
    log::info!("running {fig}");
    let rows = match fig {
        Figure::Fig5 => s_sweep(cfg, cfg.sweep.fig5)?,
        Figure::Fig8 => s_sweep(cfg, cfg.sweep.fig8)?,
        Figure::Fig6 => {
            let geom = operating_geometry(cfg)?;
            let spec = cfg.sweep.fig6;
            par_rows(logspace(spec.from, spec.to, spec.steps), |t| {
                let ff = FullFilter::evaluate(&geom, &cfg.filter(), omega_for_transmission(&geom, t)?)?;
                row(ff.transmission, &ff.modered, &ff.state, &ff.wigner, cfg)
            })?
        }
        Figure::Fig7 => {
            let base = cfg.geometry();
            let fixed = operating_geometry(cfg)?.qle0;
            let spec = cfg.sweep.fig7;
            par_rows(linspace(spec.from, spec.to, spec.steps), |ratio| {
                let g = base.with_pump_ratio(ratio);
                let qle0 = match cfg.sweep.fig7_hold {
                    Fig7Hold::S => solve_pump_amplitude(&g, cfg.sweep.s)?,
                    Fig7Hold::Qle0 => fixed,
                };
                narrow_row(ratio, &g.with_qle0(qle0), cfg)
            })?
        }
        Figure::Fig9 => return sections(cfg, meta),
    };
    Ok(SweepResult::from_sweep(meta, &rows))
}

/// Target state and its empirical fits at the operating point.
pub struct EmpiricalFits {
    pub target: WignerForm,
    pub xi_only: EmpiricalParams,
    pub xi_and_g: Option<EmpiricalParams>,
    source_r: f64,
}

impl EmpiricalFits {
    /// Loss-applied Wigner function of the fitted empirical model.
    pub fn model(&self, fit: &EmpiricalParams, cfg: &ExperimentConfig) -> Result<WignerForm, CliError> {
        let v = variances_from_modered(&modered_from_squeeze(&SqueezeSpec::new(self.source_r, fit.g_emp)?));
        Ok(apply_losses(&empirical_coeffs(&v, fit.xi_emp)?.form, &cfg.losses()))
    }
}

pub fn empirical_fits(cfg: &ExperimentConfig) -> Result<EmpiricalFits, CliError> {
    cfg.validate()?;
    let nf = NarrowFilter::evaluate(&operating_geometry(cfg)?, &cfg.filter())?;
    let losses = cfg.losses();
    let target = apply_losses(&nf.wigner, &losses);
    let source = variances_from_modered(&nf.modered);
    let settings = cfg.fit_settings();
    let (xi_only, xi_and_g) = rayon::join(
        || fit_empirical(&target, &source, &losses, false, &settings),
        || cfg.fit.enable_g.then(|| fit_empirical(&target, &source, &losses, true, &settings)),
    );
    Ok(EmpiricalFits {
        target,
        xi_only: xi_only?,
        xi_and_g: xi_and_g.transpose()?,
        source_r: squeeze_convert(&nf.modered).r,
    })
}

pub fn run_fit(cfg: &ExperimentConfig) -> Result<SweepResult, CliError> {
    let fits = empirical_fits(cfg)?;
    let meta = metadata(cfg, "fit-empirical", "fit_g (0: xi only, 1: xi and g)");
    let rows = [Some(fits.xi_only), fits.xi_and_g]
        .into_iter()
        .flatten()
        .map(|p| vec![f64::from(u8::from(p.g_fitted)), p.xi_emp, p.g_emp, p.fit_error])
        .collect();
    Ok(SweepResult { meta, columns: ["x", "xi_emp", "g_emp", "fit_error_pct"].map(String::from).to_vec(), rows })
}

fn sections(cfg: &ExperimentConfig, meta: Metadata) -> Result<SweepResult, CliError> {
    let fits = empirical_fits(cfg)?;
    let mut forms = vec![("W", fits.target)];
    forms.push(("emp_xi", fits.model(&fits.xi_only, cfg)?));
    if let Some(p) = &fits.xi_and_g {
        forms.push(("emp_xi_g", fits.model(p, cfg)?));
    }
    let mut columns = vec!["x".to_string()];
    for (name, _) in &forms {
        columns.push(format!("{name}_x0"));
        columns.push(format!("{name}_0p"));
    }
    let spec = cfg.sweep.fig9;
    let rows = linspace(spec.from, spec.to, spec.steps)
        .into_iter()
        .map(|t| {
            let mut r = vec![t];
            for (_, w) in &forms {
                r.push(eval_wigner(w, t, 0.0));
                r.push(eval_wigner(w, 0.0, t));
            }
            r
        })
        .collect();
    Ok(SweepResult { meta, columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SweepSpec;

    fn small() -> ExperimentConfig {
        let mut cfg = ExperimentConfig::default();
        cfg.sweep.fig5 = SweepSpec::new(0.4, 0.9, 4);
        cfg.sweep.fig6 = SweepSpec::new(0.01, 0.3, 4);
        cfg.sweep.fig7 = SweepSpec::new(0.8, 1.6, 3);
        cfg.sweep.fig8 = SweepSpec::new(0.5, 0.6, 2);
        cfg.sweep.fig9 = SweepSpec::new(-2.0, 2.0, 5);
        cfg
    }

    #[test]
    fn every_row_is_a_valid_wigner_form() {
        let cfg = small();
        for fig in [Figure::Fig5, Figure::Fig6, Figure::Fig7, Figure::Fig8] {
            let res = run_figure(&cfg, fig).unwrap();
            let rows = res.sweep_rows().unwrap();
            assert!(rows.len() >= 2);
            for r in rows {
                assert!(r.to_vec().iter().all(|v| v.is_finite()));
                assert!(r.w00 >= -1.0 / std::f64::consts::PI);
                assert!(r.c >= -1.0 && r.vx * r.vp >= 1.0 - 1e-12);
            }
        }
    }

    #[test]
    fn fig7_holds_squeezing() {
        let res = run_figure(&small(), Figure::Fig7).unwrap();
        for r in res.sweep_rows().unwrap() {
            assert!((r.s - 0.56).abs() < 1e-10);
        }
        let mut cfg = small();
        cfg.sweep.fig7_hold = Fig7Hold::Qle0;
        let held = run_figure(&cfg, Figure::Fig7).unwrap().sweep_rows().unwrap();
        assert!(held.windows(2).all(|w| w[1].s < w[0].s));
    }

    #[test]
    fn fig9_sections_meet_at_origin() {
        let res = run_figure(&small(), Figure::Fig9).unwrap();
        let mid = &res.rows[2];
        assert_eq!(mid[0], 0.0);
        for pair in mid[1..].chunks(2) {
            assert_eq!(pair[0], pair[1]);
        }
    }
}
