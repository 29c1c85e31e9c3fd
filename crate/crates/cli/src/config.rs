use std::path::{Path, PathBuf};

use photosub::conditioning::FitSettings;
use photosub::{FilterChain, LossChain, Profile, PulseGeometry};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub geometry: GeometryConfig,
    pub pulse: PulseConfig,
    pub filter: FilterConfig,
    pub losses: LossesConfig,
    pub sampling: SamplingConfig,
    pub fit: FitConfig,
    pub sweep: SweepConfig,
    pub validate: ValidateConfig,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileName {
    Gaussian,
    Uniform,
    TemporalOnly,
}

impl From<ProfileName> for Profile {
    fn from(p: ProfileName) -> Self {
        match p {
            ProfileName::Gaussian => Profile::Gaussian,
            ProfileName::Uniform => Profile::Uniform,
            ProfileName::TemporalOnly => Profile::TemporalOnly,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryConfig {
    /// Homodyne waist.
    pub w_um: f64,
    /// Pump waist over homodyne waist, `w_P / w`.
    pub wp_ratio: f64,
    /// Detection fiber mode waist over homodyne waist, `w_f / w`.
    pub wf_ratio: f64,
    pub profile: ProfileName,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self { w_um: 120.0, wp_ratio: 1.0 / 1.2, wf_ratio: 1.0 / 1.5, profile: ProfileName::Gaussian }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PulseConfig {
    pub tau_fs: f64,
    pub tau_p_fs: f64,
    /// Group-velocity walk-off in the SHG crystal, used only by the effective pump fit.
    pub tau_g_fs: f64,
}

impl Default for PulseConfig {
    fn default() -> Self {
        Self { tau_fs: 150.0, tau_p_fs: 150.0, tau_g_fs: 120.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FilterConfig {
    pub omega_rad_per_fs: f64,
    pub r: f64,
    pub eta_c: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        let fc = FilterChain::default();
        Self { omega_rad_per_fs: fc.omega, r: fc.r, eta_c: fc.eta_c }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LossesConfig {
    pub eta_hom: f64,
}

impl Default for LossesConfig {
    fn default() -> Self {
        Self { eta_hom: 0.93 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SamplingConfig {
    /// Transmission of the tapping beamsplitter seen by the homodyne arm.
    #[serde(rename = "T")]
    pub t: f64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self { t: 0.9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FitConfig {
    pub enable_g: bool,
    pub half_width: f64,
    pub points: usize,
    pub g_max: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        let s = FitSettings::default();
        Self { enable_g: true, half_width: s.half_width, points: s.points, g_max: s.g_max }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub const fn new(from: f64, to: f64, steps: usize) -> Self {
        Self { from, to, steps }
    }
}

/// What fig7 keeps fixed while the pump waist changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fig7Hold {
    /// Re-solve the pump strength so every point has squeezing `sweep.s`.
    S,
    /// Keep the pump strength that gives `sweep.s` at `geometry.wp_ratio`.
    Qle0,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    /// Operating squeezing for fig6, fig7, fig9 and fit-empirical.
    pub s: f64,
    pub fig5: SweepSpec,
    /// Homodyne slit transmission, log-spaced.
    pub fig6: SweepSpec,
    pub fig7: SweepSpec,
    pub fig7_hold: Fig7Hold,
    pub fig8: SweepSpec,
    /// Section coordinate.
    pub fig9: SweepSpec,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            s: 0.56,
            fig5: SweepSpec::new(0.3, 0.95, 40),
            fig6: SweepSpec::new(0.005, 0.6, 30),
            fig7: SweepSpec::new(0.6, 2.0, 29),
            fig7_hold: Fig7Hold::S,
            fig8: SweepSpec::new(0.3, 0.95, 40),
            fig9: SweepSpec::new(-4.0, 4.0, 161),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ValidateConfig {
    /// Randomized draws for the invariant checks.
    pub draws: usize,
    /// Relative perturbation added to the discretized transform. Nonzero
    /// values break the symplectic structure and must make the suite fail.
    pub perturb_symplectic: f64,
}

impl Default for ValidateConfig {
    fn default() -> Self {
        Self { draws: 200, perturb_symplectic: 0.0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Geometry with `qlE0 = 0`; sweeps fill in the pump strength.
    pub fn geometry(&self) -> PulseGeometry {
        let g = &self.geometry;
        PulseGeometry {
            w: g.w_um,
            w_p: g.wp_ratio * g.w_um,
            w_f: g.wf_ratio * g.w_um,
            tau: self.pulse.tau_fs,
            tau_p: self.pulse.tau_p_fs,
            tau_g: self.pulse.tau_g_fs,
            qle0: 0.0,
            profile: g.profile.into(),
        }
    }

    pub fn filter(&self) -> FilterChain {
        FilterChain { omega: self.filter.omega_rad_per_fs, r: self.filter.r, eta_c: self.filter.eta_c }
    }

    pub fn losses(&self) -> LossChain {
        LossChain { eta_hom: self.losses.eta_hom, t: self.sampling.t }
    }

    pub fn fit_settings(&self) -> FitSettings {
        FitSettings { half_width: self.fit.half_width, points: self.fit.points, g_max: self.fit.g_max, ..FitSettings::default() }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |what: &str, e: photosub::Error| CliError::Config(format!("{what}: {e}"));
        self.geometry().validate().map_err(|e| bad("geometry", e))?;
        self.filter().validate().map_err(|e| bad("filter", e))?;
        LossChain::new(self.losses.eta_hom, self.sampling.t).map_err(|e| bad("losses", e))?;
        check(self.sweep.s > 0.0 && self.sweep.s < 1.0, "sweep.s must lie in (0, 1)")?;
        check(self.fit.half_width > 0.0 && self.fit.points >= 3, "fit.half_width must be positive and fit.points >= 3")?;
        check(self.fit.g_max > 0.0, "fit.g_max must be positive")?;
        check(self.validate.draws >= 1, "validate.draws must be >= 1")?;
        check(self.validate.perturb_symplectic >= 0.0, "validate.perturb_symplectic must be >= 0")?;
        let sw = &self.sweep;
        for (name, spec, lo, hi) in [
            ("fig5", sw.fig5, 0.0, 1.0),
            ("fig6", sw.fig6, 0.0, 1.0),
            ("fig7", sw.fig7, 0.0, f64::INFINITY),
            ("fig8", sw.fig8, 0.0, 1.0),
            ("fig9", sw.fig9, f64::NEG_INFINITY, f64::INFINITY),
        ] {
            check(spec.steps >= 2, &format!("sweep.{name}.steps must be >= 2"))?;
            check(spec.from < spec.to, &format!("sweep.{name}: from must be below to"))?;
            check(spec.from > lo && spec.to < hi, &format!("sweep.{name}: bounds must lie in ({lo}, {hi})"))?;
        }
        Ok(())
    }
}

fn check(ok: bool, msg: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Config(msg.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_toml() {
        let cfg = ExperimentConfig::default();
        assert_eq!(ExperimentConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
        let g = cfg.geometry();
        assert!((g.w_p - 100.0).abs() < 1e-12 && (g.w_f - 80.0).abs() < 1e-12);
    }

    #[test]
    fn dotted_keys_and_partial_files() {
        let cfg = ExperimentConfig::from_toml("geometry.w_um = 150.0\nsampling.T = 0.8\nsweep.fig7_hold = \"qle0\"\n").unwrap();
        assert_eq!(cfg.geometry.w_um, 150.0);
        assert_eq!(cfg.sampling.t, 0.8);
        assert_eq!(cfg.sweep.fig7_hold, Fig7Hold::Qle0);
        assert_eq!(cfg.pulse, PulseConfig::default());
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "geometry.waist = 3.0",
            "losses.eta_hom = 1.5",
            "sweep.fig5 = { from = 0.9, to = 0.3, steps = 10 }",
            "sweep.fig6 = { from = 0.01, to = 0.5, steps = 1 }",
            "geometry.profile = \"square\"",
        ] {
            assert!(matches!(ExperimentConfig::from_toml(text), Err(CliError::Config(_))), "{text}");
        }
    }
}
