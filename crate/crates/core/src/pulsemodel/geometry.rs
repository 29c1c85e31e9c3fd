use crate::error::{ensure, Result};

/// Shape of the spatial and temporal field profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Profile {
    /// Gaussian in space and time.
    #[default]
    Gaussian,
    /// Constant over a common support in space and time; the pump acts on
    /// every point with the same strength, which reduces to single-mode squeezing.
    Uniform,
    /// Constant transverse profile, gaussian in time.
    TemporalOnly,
}

impl Profile {
    pub fn spatial_gaussian(self) -> bool {
        self == Profile::Gaussian
    }

    pub fn temporal_gaussian(self) -> bool {
        self != Profile::Uniform
    }
}

/// Waists in μm, durations in fs; `qle0` is the dimensionless pump strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseGeometry {
    pub w: f64,
    pub w_p: f64,
    pub w_f: f64,
    pub tau: f64,
    pub tau_p: f64,
    pub tau_g: f64,
    pub qle0: f64,
    pub profile: Profile,
}

impl PulseGeometry {
    /// `w = 1.2 w_P`, `w_f = w / 1.5`, `tau = tau_P = 150 fs`, `tau_g = 120 fs`.
    pub fn baseline() -> Self {
        let w_p = 100.0;
        let w = 1.2 * w_p;
        Self { w, w_p, w_f: w / 1.5, tau: 150.0, tau_p: 150.0, tau_g: 120.0, qle0: 0.0, profile: Profile::Gaussian }
    }

    /// Pump duration from second-harmonic generation of the homodyne pulse,
    /// `tau_P = tau / sqrt(2)`, before any walk-off broadening.
    pub fn shg_preset() -> Self {
        let g = Self::baseline();
        Self { tau_p: g.tau / std::f64::consts::SQRT_2, ..g }
    }

    pub fn with_qle0(self, qle0: f64) -> Self {
        Self { qle0, ..self }
    }

    pub fn with_profile(self, profile: Profile) -> Self {
        Self { profile, ..self }
    }

    /// Pump waist set to `ratio * w` with the homodyne waist unchanged.
    pub fn with_pump_ratio(self, ratio: f64) -> Self {
        Self { w_p: ratio * self.w, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("w", self.w), ("w_P", self.w_p), ("w_f", self.w_f), ("tau", self.tau), ("tau_P", self.tau_p)] {
            ensure(value > 0.0 && value.is_finite(), name, value, "must be positive")?;
        }
        ensure(self.tau_g >= 0.0, "tau_g", self.tau_g, "must be >= 0")?;
        ensure(self.qle0 >= 0.0, "qlE0", self.qle0, "must be >= 0")
    }
}

impl Default for PulseGeometry {
    fn default() -> Self {
        Self::baseline()
    }
}

/// Conditioning arm: spectral slit width `omega` (rad/fs), sampling
/// reflectivity `r = 1 - T`, and detection efficiency `eta_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterChain {
    pub omega: f64,
    pub r: f64,
    pub eta_c: f64,
}

impl FilterChain {
    pub fn new(omega: f64, r: f64, eta_c: f64) -> Result<Self> {
        let fc = Self { omega, r, eta_c };
        fc.validate()?;
        Ok(fc)
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.omega > 0.0 && self.omega.is_finite(), "Omega", self.omega, "must be positive")?;
        ensure(self.r > 0.0 && self.r < 1.0, "R", self.r, "must lie in (0, 1)")?;
        ensure(self.eta_c > 0.0 && self.eta_c <= 1.0, "eta_c", self.eta_c, "must lie in (0, 1]")
    }

    /// Overall scale `eta_c R Omega` of the detection probability.
    pub fn scale(&self) -> f64 {
        self.eta_c * self.r * self.omega
    }
}

impl Default for FilterChain {
    fn default() -> Self {
        Self { omega: 0.02, r: 0.1, eta_c: 0.3 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let g = PulseGeometry::baseline();
        assert!((g.w / g.w_p - 1.2).abs() < 1e-15);
        assert!((g.w / g.w_f - 1.5).abs() < 1e-15);
        g.validate().unwrap();
        let shg = PulseGeometry::shg_preset();
        assert!((shg.tau_p * 2f64.sqrt() - shg.tau).abs() < 1e-12);
        assert!((g.with_pump_ratio(2.0).w_p - 2.0 * g.w).abs() < 1e-12);
    }

    #[test]
    fn invalid_values() {
        assert!(PulseGeometry { w: 0.0, ..PulseGeometry::default() }.validate().is_err());
        assert!(PulseGeometry::default().with_qle0(-0.1).validate().is_err());
        assert!(FilterChain::new(0.02, 1.0, 0.3).is_err());
        assert!(FilterChain::new(0.0, 0.1, 0.3).is_err());
        assert!(FilterChain::new(0.02, 0.1, 1.3).is_err());
        FilterChain::default().validate().unwrap();
    }
}
