use crate::error::{ensure, Error, Result};

/// Piecewise-constant spectral transmission: zero outside the listed
/// disjoint, sorted `(lo, hi, value)` segments.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMask {
    segments: Vec<(f64, f64, f64)>,
}

impl SpectralMask {
    pub fn new(mut segments: Vec<(f64, f64, f64)>) -> Result<Self> {
        segments.retain(|&(lo, hi, _)| hi > lo);
        segments.sort_by(|a, b| a.0.total_cmp(&b.0));
        for &(lo, hi, value) in &segments {
            ensure((0.0..=1.0).contains(&value), "T(omega)", value, "must lie in [0, 1]")?;
            ensure(!lo.is_nan() && !hi.is_nan(), "segment bound", f64::NAN, "must be a number")?;
        }
        if segments.windows(2).any(|w| w[1].0 < w[0].1) {
            return Err(Error::Shape("mask segments overlap".into()));
        }
        Ok(Self { segments })
    }

    pub fn all_pass() -> Self {
        Self { segments: vec![(f64::NEG_INFINITY, f64::INFINITY, 1.0)] }
    }

    /// Rectangular slit of full width `omega` centered on the carrier.
    pub fn slit(omega: f64) -> Result<Self> {
        ensure(omega > 0.0, "Omega", omega, "must be positive")?;
        Self::new(vec![(-0.5 * omega, 0.5 * omega, 1.0)])
    }

    pub fn segments(&self) -> &[(f64, f64, f64)] {
        &self.segments
    }

    pub fn value(&self, omega: f64) -> f64 {
        self.segments
            .iter()
            .find(|&&(lo, hi, _)| omega >= lo && omega < hi)
            .map_or(0.0, |s| s.2)
    }

    /// Filters in series: the transmission is the pointwise product.
    pub fn compose(&self, other: &Self) -> Self {
        let mut segments = Vec::new();
        for &(a_lo, a_hi, a) in &self.segments {
            for &(b_lo, b_hi, b) in &other.segments {
                let (lo, hi) = (a_lo.max(b_lo), a_hi.min(b_hi));
                if hi > lo {
                    segments.push((lo, hi, a * b));
                }
            }
        }
        segments.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self { segments }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slit_values() {
        let s = SpectralMask::slit(0.02).unwrap();
        assert_eq!(s.value(0.0), 1.0);
        assert_eq!(s.value(0.011), 0.0);
        assert_eq!(SpectralMask::all_pass().value(1e9), 1.0);
    }

    #[test]
    fn composition_is_pointwise_product() {
        let a = SpectralMask::new(vec![(-1.0, 0.5, 0.8), (0.5, 2.0, 0.4)]).unwrap();
        let b = SpectralMask::new(vec![(-0.5, 1.0, 0.5)]).unwrap();
        let ab = a.compose(&b);
        for i in -30..30 {
            let w = 0.1 * i as f64 + 0.013;
            assert!((ab.value(w) - a.value(w) * b.value(w)).abs() < 1e-15);
        }
        assert_eq!(a.compose(&SpectralMask::all_pass()), a);
    }

    #[test]
    fn invalid_masks() {
        assert!(SpectralMask::new(vec![(0.0, 1.0, 1.5)]).is_err());
        assert!(SpectralMask::new(vec![(0.0, 1.0, 0.5), (0.5, 2.0, 0.5)]).is_err());
        assert!(SpectralMask::slit(0.0).is_err());
    }
}
