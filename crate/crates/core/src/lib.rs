//! Multimode model of photon subtraction from pulsed squeezed light.
//!
//! A pulsed degenerate parametric amplifier is described by a finite
//! Bogoliubov transform. The homodyne mode reduces to two effective modes
//! ([`modecore`]); conditioning on one click in a filtered detection arm
//! yields a mixture of vacuum and a single photon shared between them, whose
//! Wigner function has a closed form ([`conditioning`]). [`pulsemodel`]
//! evaluates everything for gaussian spatio-temporal profiles in the
//! narrow-filter limit and [`spectralfilter`] lifts that limit.
//!
//! ```
//! use photosub::{apply_losses, FilterChain, LossChain, NarrowFilter, PulseGeometry};
//!
//! let geom = PulseGeometry::baseline();
//! let qle0 = photosub::pulsemodel::solve_pump_amplitude(&geom, 0.56)?;
//! let nf = NarrowFilter::evaluate(&geom.with_qle0(qle0), &FilterChain::default())?;
//! let w = apply_losses(&nf.wigner, &LossChain::new(0.93, 0.9)?);
//! assert!(w.at_origin() < 0.0);
//! # Ok::<(), photosub::Error>(())
//! ```

pub mod conditioning;
pub mod error;
pub mod modecore;
pub mod numeric;
pub mod pulsemodel;
pub mod spectralfilter;

pub use conditioning::{
    apply_losses, eval_wigner, AveragedMoments, ConditionalState, DetectionCoeffs, EmpiricalParams, LossChain,
    WignerForm,
};
pub use error::{Error, Result};
pub use modecore::{FiniteBogoliubov, ModeReduction, ModeVector, QuadVariances, SqueezeSpec};
pub use pulsemodel::{FilterChain, NarrowFilter, Profile, PulseGeometry};
pub use spectralfilter::{FullFilter, SpectralMask};
