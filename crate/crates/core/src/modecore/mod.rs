//! Finite-mode Bogoliubov transforms and the reduction of a homodyne mode
//! to the effective two-mode form `eta a_0 + alpha a_0† + beta a_1†`.

mod bogoliubov;
mod params;
mod reduction;

pub use bogoliubov::{check_symplectic, FiniteBogoliubov, ModeVector};
pub use params::{
    modered_from_squeeze, modered_from_variances, squeeze_convert, variances_from_modered, GainRatio,
    QuadVariances, SqueezeSpec,
};
pub use reduction::{mode_reduce, ModeReduction, RADICAND_CLAMP};
pub(crate) use reduction::effective_modes;
pub(crate) use reduction::clamped_sqrt;
