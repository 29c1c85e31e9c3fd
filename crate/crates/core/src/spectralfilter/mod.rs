//! Detection averages through a spectral slit of finite width, beyond the
//! narrow-filter approximation.

mod kernel;
mod mask;
mod moments;

pub use kernel::{time_kernels, GaussianTerm, KernelTag, TimeKernel};
pub use mask::SpectralMask;
pub use moments::{
    homodyne_slit_transmission, omega_for_transmission, spectral_moment, spectral_moment_numeric, wigner_full,
    FullFilter,
};
