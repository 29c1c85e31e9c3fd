//! Conditioning on a single photon detection: detection coefficients, the
//! conditional two-mode state, its Wigner function, losses and the
//! empirical photon-subtraction model.

mod detection;
mod empirical;
mod oracle;
mod state;
mod wigner;

pub use detection::{detection_coeffs, DetectionCoeffs};
pub use empirical::{
    empirical_coeffs, equivalent_bs_ratio, fit_empirical, section_error, EmpiricalForm, EmpiricalParams, FitSettings,
};
pub use oracle::oracle_wigner_numeric;
pub use state::{average_moments, conditional_state, density_matrix, AveragedMoments, ConditionalState};
pub use wigner::{
    apply_losses, eval_wigner, grid_minimum, integrate_wigner, wigner_coeffs, LossChain, WignerForm,
};
