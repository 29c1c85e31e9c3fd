use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("mode vector is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("inconsistent transform: negative radicand {radicand:e} in {quantity}")]
    Inconsistent { quantity: &'static str, radicand: f64 },

    #[error("variances violate the uncertainty relation: V_x * V_p = {product}")]
    UncertaintyViolation { product: f64 },

    #[error("detection probability is zero")]
    NoDetection,

    #[error("pole in {quantity}: angle {angle} has vanishing tangent")]
    Pole { quantity: &'static str, angle: f64 },

    #[error("series did not converge within {max_order} terms (last relative term {last_term:e})")]
    Truncation { max_order: usize, last_term: f64 },

    #[error("root not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("quadrature did not reach tolerance: value {value}, estimated error {error:e}")]
    Quadrature { value: f64, error: f64 },

    #[error("optimizer failed: {0}")]
    Optimizer(String),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },

    #[error("operation not supported for this pulse profile: {0}")]
    UnsupportedProfile(&'static str),
}

pub(crate) fn ensure(cond: bool, name: &'static str, value: f64, reason: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value, reason })
    }
}
