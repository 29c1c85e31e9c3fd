//! Spatio-temporal gaussian pulse model: series expansion in the pump field,
//! closed-form moments, narrow-filter averages, walk-off and quadrature oracles.

mod discretize;
mod geometry;
mod gvm;
mod narrow;
mod oracle;
mod series;

pub use discretize::{discretize_temporal, DiscreteModel};
pub use geometry::{FilterChain, Profile, PulseGeometry};
pub use gvm::{effective_pump, EffectivePump};
pub use narrow::{
    modered_from_pulse, modered_from_tables, narrowfilter_coeffs, narrowfilter_from_tables, ptot_from_tables,
    ptot_narrow, solve_pump_amplitude, squeezing_of, wigner_narrow, NarrowFilter, PTOT_WARN,
};
pub use oracle::{quadrature_oracle, OracleQuantity};
pub use series::{
    moment, series_tables, spatial_factor, taylor_coeffs, temporal_factor, MomentKind, SeriesTables,
    DEFAULT_SERIES_TOL, MAX_QLE0, MAX_SERIES_ORDER,
};
