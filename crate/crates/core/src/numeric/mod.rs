//! Quadrature, root finding and scalar minimization used across the model.

pub mod optimize;
pub mod quad;

pub use optimize::{bisect, golden_section, Minimum};
pub use quad::{integrate, integrate_2d, integrate_infinite, QuadOptions, QuadResult};

/// `n` evenly spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// `n` logarithmically spaced points from `a` to `b` inclusive (`a, b > 0`).
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    linspace(a.ln(), b.ln(), n).into_iter().map(f64::exp).collect()
}
