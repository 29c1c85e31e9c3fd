//! Taylor expansion of the pump-induced transform in powers of the
//! normalized pump field `e_P`, and the closed-form gaussian moments that
//! multiply each order.
//!
//! With `k = 2 qlE0`:
//! `u² = Σ b_m e_P^m`, `u v = Σ c_m e_P^m`, `v² = Σ d_m e_P^m`.

use std::f64::consts::{PI, SQRT_2};

use super::geometry::PulseGeometry;
use crate::error::{ensure, Error, Result};

pub const DEFAULT_SERIES_TOL: f64 = 1e-12;
pub const MAX_SERIES_ORDER: usize = 200;
/// Largest pump strength accepted by the series evaluation.
pub const MAX_QLE0: f64 = 2.0;

/// Which moment of the field overlaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentKind {
    /// `∫ e_h² e_P^m`: homodyne mode against itself.
    P,
    /// `(1/4π²) ∫ φ_s² e_P^m`: fiber mode against itself.
    Q,
    /// `(1/2π) ∫ e_h φ_s e_P^m`: cross overlap.
    R,
}

/// Transverse overlap factor of order `m`.
pub fn spatial_factor(geom: &PulseGeometry, kind: MomentKind, m: usize) -> f64 {
    if !geom.profile.spatial_gaussian() {
        return 1.0;
    }
    let m = m as f64;
    let (w2, wp2, wf2) = (geom.w * geom.w, geom.w_p * geom.w_p, geom.w_f * geom.w_f);
    match kind {
        MomentKind::P => 2.0 * wp2 / (2.0 * wp2 + m * w2),
        MomentKind::Q => 2.0 * wp2 / (2.0 * wp2 + m * wf2),
        MomentKind::R => 2.0 / (geom.w * geom.w_f * (1.0 / w2 + 1.0 / wf2 + m / wp2)),
    }
}

/// Temporal overlap factor of order `m` (fs^{1/2} for `R`, fs for `Q`).
///
/// `Q` at `m = 0` diverges for a gaussian pump; it only ever multiplies
/// `d_0 = 0`, so 0 is returned.
pub fn temporal_factor(geom: &PulseGeometry, kind: MomentKind, m: usize) -> f64 {
    if !geom.profile.temporal_gaussian() {
        return 1.0;
    }
    let mf = m as f64;
    let (tau, tau_p) = (geom.tau, geom.tau_p);
    match kind {
        MomentKind::P => SQRT_2 * tau_p / (2.0 * tau_p * tau_p + mf * tau * tau).sqrt(),
        MomentKind::Q if m == 0 => 0.0,
        MomentKind::Q => PI.sqrt() * tau_p / (2.0 * mf).sqrt(),
        MomentKind::R => PI.powf(0.25) / (tau.sqrt() * (1.0 / (tau * tau) + mf / (tau_p * tau_p)).sqrt()),
    }
}

/// Closed-form moment `P_m`, `Q_m` or `R_m`.
pub fn moment(geom: &PulseGeometry, kind: MomentKind, m: usize) -> f64 {
    let prefactor = match kind {
        MomentKind::P => 1.0,
        MomentKind::Q => 1.0 / (4.0 * PI * PI),
        MomentKind::R => 1.0 / (2.0 * PI),
    };
    prefactor * spatial_factor(geom, kind, m) * temporal_factor(geom, kind, m)
}

/// Expansion coefficients and moments up to the truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTables {
    pub order: usize,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub r: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl SeriesTables {
    /// `η² = Σ b_m P_m`.
    pub fn eta2(&self) -> f64 {
        dot(&self.b, &self.p)
    }

    /// `η² - 1 = Σ d_m P_m`, summed without the cancellation against 1.
    pub fn eta2_minus_one(&self) -> f64 {
        dot(&self.d, &self.p)
    }

    /// `η α = Σ c_m P_m`.
    pub fn eta_alpha(&self) -> f64 {
        dot(&self.c, &self.p)
    }

    /// `Σ d_m Q_m`, the detection probability per unit `η_c R Ω`.
    pub fn dq(&self) -> f64 {
        dot(&self.d, &self.q)
    }

    pub fn cr(&self) -> f64 {
        dot(&self.c, &self.r)
    }

    pub fn dr(&self) -> f64 {
        dot(&self.d, &self.r)
    }
}

/// Taylor coefficients `(b_m, c_m, d_m)` of `u²`, `u v` and `v²` in `e_P`.
pub fn taylor_coeffs(qle0: f64, m: usize) -> (f64, f64, f64) {
    let k = 2.0 * qle0;
    if m == 0 {
        return (1.0, 0.0, 0.0);
    }
    let half_term = 0.5 * (1..=m).fold(1.0, |acc, j| acc * k / j as f64);
    if m % 2 == 0 {
        (half_term, 0.0, half_term)
    } else {
        (0.0, half_term, 0.0)
    }
}

/// Build the tables, truncating once the latest even and odd terms each
/// change `η²`, `ηα` and `P_tot` by less than `tol` relative.
pub fn series_tables(geom: &PulseGeometry, tol: f64) -> Result<SeriesTables> {
    geom.validate()?;
    ensure(geom.qle0 <= MAX_QLE0, "qlE0", geom.qle0, "outside the series convergence domain (qlE0 <= 2)")?;
    ensure(tol > 0.0, "tol", tol, "must be positive")?;
    let k = 2.0 * geom.qle0;
    let mut t = SeriesTables { order: 0, b: vec![], c: vec![], d: vec![], p: vec![], q: vec![], r: vec![] };
    let (mut sum_b, mut sum_c, mut sum_d) = (0.0, 0.0, 0.0);
    let (mut last_even, mut last_odd) = (f64::INFINITY, f64::INFINITY);
    for m in 0..=MAX_SERIES_ORDER {
        let (b, c, d) = taylor_coeffs(geom.qle0, m);
        let (p, q, r) = (moment(geom, MomentKind::P, m), moment(geom, MomentKind::Q, m), moment(geom, MomentKind::R, m));
        t.b.push(b);
        t.c.push(c);
        t.d.push(d);
        t.p.push(p);
        t.q.push(q);
        t.r.push(r);
        sum_b += b * p;
        sum_c += c * p;
        sum_d += d * q;
        let rel = |term: f64, sum: f64| if term == 0.0 { 0.0 } else { (term / sum).abs() };
        if m % 2 == 0 {
            last_even = if m == 0 { f64::INFINITY } else { rel(b * p, sum_b).max(rel(d * q, sum_d)) };
        } else {
            last_odd = rel(c * p, sum_c);
        }
        if m >= 2 && m as f64 > k && last_even < tol && last_odd < tol {
            t.order = m;
            return Ok(t);
        }
    }
    Err(Error::Truncation { max_order: MAX_SERIES_ORDER, last_term: last_even.max(last_odd) })
}
