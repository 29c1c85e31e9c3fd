//! Scalar root finding and minimization.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
///
/// Stops once the bracket is narrower than `x_tol`.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, x_tol: f64) -> Result<Minimum> {
    if !(a < b) || !(x_tol > 0.0) {
        return Err(Error::Optimizer(format!("invalid bracket [{a}, {b}] or tolerance {x_tol}")));
    }
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while hi - lo > x_tol {
        if !f1.is_finite() || !f2.is_finite() {
            return Err(Error::Optimizer(format!(
                "objective not finite near x = {x1} / {x2} after {iterations} iterations"
            )));
        }
        if iterations > 500 {
            return Err(Error::Optimizer(format!(
                "no convergence after {iterations} iterations, bracket [{lo}, {hi}]"
            )));
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        iterations += 1;
    }
    // the end points are candidates too: the search must be able to land on
    // a boundary optimum
    let mut best = if f1 <= f2 { Minimum { x: x1, value: f1, iterations } } else { Minimum { x: x2, value: f2, iterations } };
    for edge in [a, b] {
        if (best.x - edge).abs() <= x_tol {
            let fe = f(edge);
            if fe < best.value {
                best = Minimum { x: edge, value: fe, iterations };
            }
        }
    }
    Ok(best)
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
///
/// Terminates when `|f(x)| <= f_tol` or the bracket is narrower than `x_tol`.
pub fn bisect<F: FnMut(f64) -> Result<f64>>(mut f: F, lo: f64, hi: f64, x_tol: f64, f_tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket { lo, hi, f_lo, f_hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid.abs() <= f_tol || hi - lo <= x_tol {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let m = golden_section(|x| (x - 0.3).powi(2), 0.0, 1.0, 1e-10).unwrap();
        assert!((m.x - 0.3).abs() < 1e-9);
        assert!(m.value < 1e-18);
    }

    #[test]
    fn golden_section_reaches_boundary() {
        let m = golden_section(|x| x, 0.0, 1.0, 1e-9).unwrap();
        assert_eq!(m.x, 0.0);
    }

    #[test]
    fn bisect_sqrt_two() {
        let x = bisect(|x| Ok(x * x - 2.0), 0.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn bisect_rejects_missing_sign_change() {
        let r = bisect(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-12, 0.0);
        assert!(matches!(r, Err(Error::Bracket { .. })));
    }
}
