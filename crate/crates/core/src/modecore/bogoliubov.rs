use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-12;

/// Linear input-output map `a_out = u a + v a*` on `n` bosonic modes.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteBogoliubov {
    u: DMatrix<C64>,
    v: DMatrix<C64>,
}

impl FiniteBogoliubov {
    pub fn new(u: DMatrix<C64>, v: DMatrix<C64>) -> Result<Self> {
        if !u.is_square() || u.shape() != v.shape() {
            return Err(Error::Shape(format!("u is {:?}, v is {:?}; both must be n x n", u.shape(), v.shape())));
        }
        if u.nrows() == 0 {
            return Err(Error::Shape("transform has no modes".into()));
        }
        Ok(Self { u, v })
    }

    pub fn identity(n: usize) -> Self {
        Self { u: DMatrix::identity(n, n), v: DMatrix::zeros(n, n) }
    }

    /// Mode-local transform with diagonal `u` and `v`, as produced by a
    /// pump that acts pointwise on a discretized set of modes.
    pub fn diagonal(u: &[f64], v: &[f64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::Shape(format!("diagonal lengths {} and {}", u.len(), v.len())));
        }
        let u = DMatrix::from_diagonal(&DVector::from_iterator(u.len(), u.iter().map(|&x| C64::from(x))));
        let v = DMatrix::from_diagonal(&DVector::from_iterator(v.len(), v.iter().map(|&x| C64::from(x))));
        Self::new(u, v)
    }

    /// Degenerate squeezer on mode `k`: `a_k -> cosh r a_k + e^{i phi} sinh r a_k*`.
    pub fn single_mode_squeezer(n: usize, k: usize, r: f64, phi: f64) -> Self {
        let mut b = Self::identity(n);
        b.u[(k, k)] = C64::from(r.cosh());
        b.v[(k, k)] = C64::from_polar(r.sinh(), phi);
        b
    }

    /// Non-degenerate squeezer coupling modes `i` and `j` with gain `r`.
    pub fn two_mode_squeezer(n: usize, i: usize, j: usize, r: f64) -> Self {
        let mut b = Self::identity(n);
        b.u[(i, i)] = C64::from(r.cosh());
        b.u[(j, j)] = C64::from(r.cosh());
        b.v[(i, j)] = C64::from(r.sinh());
        b.v[(j, i)] = C64::from(r.sinh());
        b
    }

    /// Passive beam splitter between modes `i` and `j`.
    pub fn beam_splitter(n: usize, i: usize, j: usize, theta: f64, phi: f64) -> Self {
        let mut b = Self::identity(n);
        let (s, c) = theta.sin_cos();
        let e = C64::from_polar(1.0, phi);
        b.u[(i, i)] = C64::from(c);
        b.u[(j, j)] = C64::from(c);
        b.u[(i, j)] = -e.conj() * s;
        b.u[(j, i)] = e * s;
        b
    }

    /// Transform obtained by applying `self` first and `then` afterwards.
    pub fn followed_by(&self, then: &Self) -> Result<Self> {
        if self.n() != then.n() {
            return Err(Error::Shape(format!("composing {} modes with {} modes", self.n(), then.n())));
        }
        let u = &then.u * &self.u + &then.v * self.v.conjugate();
        let v = &then.u * &self.v + &then.v * self.u.conjugate();
        Ok(Self { u, v })
    }

    pub fn n(&self) -> usize {
        self.u.nrows()
    }

    pub fn u(&self) -> &DMatrix<C64> {
        &self.u
    }

    pub fn v(&self) -> &DMatrix<C64> {
        &self.v
    }

    pub fn u_mut(&mut self) -> &mut DMatrix<C64> {
        &mut self.u
    }

    pub fn v_mut(&mut self) -> &mut DMatrix<C64> {
        &mut self.v
    }
}

/// Largest entrywise violation of the bosonic commutation constraints
/// of the map and its inverse: `u u† - v v† = u† u - vᵀ v* = 1`,
/// `u vᵀ - v uᵀ = 0` and `u† v - vᵀ u* = 0`.
pub fn check_symplectic(b: &FiniteBogoliubov) -> f64 {
    let (u, v) = (&b.u, &b.v);
    let id = DMatrix::<C64>::identity(b.n(), b.n());
    let max_abs = |m: DMatrix<C64>| m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let r1 = max_abs(u * u.adjoint() - v * v.adjoint() - &id);
    let r2 = max_abs(u.adjoint() * u - v.transpose() * v.conjugate() - &id);
    let r3 = max_abs(u * v.transpose() - v * u.transpose());
    let r4 = max_abs(u.adjoint() * v - v.transpose() * u.conjugate());
    r1.max(r2).max(r3).max(r4)
}

/// Normalized complex mode function over the `n` modes of a transform.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeVector(DVector<C64>);

impl ModeVector {
    /// Wraps `components`, which must already have unit norm.
    pub fn new(components: DVector<C64>) -> Result<Self> {
        let norm = components.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self(components))
    }

    pub fn normalized(components: DVector<C64>) -> Result<Self> {
        let norm = components.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self(components / C64::from(norm)))
    }

    pub fn from_real(components: &[f64]) -> Result<Self> {
        Self::normalized(DVector::from_iterator(components.len(), components.iter().map(|&x| C64::from(x))))
    }

    pub fn basis(n: usize, k: usize) -> Self {
        let mut c = DVector::zeros(n);
        c[k] = C64::from(1.0);
        Self(c)
    }

    /// The same mode multiplied by a global phase `e^{i phase}`.
    pub fn rotated(&self, phase: f64) -> Self {
        Self(&self.0 * C64::from_polar(1.0, phase))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_vector(&self) -> &DVector<C64> {
        &self.0
    }
}
