//! Numerical integration: adaptive Gauss–Kronrod on intervals, a product rule
//! over the punctured sphere with pole extrapolation, and the complete elliptic
//! integral of the second kind for ellipse perimeters.

mod adaptive;
mod elliptic;
mod sphere;

use thiserror::Error;

use crate::scalar::Scalar;

pub use adaptive::{integrate_1d, periodic_trapezoid, try_integrate_1d};
pub use elliptic::{elliptic_e, elliptic_k, ellipse_length, ellipse_length_by_quadrature, ellipse_modulus};
pub use sphere::{integrate_sphere, integrate_sphere_detailed, integrate_sphere_with_margin, SphereIntegral};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error(
        "quadrature did not converge: best estimate {best} with error estimate {error_estimate:e} after {evaluations} evaluations"
    )]
    NonConvergence { best: f64, error_estimate: f64, evaluations: usize },
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
    #[error("argument out of range: {0}")]
    InvalidArgument(String),
    #[error("integrand evaluation failed: {0}")]
    Integrand(String),
}

/// Value of an integral together with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub abs_error_estimate: T,
    pub evaluations: usize,
}

/// Tolerances shared by the 1D and spherical rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    /// Maximum bisection depth of any interval in the adaptive rule.
    pub max_depth: usize,
    /// Distance from the poles at which the latitude integral is truncated
    /// before extrapolating with margins `m`, `m/2`, `m/4`.
    pub pole_margin: T,
    /// Starting number of longitude samples of the periodic trapezoid rule.
    pub n_beta: usize,
}

impl<T: Scalar> Default for QuadratureConfig<T> {
    fn default() -> Self {
        let eps = T::epsilon();
        Self {
            rel_tol: T::lit(1e-9).max(eps * T::lit(64.0)),
            abs_tol: T::lit(1e-12).max(eps * T::lit(16.0)),
            max_depth: 40,
            pole_margin: T::lit(1e-6).max(eps.sqrt() * T::lit(4.0)),
            n_beta: 32,
        }
    }
}

impl<T: Scalar> QuadratureConfig<T> {
    pub fn validate(&self) -> Result<(), QuadratureError> {
        let bad = |msg: &str| Err(QuadratureError::InvalidConfig(msg.to_string()));
        if !(self.rel_tol > T::zero()) || !self.rel_tol.is_finite() {
            return bad("rel_tol must be positive");
        }
        if !(self.abs_tol > T::zero()) || !self.abs_tol.is_finite() {
            return bad("abs_tol must be positive");
        }
        if self.max_depth == 0 {
            return bad("max_depth must be at least 1");
        }
        if !(self.pole_margin > T::zero()) || !(self.pole_margin < T::lit(0.1)) {
            return bad("pole_margin must lie in (0, 0.1)");
        }
        if self.n_beta < 4 {
            return bad("n_beta must be at least 4");
        }
        Ok(())
    }

    /// Error target for an integral whose current estimate is `value`.
    pub fn tolerance(&self, value: T) -> T {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}
