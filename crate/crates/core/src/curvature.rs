//! Geodesic curvatures of the frame `{v⊥, v}` and the volume integrand.
//!
//! For `v = cos θ e1 + sin θ e2`:
//!
//! ```text
//! γ = g(∇_v v, v⊥)   = cos θ (tan α + θ1) + sin θ θ2
//! δ = g(∇_v⊥ v⊥, v)  = sin θ (tan α + θ1) − cos θ θ2
//! ```
//!
//! so `1 + γ² + δ² = 1 + (tan α + θ1)² + θ2²`. [`curvatures_expanded`] sums the
//! eight covariant-derivative terms one by one and serves as an oracle for
//! [`curvatures_closed`].

use crate::fields::{FieldError, UnitField};
use crate::geometry::{connection_coefficient, SphericalPoint};
use crate::scalar::Scalar;

/// Geodesic curvatures of `v` (`gamma`) and of `v⊥` (`delta`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvaturePair<T> {
    pub gamma: T,
    pub delta: T,
}

impl<T: Scalar> CurvaturePair<T> {
    /// `√(1 + γ² + δ²)`.
    pub fn volume_density(&self) -> T {
        (T::one() + self.gamma * self.gamma + self.delta * self.delta).sqrt()
    }
}

pub fn curvatures_closed<T: Scalar>(theta: T, theta1: T, theta2: T, alpha: T) -> CurvaturePair<T> {
    let (s, c) = theta.sin_cos();
    let twist = alpha.tan() + theta1;
    CurvaturePair { gamma: c * twist + s * theta2, delta: s * twist - c * theta2 }
}

/// The eight terms `A, B, C, D` (for γ) and `A', B', C', D'` (for δ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpandedTerms<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub a_prime: T,
    pub b_prime: T,
    pub c_prime: T,
    pub d_prime: T,
}

impl<T: Scalar> ExpandedTerms<T> {
    pub fn new(theta: T, theta1: T, theta2: T, alpha: T) -> Self {
        let (s, c) = theta.sin_cos();
        let tan = alpha.tan();
        let (s2, c2) = (s * s, c * c);
        Self {
            // g(∇_{cos θ e1} cos θ e1, v⊥)
            a: s2 * c * theta1 + c2 * c * tan,
            // g(∇_{sin θ e2} cos θ e1, v⊥)
            b: s2 * s * theta2,
            // g(∇_{cos θ e1} sin θ e2, v⊥)
            c: c2 * c * theta1 + s2 * c * tan,
            // g(∇_{sin θ e2} sin θ e2, v⊥)
            d: s * c2 * theta2,
            // g(∇_{-sin θ e1} (-sin θ) e1, v)
            a_prime: s * c2 * theta1 + s2 * s * tan,
            // g(∇_{cos θ e2} (-sin θ) e1, v)
            b_prime: -(c2 * c) * theta2,
            // g(∇_{-sin θ e1} cos θ e2, v)
            c_prime: s2 * s * theta1 + s * c2 * tan,
            // g(∇_{cos θ e2} cos θ e2, v)
            d_prime: -(s2 * c) * theta2,
        }
    }

    pub fn pair(&self) -> CurvaturePair<T> {
        CurvaturePair {
            gamma: self.a + self.b + self.c + self.d,
            delta: self.a_prime + self.b_prime + self.c_prime + self.d_prime,
        }
    }
}

pub fn curvatures_expanded<T: Scalar>(theta: T, theta1: T, theta2: T, alpha: T) -> CurvaturePair<T> {
    ExpandedTerms::new(theta, theta1, theta2, alpha).pair()
}

/// `√(1 + (tan α + θ1)² + θ2²)`, the volume density against the area form.
pub fn volume_integrand<T: Scalar>(field: &UnitField<T>, p: &SphericalPoint<T>) -> Result<T, FieldError> {
    let e = field.evaluate(p)?;
    let twist = connection_coefficient(p) + e.theta1;
    Ok((T::one() + twist * twist + e.theta2 * e.theta2).sqrt())
}

/// `i*(ω12)(e1) = tan α + θ1`: the connection form of `{v⊥, v}` restricted to the parallel through `p`.
pub fn connection_form_pullback<T: Scalar>(
    field: &UnitField<T>,
    p: &SphericalPoint<T>,
) -> Result<T, FieldError> {
    Ok(connection_coefficient(p) + field.evaluate(p)?.theta1)
}
