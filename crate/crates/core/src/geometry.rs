//! Latitude/longitude chart on the sphere with the two poles removed.
//!
//! Points are addressed by latitude `alpha` in (-π/2, π/2) and longitude
//! `beta` in [0, 2π). The orthonormal frame used throughout the crate is
//! [`FrameConvention`]: `e1` follows the parallels eastward, `e2` follows the
//! meridians northward.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeometryError {
    #[error("latitude {alpha} is not finite or lies within {guard:e} of a pole")]
    LatitudeOutOfDomain { alpha: f64, guard: f64 },
    #[error("longitude {0} is not finite")]
    LongitudeNotFinite(f64),
}

/// A point of the punctured sphere in latitude/longitude coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPoint<T> {
    alpha: T,
    beta: T,
}

impl<T: Scalar> SphericalPoint<T> {
    /// Builds a point, reducing `beta` into [0, 2π).
    ///
    /// Latitudes within [`Scalar::pole_guard`] of ±π/2 are rejected rather than
    /// clamped, so `tan(alpha)` is always finite.
    pub fn new(alpha: T, beta: T) -> Result<Self, GeometryError> {
        if !alpha.is_finite() || alpha.abs() >= T::FRAC_PI_2() - T::pole_guard() {
            return Err(GeometryError::LatitudeOutOfDomain {
                alpha: alpha.as_f64(),
                guard: T::pole_guard().as_f64(),
            });
        }
        if !beta.is_finite() {
            return Err(GeometryError::LongitudeNotFinite(beta.as_f64()));
        }
        Ok(Self { alpha, beta: reduce_longitude(beta) })
    }

    #[inline]
    pub fn alpha(&self) -> T {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> T {
        self.beta
    }

    /// Unit position vector in the ambient space.
    pub fn to_cartesian(&self) -> [T; 3] {
        let (sa, ca) = self.alpha.sin_cos();
        let (sb, cb) = self.beta.sin_cos();
        [ca * cb, ca * sb, sa]
    }

    /// Great-circle distance to `other`, accurate for nearby points.
    pub fn geodesic_distance(&self, other: &Self) -> T {
        let p = self.to_cartesian();
        let q = other.to_cartesian();
        let cross = [
            p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0],
        ];
        let sin = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
        let cos = p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
        sin.atan2(cos)
    }
}

/// Reduces a longitude into [0, 2π).
pub fn reduce_longitude<T: Scalar>(beta: T) -> T {
    let two_pi = T::TAU();
    let mut b = beta % two_pi;
    if b < T::zero() {
        b = b + two_pi;
    }
    // `b + 2π` can round up to exactly 2π for tiny negative inputs.
    if b >= two_pi {
        b = T::zero();
    }
    b
}

/// The fixed orthonormal frame `{e1, e2}` on the punctured sphere.
///
/// * `e1` is the unit tangent to parallels in the direction of increasing longitude.
/// * `e2` is the unit tangent to meridians in the direction of increasing latitude (towards N).
///
/// With this orientation `g(∇_{e1} e1, e2) = tan(alpha)` and `∇_{e2} e2 = 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FrameConvention;

impl FrameConvention {
    /// Ambient components of `(e1, e2)` at `p`.
    pub fn vectors<T: Scalar>(p: &SphericalPoint<T>) -> ([T; 3], [T; 3]) {
        let (sa, ca) = p.alpha().sin_cos();
        let (sb, cb) = p.beta().sin_cos();
        let e1 = [-sb, cb, T::zero()];
        let e2 = [-sa * cb, -sa * sb, ca];
        (e1, e2)
    }
}

/// Jacobian of the (alpha, beta) chart against the area form: `cos(alpha)`.
#[inline]
pub fn area_element<T: Scalar>(p: &SphericalPoint<T>) -> T {
    p.alpha().cos()
}

/// Connection coefficient `g(∇_{e1} e1, e2) = tan(alpha)`.
///
/// Always finite because [`SphericalPoint::new`] keeps latitudes off the poles.
#[inline]
pub fn connection_coefficient<T: Scalar>(p: &SphericalPoint<T>) -> T {
    p.alpha().tan()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    fn pt(alpha: f64, beta: f64) -> SphericalPoint<f64> {
        SphericalPoint::new(alpha, beta).unwrap()
    }

    #[test]
    fn area_element_values() {
        assert_eq!(area_element(&pt(0.0, 0.0)), 1.0);
        assert_relative_eq!(area_element(&pt(FRAC_PI_3, 0.0)), 0.5, epsilon = 1e-15);
        let mut last = f64::INFINITY;
        for i in 0..50 {
            let a = FRAC_PI_2 * (i as f64) / 50.0;
            let v = area_element(&pt(a, 1.0));
            assert!(v < last);
            assert_eq!(v, area_element(&pt(-a, 1.0)));
            last = v;
        }
        assert!(area_element(&pt(FRAC_PI_2 - 1e-9, 0.0)) < 1e-8);
    }

    #[test]
    fn connection_coefficient_values() {
        assert_eq!(connection_coefficient(&pt(0.0, 2.0)), 0.0);
        assert_relative_eq!(connection_coefficient(&pt(FRAC_PI_4, 0.0)), 1.0, epsilon = 1e-15);
        assert_relative_eq!(connection_coefficient(&pt(-FRAC_PI_4, 0.0)), -1.0, epsilon = 1e-15);
        for i in 0..200 {
            let a = -1.5 + 3.0 * (i as f64) / 199.0;
            assert_eq!(connection_coefficient(&pt(-a, 0.0)), -connection_coefficient(&pt(a, 0.0)));
        }
    }

    #[test]
    fn poles_are_rejected() {
        assert!(SphericalPoint::new(FRAC_PI_2, 0.0).is_err());
        assert!(SphericalPoint::new(-FRAC_PI_2, 0.0).is_err());
        assert!(SphericalPoint::new(FRAC_PI_2 - 1e-13, 0.0).is_err());
        assert!(SphericalPoint::new(FRAC_PI_2 - 1e-10, 0.0).is_ok());
        assert!(SphericalPoint::new(f64::NAN, 0.0).is_err());
        assert!(SphericalPoint::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn longitude_is_reduced() {
        assert_relative_eq!(pt(0.0, 2.0 * PI + 0.5).beta(), 0.5, epsilon = 1e-14);
        assert_relative_eq!(pt(0.0, -0.5).beta(), 2.0 * PI - 0.5, epsilon = 1e-14);
        assert_eq!(pt(0.0, -1e-300).beta(), 0.0);
        assert_eq!(pt(0.0, 2.0 * PI).beta(), 0.0);
    }

    #[test]
    fn frame_is_orthonormal_and_oriented() {
        let p = pt(0.7, 2.1);
        let (e1, e2) = FrameConvention::vectors(&p);
        let x = p.to_cartesian();
        let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        assert_relative_eq!(dot(e1, e1), 1.0, epsilon = 1e-15);
        assert_relative_eq!(dot(e2, e2), 1.0, epsilon = 1e-15);
        assert!(dot(e1, e2).abs() < 1e-15);
        assert!(dot(e1, x).abs() < 1e-15);
        // e1 × e2 is the outward normal
        let n = [
            e1[1] * e2[2] - e1[2] * e2[1],
            e1[2] * e2[0] - e1[0] * e2[2],
            e1[0] * e2[1] - e1[1] * e2[0],
        ];
        assert_relative_eq!(dot(n, x), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn tan_alpha_is_geodesic_curvature_of_parallel() {
        // Differentiate e1 along the parallel (unit speed: dβ = ds / cos α) and project on e2.
        let (alpha, beta, h) = (0.6_f64, 1.3_f64, 1e-6);
        let p = pt(alpha, beta);
        let (_, e2) = FrameConvention::vectors(&p);
        let (e1p, _) = FrameConvention::vectors(&pt(alpha, beta + h));
        let (e1m, _) = FrameConvention::vectors(&pt(alpha, beta - h));
        let d: Vec<f64> = (0..3).map(|i| (e1p[i] - e1m[i]) / (2.0 * h * alpha.cos())).collect();
        let proj = d[0] * e2[0] + d[1] * e2[1] + d[2] * e2[2];
        assert_relative_eq!(proj, connection_coefficient(&p), epsilon = 1e-8);
    }

    #[test]
    fn geodesic_distance_small_and_large() {
        let a = pt(0.0, 0.0);
        assert_relative_eq!(a.geodesic_distance(&pt(0.0, 1e-9)), 1e-9, max_relative = 1e-9);
        assert_relative_eq!(a.geodesic_distance(&pt(0.0, PI)), PI, epsilon = 1e-15);
        assert_relative_eq!(a.geodesic_distance(&pt(0.5, 0.0)), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn f32_chart_works() {
        let p = SphericalPoint::<f32>::new(0.5, 7.0).unwrap();
        assert!((p.beta() - (7.0 - std::f32::consts::TAU)).abs() < 1e-6);
        assert!(SphericalPoint::<f32>::new(std::f32::consts::FRAC_PI_2, 0.0).is_err());
    }
}
