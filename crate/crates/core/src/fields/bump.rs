use crate::geometry::SphericalPoint;
use crate::scalar::Scalar;

use super::FieldError;

/// A smooth bump added to a field's angle function.
///
/// The profile is the standard mollifier `exp(1 - 1/(1 - (r/width)^2))` in the
/// geodesic distance `r` to `center`, scaled by `amplitude`. It equals
/// `amplitude` at the center and vanishes with all derivatives at `r = width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpSpec<T> {
    amplitude: T,
    center: SphericalPoint<T>,
    width: T,
}

/// Bump value and its chart partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct BumpJet<T> {
    pub value: T,
    pub d_alpha: T,
    pub d_beta: T,
}

impl<T: Scalar> BumpSpec<T> {
    /// Validates the bump. The geodesic disk of radius `width` must stay clear of both poles.
    pub fn new(amplitude: T, center: SphericalPoint<T>, width: T) -> Result<Self, FieldError> {
        if !amplitude.is_finite() {
            return Err(FieldError::InvalidBump("amplitude must be finite".into()));
        }
        if !(width > T::zero()) || !width.is_finite() {
            return Err(FieldError::InvalidBump("width must be positive and finite".into()));
        }
        let clearance = T::FRAC_PI_2() - center.alpha().abs();
        if width >= clearance - T::pole_guard() {
            return Err(FieldError::BumpTouchesPole {
                center_alpha: center.alpha().as_f64(),
                width: width.as_f64(),
            });
        }
        Ok(Self { amplitude, center, width })
    }

    pub fn amplitude(&self) -> T {
        self.amplitude
    }

    pub fn center(&self) -> SphericalPoint<T> {
        self.center
    }

    pub fn width(&self) -> T {
        self.width
    }

    /// Latitude band `[lo, hi]` containing the support.
    pub fn latitude_band(&self) -> (T, T) {
        (self.center.alpha() - self.width, self.center.alpha() + self.width)
    }

    pub(crate) fn jet(&self, p: &SphericalPoint<T>) -> BumpJet<T> {
        let zero = BumpJet { value: T::zero(), d_alpha: T::zero(), d_beta: T::zero() };
        let r = p.geodesic_distance(&self.center);
        let x = r / self.width;
        if x >= T::one() {
            return zero;
        }
        let q = T::one() - x * x;
        let value = (T::one() - q.recip()).exp();
        if value == T::zero() {
            return zero;
        }

        let (sa, ca) = p.alpha().sin_cos();
        let (sc, cc) = self.center.alpha().sin_cos();
        let (sd, cd) = (p.beta() - self.center.beta()).sin_cos();
        // cos r = sa sc + ca cc cos(Δβ)
        let dcos_dalpha = ca * sc - sa * cc * cd;
        let dcos_dbeta = -ca * cc * sd;

        // db/dr = -2 r b / (w² q²) and dr = -d(cos r) / sin r.
        let r_over_sin = if r < T::lit(1e-4) { T::one() + r * r / T::lit(6.0) } else { r / r.sin() };
        let factor = T::lit(2.0) * value * r_over_sin / (self.width * self.width * q * q);
        BumpJet { value, d_alpha: factor * dcos_dalpha, d_beta: factor * dcos_dbeta }
    }
}
