use crate::scalar::Scalar;

use super::adaptive::integrate_1d;
use super::{QuadratureConfig, QuadratureError};

fn check_parameter<T: Scalar>(m: T) -> Result<(), QuadratureError> {
    if !(m >= T::zero() && m <= T::one()) {
        return Err(QuadratureError::InvalidArgument(format!("parameter m = {} must lie in [0, 1]", m)));
    }
    Ok(())
}

/// Runs the AGM from `(1, √(1-m))`, returning the limit `a_N` and
/// `Σ 2^(n-1) c_n²` with `c_0² = m`.
fn agm<T: Scalar>(m: T) -> (T, T) {
    let half = T::lit(0.5);
    let mut a = T::one();
    let mut g = (T::one() - m).sqrt();
    let mut weight = half;
    let mut sum = weight * m;
    for _ in 0..64 {
        let c = half * (a - g);
        if c.abs() <= T::epsilon() * a {
            break;
        }
        let next_a = half * (a + g);
        g = (a * g).sqrt();
        a = next_a;
        weight = weight * T::lit(2.0);
        sum = sum + weight * c * c;
    }
    (a, sum)
}

/// Complete elliptic integral of the first kind `K(m)`, `m` in `[0, 1)`.
pub fn elliptic_k<T: Scalar>(m: T) -> Result<T, QuadratureError> {
    check_parameter(m)?;
    if m == T::one() {
        return Ok(T::infinity());
    }
    let (a, _) = agm(m);
    Ok(T::FRAC_PI_2() / a)
}

/// Complete elliptic integral of the second kind
/// `E(m) = ∫₀^{π/2} √(1 - m sin²t) dt`, by the arithmetic–geometric mean:
/// `E = K·(1 - Σ 2^(n-1) c_n²)`.
pub fn elliptic_e<T: Scalar>(m: T) -> Result<T, QuadratureError> {
    check_parameter(m)?;
    if m == T::one() {
        return Ok(T::one());
    }
    if m == T::zero() {
        return Ok(T::FRAC_PI_2());
    }
    let (a, sum) = agm(m);
    Ok(T::FRAC_PI_2() / a * (T::one() - sum))
}

fn check_order(k: i64) -> Result<(), QuadratureError> {
    if k < 1 {
        return Err(QuadratureError::InvalidArgument(format!("ellipse order k = {k} must be at least 1")));
    }
    Ok(())
}

/// Parameter `m = 1 - (k-2)²/k² = 4(k-1)/k²` of the ellipse with semi-axes `k` and `|k-2|`.
pub fn ellipse_modulus<T: Scalar>(k: i64) -> Result<T, QuadratureError> {
    check_order(k)?;
    let kf = T::from_i64(k).expect("k representable");
    Ok(T::lit(4.0) * (kf - T::one()) / (kf * kf))
}

/// Perimeter of the ellipse `x²/k² + y²/(k-2)² = 1`: `4·k·E(m)`.
///
/// For `k = 1` this is the unit circle (`2π`); `k = 2` degenerates to a
/// doubly traversed segment of length 8.
pub fn ellipse_length<T: Scalar>(k: i64) -> Result<T, QuadratureError> {
    let m = ellipse_modulus::<T>(k)?;
    let kf = T::from_i64(k).expect("k representable");
    Ok(T::lit(4.0) * kf * elliptic_e(m)?)
}

/// Same perimeter as [`ellipse_length`], from `4∫₀^{π/2} √((k-2)² + 4(k-1) sin²t) dt`
/// with the adaptive rule.
pub fn ellipse_length_by_quadrature<T: Scalar>(k: i64, cfg: &QuadratureConfig<T>) -> Result<T, QuadratureError> {
    check_order(k)?;
    let kf = T::from_i64(k).expect("k representable");
    let b = kf - T::lit(2.0);
    let c = T::lit(4.0) * (kf - T::one());
    let quarter = integrate_1d(
        |t: T| {
            let s = t.sin();
            (b * b + c * s * s).sqrt()
        },
        T::zero(),
        T::FRAC_PI_2(),
        cfg,
    )?;
    Ok(T::lit(4.0) * quarter.value)
}
