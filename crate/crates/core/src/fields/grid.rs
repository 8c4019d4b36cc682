use crate::geometry::SphericalPoint;
use crate::scalar::Scalar;

use super::{FieldError, FrameAngles};

/// Smallest accepted number of samples in either direction.
pub const MIN_GRID_SAMPLES: usize = 8;

/// Wraps an angle difference into (-π, π].
pub(crate) fn wrap_angle<T: Scalar>(d: T) -> T {
    let two_pi = T::TAU();
    let mut w = d - (d / two_pi).round() * two_pi;
    if w <= -T::PI() {
        w = w + two_pi;
    } else if w > T::PI() {
        w = w - two_pi;
    }
    w
}

/// A field sampled on a uniform latitude/longitude grid.
///
/// Latitudes are cell centres `-π/2 + (i + 1/2)·π/n_alpha`, so no row sits on a
/// pole. Longitudes `2πj/n_beta` are periodic. On construction every row is lifted
/// to a continuous branch of θ; the increment picked up over a closed β-loop is kept
/// as that row's winding increment. Frame derivatives are precomputed at the nodes
/// with second-order central differences (one-sided at the first and last rows).
#[derive(Debug, Clone, PartialEq)]
pub struct GridField<T> {
    n_alpha: usize,
    n_beta: usize,
    theta_values: Vec<T>,
    lifted: Vec<T>,
    row_increment: Vec<T>,
    /// `∂θ/∂β` at the nodes; smooth up to the poles, unlike `θ1`.
    theta_beta: Vec<T>,
    theta2: Vec<T>,
}

impl<T: Scalar> GridField<T> {
    /// Builds a grid from row-major samples (`n_alpha` rows of `n_beta` angles).
    pub fn new(n_alpha: usize, n_beta: usize, theta_values: Vec<T>) -> Result<Self, FieldError> {
        if n_alpha < MIN_GRID_SAMPLES || n_beta < MIN_GRID_SAMPLES {
            return Err(FieldError::GridTooSmall { n_alpha, n_beta, min: MIN_GRID_SAMPLES });
        }
        if theta_values.len() != n_alpha * n_beta {
            return Err(FieldError::GridShape {
                expected: n_alpha * n_beta,
                found: theta_values.len(),
            });
        }
        if let Some(pos) = theta_values.iter().position(|t| !t.is_finite()) {
            return Err(FieldError::NonFiniteSample { row: pos / n_beta, col: pos % n_beta });
        }

        let mut lifted = Vec::with_capacity(theta_values.len());
        let mut row_increment = Vec::with_capacity(n_alpha);
        let mut prev_start: Option<T> = None;
        for row in theta_values.chunks(n_beta) {
            let start = match prev_start {
                Some(p) => p + wrap_angle(row[0] - p),
                None => row[0],
            };
            let mut t = start;
            lifted.push(t);
            for &raw in &row[1..] {
                t = t + wrap_angle(raw - t);
                lifted.push(t);
            }
            let closing = wrap_angle(start - t);
            row_increment.push(t + closing - start);
            prev_start = Some(start);
        }

        let mut grid = Self {
            n_alpha,
            n_beta,
            theta_values,
            lifted,
            row_increment,
            theta_beta: Vec::new(),
            theta2: Vec::new(),
        };
        grid.differentiate();
        Ok(grid)
    }

    fn differentiate(&mut self) {
        let (na, nb) = (self.n_alpha, self.n_beta);
        let h_alpha = self.alpha_step();
        let h_beta = self.beta_step();
        let two = T::lit(2.0);
        let mut theta_beta = vec![T::zero(); na * nb];
        let mut theta2 = vec![T::zero(); na * nb];
        for i in 0..na {
            let inc = self.row_increment[i];
            for j in 0..nb {
                let next = if j + 1 == nb { self.lifted[i * nb] + inc } else { self.lifted[i * nb + j + 1] };
                let prev = if j == 0 { self.lifted[i * nb + nb - 1] - inc } else { self.lifted[i * nb + j - 1] };
                theta_beta[i * nb + j] = (next - prev) / (two * h_beta);

                // Differences across rows are wrapped so rows lifted on different
                // branches still differentiate consistently.
                let step = |a: usize, b: usize| wrap_angle(self.lifted[b * nb + j] - self.lifted[a * nb + j]);
                theta2[i * nb + j] = if i == 0 {
                    (T::lit(3.0) * step(0, 1) - step(1, 2)) / (two * h_alpha)
                } else if i + 1 == na {
                    (T::lit(3.0) * step(na - 2, na - 1) - step(na - 3, na - 2)) / (two * h_alpha)
                } else {
                    (step(i - 1, i) + step(i, i + 1)) / (two * h_alpha)
                };
            }
        }
        self.theta_beta = theta_beta;
        self.theta2 = theta2;
    }

    pub fn n_alpha(&self) -> usize {
        self.n_alpha
    }

    pub fn n_beta(&self) -> usize {
        self.n_beta
    }

    /// Samples as supplied, row-major.
    pub fn theta_values(&self) -> &[T] {
        &self.theta_values
    }

    pub fn alpha_step(&self) -> T {
        T::PI() / T::from_count(self.n_alpha)
    }

    pub fn beta_step(&self) -> T {
        T::TAU() / T::from_count(self.n_beta)
    }

    /// Latitude of row `i`.
    pub fn latitude(&self, i: usize) -> T {
        -T::FRAC_PI_2() + (T::from_count(i) + T::lit(0.5)) * self.alpha_step()
    }

    /// Longitude of column `j`.
    pub fn longitude(&self, j: usize) -> T {
        T::from_count(j) * self.beta_step()
    }

    /// Latitude range `[first row, last row]` on which the grid can be evaluated.
    pub fn latitude_range(&self) -> (T, T) {
        (self.latitude(0), self.latitude(self.n_alpha - 1))
    }

    /// Increment of the lifted θ over one closed loop along row `i`, in radians.
    pub fn row_increment(&self, i: usize) -> T {
        self.row_increment[i]
    }

    /// Row winding in turns.
    pub fn row_winding(&self, i: usize) -> T {
        self.row_increment[i] / T::TAU()
    }

    /// Indexes of the rows immediately below and above `alpha`.
    pub fn bracketing_rows(&self, alpha: T) -> Result<(usize, usize), FieldError> {
        let (i, _) = self.locate_row(alpha)?;
        Ok((i, i + 1))
    }

    fn locate_row(&self, alpha: T) -> Result<(usize, T), FieldError> {
        let (lo, hi) = self.latitude_range();
        let slack = T::epsilon() * T::lit(8.0);
        if alpha < lo - slack || alpha > hi + slack {
            return Err(FieldError::LatitudeOutsideGrid {
                alpha: alpha.as_f64(),
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
        let pos = ((alpha - lo) / self.alpha_step()).max(T::zero());
        let i = pos.floor().to_usize().unwrap_or(0).min(self.n_alpha - 2);
        Ok((i, (pos - T::from_count(i)).min(T::one())))
    }

    fn locate_column(&self, beta: T) -> (usize, T) {
        let pos = beta / self.beta_step();
        let j = pos.floor().to_usize().unwrap_or(0).min(self.n_beta - 1);
        (j, (pos - T::from_count(j)).max(T::zero()).min(T::one()))
    }

    /// Node values `(θ, θ1, θ2)` at row `i`, column `j`.
    pub fn node(&self, i: usize, j: usize) -> FrameAngles<T> {
        let idx = i * self.n_beta + j;
        FrameAngles {
            theta: self.lifted[idx],
            theta1: self.theta_beta[idx] / self.latitude(i).cos(),
            theta2: self.theta2[idx],
        }
    }

    /// Bilinear interpolation of the lifted θ, `∂θ/∂β` and `θ2`.
    pub fn evaluate(&self, p: &SphericalPoint<T>) -> Result<FrameAngles<T>, FieldError> {
        let (i, s) = self.locate_row(p.alpha())?;
        let (j, t) = self.locate_column(p.beta());
        let nb = self.n_beta;
        let j1 = (j + 1) % nb;
        let lerp = |a: T, b: T, w: T| a + (b - a) * w;

        let row_theta = |r: usize| {
            let a = self.lifted[r * nb + j];
            let mut b = self.lifted[r * nb + j1];
            if j1 == 0 {
                b = b + self.row_increment[r];
            }
            lerp(a, b, t)
        };
        let lower = row_theta(i);
        let upper = row_theta(i + 1);
        let theta = lower + wrap_angle(upper - lower) * s;

        let bilinear = |v: &[T]| {
            let lo = lerp(v[i * nb + j], v[i * nb + j1], t);
            let hi = lerp(v[(i + 1) * nb + j], v[(i + 1) * nb + j1], t);
            lerp(lo, hi, s)
        };
        Ok(FrameAngles {
            theta,
            theta1: bilinear(&self.theta_beta) / p.alpha().cos(),
            theta2: bilinear(&self.theta2),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(0.0_f64), 0.0);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap_angle(-3.0 * PI / 2.0) - PI / 2.0).abs() < 1e-15);
        assert!((wrap_angle(7.0 * TAU + 0.25) - 0.25).abs() < 1e-13);
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
    }

    fn spin_samples(k: i32, na: usize, nb: usize, reduce: bool) -> Vec<f64> {
        let mut v = Vec::new();
        for _ in 0..na {
            for j in 0..nb {
                let t = (k - 1) as f64 * TAU * j as f64 / nb as f64;
                v.push(if reduce { t.rem_euclid(TAU) } else { t });
            }
        }
        v
    }

    #[test]
    fn unwrapping_recovers_row_winding() {
        for k in [-2, 1, 2, 4, 6] {
            let g = GridField::new(12, 32, spin_samples(k, 12, 32, true)).unwrap();
            for i in 0..12 {
                assert!((g.row_winding(i) - (k - 1) as f64).abs() < 1e-12);
            }
            for i in 0..12 {
                for j in 0..31 {
                    let d = g.node(i, j + 1).theta - g.node(i, j).theta;
                    assert!(d.abs() < PI);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(GridField::new(4, 16, vec![0.0; 64]), Err(FieldError::GridTooSmall { .. })));
        assert!(matches!(GridField::new(8, 8, vec![0.0; 63]), Err(FieldError::GridShape { .. })));
        let mut v = vec![0.0; 64];
        v[10] = f64::NAN;
        assert!(matches!(GridField::new(8, 8, v), Err(FieldError::NonFiniteSample { row: 1, col: 2 })));
    }

    #[test]
    fn evaluation_outside_rows_fails() {
        let g = GridField::new(8, 8, vec![0.0; 64]).unwrap();
        let (lo, hi) = g.latitude_range();
        assert!((hi - (PI / 2.0 - PI / 16.0)).abs() < 1e-15);
        assert!(g.evaluate(&SphericalPoint::new(hi, 0.0).unwrap()).is_ok());
        assert!(g.evaluate(&SphericalPoint::new(lo, 0.0).unwrap()).is_ok());
        assert!(matches!(
            g.evaluate(&SphericalPoint::new(hi + 1e-3, 0.0).unwrap()),
            Err(FieldError::LatitudeOutsideGrid { .. })
        ));
    }

    #[test]
    fn seam_interpolation_uses_row_increment() {
        let g = GridField::new(8, 16, spin_samples(3, 8, 16, true)).unwrap();
        let beta = TAU - 0.5 * g.beta_step();
        let e = g.evaluate(&SphericalPoint::new(0.1, beta).unwrap()).unwrap();
        assert!((e.theta - 2.0 * beta).abs() < 1e-12);
    }

    #[test]
    fn linear_rows_differentiate_exactly_at_nodes() {
        let g = GridField::new(16, 16, spin_samples(3, 16, 16, true)).unwrap();
        for i in 0..16 {
            let expect = 2.0 / g.latitude(i).cos();
            for j in 0..16 {
                let n = g.node(i, j);
                assert!((n.theta1 - expect).abs() < 1e-9 * expect);
                assert!(n.theta2.abs() < 1e-12);
            }
        }
    }
}
