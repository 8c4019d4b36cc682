//! Unit vector fields on the punctured sphere.
//!
//! A field is stored through its angle function θ against the frame
//! `{e1, e2}`: `v = cos(θ) e1 + sin(θ) e2`, so `|v| = 1` holds by construction.
//! Evaluation returns θ together with the frame derivatives
//! `θ1 = dθ(e1) = (1/cos α) ∂θ/∂β` and `θ2 = dθ(e2) = ∂θ/∂α`.

mod bump;
mod grid;

use rand::Rng;
use thiserror::Error;

use crate::geometry::{GeometryError, SphericalPoint};
use crate::scalar::Scalar;

pub use bump::BumpSpec;
pub use grid::{GridField, MIN_GRID_SAMPLES};
pub(crate) use grid::wrap_angle;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("spin order must be at least 1, got {0}")]
    InvalidSpinOrder(i64),
    #[error("grid must have at least {min} samples per direction, got {n_alpha}x{n_beta}")]
    GridTooSmall { n_alpha: usize, n_beta: usize, min: usize },
    #[error("grid payload has {found} samples, expected {expected}")]
    GridShape { expected: usize, found: usize },
    #[error("grid sample at row {row}, column {col} is not finite")]
    NonFiniteSample { row: usize, col: usize },
    #[error("latitude {alpha} is outside the grid rows [{lo}, {hi}]")]
    LatitudeOutsideGrid { alpha: f64, lo: f64, hi: f64 },
    #[error("bump of width {width} centred at latitude {center_alpha} reaches a pole")]
    BumpTouchesPole { center_alpha: f64, width: f64 },
    #[error("invalid bump: {0}")]
    InvalidBump(String),
    #[error("operation needs an analytic field, got a grid-sampled one")]
    NotAnalytic,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Angle θ of a field and its frame derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameAngles<T> {
    pub theta: T,
    pub theta1: T,
    pub theta2: T,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FieldKind<T> {
    /// `θ = (k - 1)·β`: constant-speed rotation along parallels.
    Spin { k: u32 },
    /// `v = e2`, tangent to the meridians.
    NorthSouth,
    Grid(GridField<T>),
    Perturbed { base: Box<UnitField<T>>, bump: BumpSpec<T> },
}

/// A unit vector field on the sphere minus its two poles.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitField<T> {
    kind: FieldKind<T>,
}

impl<T: Scalar> UnitField<T> {
    /// The field `v_k` with `θ = (k-1)β`; index `k` at N and `2-k` at S.
    pub fn spin(k: i64) -> Result<Self, FieldError> {
        match u32::try_from(k) {
            Ok(k) if k >= 1 => Ok(Self { kind: FieldKind::Spin { k } }),
            _ => Err(FieldError::InvalidSpinOrder(k)),
        }
    }

    pub fn north_south() -> Self {
        Self { kind: FieldKind::NorthSouth }
    }

    pub fn from_grid(grid: GridField<T>) -> Self {
        Self { kind: FieldKind::Grid(grid) }
    }

    pub fn kind(&self) -> &FieldKind<T> {
        &self.kind
    }

    /// True when θ and its derivatives come from closed forms (no grid anywhere).
    pub fn is_analytic(&self) -> bool {
        match &self.kind {
            FieldKind::Spin { .. } | FieldKind::NorthSouth => true,
            FieldKind::Grid(_) => false,
            FieldKind::Perturbed { base, .. } => base.is_analytic(),
        }
    }

    /// Innermost grid, if the field is built on one.
    pub fn grid(&self) -> Option<&GridField<T>> {
        match &self.kind {
            FieldKind::Grid(g) => Some(g),
            FieldKind::Perturbed { base, .. } => base.grid(),
            _ => None,
        }
    }

    /// Latitude range on which the field can be evaluated.
    pub fn latitude_range(&self) -> (T, T) {
        match self.grid() {
            Some(g) => g.latitude_range(),
            None => {
                let edge = T::FRAC_PI_2() - T::pole_guard() * T::lit(2.0);
                (-edge, edge)
            }
        }
    }

    /// Adds `bump` to θ. Indexes at both poles are unchanged since the support avoids them.
    pub fn perturb(self, bump: BumpSpec<T>) -> Self {
        Self { kind: FieldKind::Perturbed { base: Box::new(self), bump } }
    }

    /// θ and the frame derivatives `(θ1, θ2)` at `p`.
    pub fn evaluate(&self, p: &SphericalPoint<T>) -> Result<FrameAngles<T>, FieldError> {
        match &self.kind {
            FieldKind::Spin { k } => {
                let turns = T::from_count((*k - 1) as usize);
                Ok(FrameAngles {
                    theta: turns * p.beta(),
                    theta1: turns / p.alpha().cos(),
                    theta2: T::zero(),
                })
            }
            FieldKind::NorthSouth => Ok(FrameAngles {
                theta: T::FRAC_PI_2(),
                theta1: T::zero(),
                theta2: T::zero(),
            }),
            FieldKind::Grid(g) => g.evaluate(p),
            FieldKind::Perturbed { base, bump } => {
                let b = base.evaluate(p)?;
                let jet = bump.jet(p);
                let a = bump.amplitude();
                Ok(FrameAngles {
                    theta: b.theta + a * jet.value,
                    theta1: b.theta1 + a * jet.d_beta / p.alpha().cos(),
                    theta2: b.theta2 + a * jet.d_alpha,
                })
            }
        }
    }

    /// Components `(cos θ, sin θ)` of the field in the frame `{e1, e2}`.
    pub fn vector_components(&self, p: &SphericalPoint<T>) -> Result<(T, T), FieldError> {
        let (s, c) = self.evaluate(p)?.theta.sin_cos();
        Ok((c, s))
    }
}

/// Samples an analytic field on the uniform grid used by [`GridField`].
pub fn make_grid<T: Scalar>(
    field: &UnitField<T>,
    n_alpha: usize,
    n_beta: usize,
) -> Result<GridField<T>, FieldError> {
    if !field.is_analytic() {
        return Err(FieldError::NotAnalytic);
    }
    if n_alpha < MIN_GRID_SAMPLES || n_beta < MIN_GRID_SAMPLES {
        return Err(FieldError::GridTooSmall { n_alpha, n_beta, min: MIN_GRID_SAMPLES });
    }
    let h_alpha = T::PI() / T::from_count(n_alpha);
    let h_beta = T::TAU() / T::from_count(n_beta);
    let mut values = Vec::with_capacity(n_alpha * n_beta);
    for i in 0..n_alpha {
        let alpha = -T::FRAC_PI_2() + (T::from_count(i) + T::lit(0.5)) * h_alpha;
        for j in 0..n_beta {
            let p = SphericalPoint::new(alpha, T::from_count(j) * h_beta)?;
            values.push(field.evaluate(&p)?.theta);
        }
    }
    GridField::new(n_alpha, n_beta, values)
}

/// Draws a bump whose support stays inside `|alpha| < 1.5`: centre latitude in
/// `[-1, 1]`, width in `[0.2, 0.5]`, amplitude in `(0, 0.5]` unless given.
pub fn random_bump<T: Scalar, R: Rng + ?Sized>(rng: &mut R, amplitude: Option<T>) -> Result<BumpSpec<T>, FieldError> {
    let center_alpha = rng.gen_range(-1.0..=1.0);
    let center_beta = rng.gen_range(0.0..std::f64::consts::TAU);
    let width = rng.gen_range(0.2..=0.5);
    let amp = amplitude.unwrap_or_else(|| T::lit(0.5 - rng.gen_range(0.0..0.5)));
    let center = SphericalPoint::new(T::lit(center_alpha), T::lit(center_beta))?;
    BumpSpec::new(amp, center, T::lit(width))
}

/// Returns `base` with `bump` added to its angle function.
pub fn perturb<T: Scalar>(base: UnitField<T>, bump: BumpSpec<T>) -> UnitField<T> {
    base.perturb(bump)
}
