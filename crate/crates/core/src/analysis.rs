//! Volume, pole indexes, the Stokes identity along parallels and the elliptic
//! lower bound `vol(v) ≥ π·L(ε_k)` with `k` the larger of the two pole indexes.

use rayon::prelude::*;
use thiserror::Error;

use crate::curvature::{connection_form_pullback, volume_integrand};
use crate::fields::{wrap_angle, FieldError, UnitField};
use crate::geometry::{GeometryError, SphericalPoint};
use crate::quadrature::{
    ellipse_length, integrate_sphere, integrate_sphere_with_margin, QuadratureConfig, QuadratureError,
    QuadratureResult,
};
use crate::scalar::Scalar;

/// Largest accepted distance between a raw winding and the integer index.
pub const MAX_INDEX_RESIDUAL: f64 = 0.05;
/// Latitude (in absolute value) of the parallels on which indexes are measured.
pub const DEFAULT_MEASURING_LATITUDE: f64 = 1.2;
/// Absolute slack granted to the bound comparison on top of the volume's error estimate.
pub const BOUND_TOLERANCE: f64 = 1e-6;

/// Relative tolerance floor for volumes of grid-sampled fields.
pub const GRID_REL_TOL: f64 = 1e-6;

const INDEX_SAMPLES_START: usize = 64;
const INDEX_SAMPLES_MAX: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pole {
    North,
    South,
}

impl std::fmt::Display for Pole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Pole::North => "N",
            Pole::South => "S",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("index undetermined at {pole}: winding {winding} is {residual} away from an integer")]
    IndexUndetermined { pole: Pole, winding: f64, residual: f64 },
    #[error("indexes {north} at N and {south} at S do not sum to 2")]
    PoincareHopf { north: i64, south: i64 },
    #[error("empty order range {k_min}..={k_max} (orders start at 1)")]
    EmptyRange { k_min: i64, k_max: i64 },
}

/// Index of the field at one pole, measured on a single parallel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleIndex<T> {
    pub pole: Pole,
    pub index: i64,
    /// Raw number of turns of θ around the measuring parallel.
    pub winding: T,
    pub residual: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexReport<T> {
    pub index_north: i64,
    pub index_south: i64,
    pub winding: T,
    pub residual: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesCheck<T> {
    pub lhs: T,
    pub rhs: T,
    pub abs_diff: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub volume: QuadratureResult<T>,
    pub indexes: IndexReport<T>,
    /// Larger of the two pole indexes.
    pub k: i64,
    /// `π·L(ε_k)`.
    pub bound: T,
    /// `volume - bound`.
    pub margin: T,
    /// Equality tolerance `max(1e-6, 10·error estimate)`.
    pub equality_tolerance: T,
    pub satisfied: bool,
    /// The volume equals the bound within `equality_tolerance`.
    pub attains_bound: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow<T> {
    pub k: i64,
    pub volume: QuadratureResult<T>,
    pub bound: T,
    pub rel_gap: T,
}

/// `π·L(ε_k)`.
pub fn elliptic_bound<T: Scalar>(k: i64) -> Result<T, AnalysisError> {
    Ok(T::PI() * ellipse_length::<T>(k)?)
}

/// Volume `∫ √(1 + (tan α + θ1)² + θ2²)` of the field over the punctured sphere.
///
/// Grid-backed fields are only defined between their first and last rows, so
/// the pole margin is widened to four times the gap between the last row and
/// the pole; the extrapolation then never leaves the sampled band.
pub fn volume<T: Scalar>(field: &UnitField<T>, cfg: &QuadratureConfig<T>) -> Result<QuadratureResult<T>, AnalysisError> {
    cfg.validate()?;
    let integrand = |p: &SphericalPoint<T>| volume_integrand(field, p);
    match field.grid() {
        None => Ok(integrate_sphere(integrand, cfg)?),
        Some(grid) => {
            let gap = T::FRAC_PI_2() - grid.latitude_range().1;
            let margin = cfg.pole_margin.max(gap * T::lit(4.0));
            let grid_cfg = QuadratureConfig {
                rel_tol: cfg.rel_tol.max(T::lit(GRID_REL_TOL)),
                n_beta: cfg.n_beta.max(grid.n_beta()),
                ..*cfg
            };
            Ok(integrate_sphere_with_margin(integrand, &grid_cfg, margin)?.result)
        }
    }
}

fn loop_winding<T: Scalar>(field: &UnitField<T>, alpha: T, n: usize) -> Result<T, AnalysisError> {
    let mut first = None;
    let mut prev = T::zero();
    let mut total = T::zero();
    for j in 0..n {
        let p = SphericalPoint::new(alpha, T::TAU() * T::from_count(j) / T::from_count(n))?;
        let theta = field.evaluate(&p)?.theta;
        match first {
            None => first = Some(theta),
            Some(_) => total = total + wrap_angle(theta - prev),
        }
        prev = theta;
    }
    let start = first.expect("at least one sample");
    total = total + wrap_angle(start - prev);
    Ok(total / T::TAU())
}

fn settle(samples: &[f64]) -> (f64, i64, f64) {
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let rounded = mean.round();
    let residual = samples.iter().map(|s| (s - rounded).abs()).fold(0.0, f64::max);
    (mean, rounded as i64, residual)
}

/// Poincaré index at `pole`, read off the turning of θ along the parallel at
/// `measuring_latitude`.
///
/// With `W` the number of turns of θ relative to `{e1, e2}`, the index is
/// `1 + W` at N and `1 - W` at S; the `±1` is the turning of the frame itself.
/// Analytic fields are sampled at `n` and `2n` points, doubling `n` until both
/// agree; grid fields use the stored windings of the two rows around the
/// latitude. The residual is the largest distance of any sample from the
/// rounded winding and must not exceed [`MAX_INDEX_RESIDUAL`].
pub fn poincare_index<T: Scalar>(
    field: &UnitField<T>,
    pole: Pole,
    measuring_latitude: T,
) -> Result<PoleIndex<T>, AnalysisError> {
    SphericalPoint::new(measuring_latitude, T::zero())?;
    let (winding, turns, residual) = match field.grid() {
        Some(grid) => {
            let (lo, hi) = grid.bracketing_rows(measuring_latitude)?;
            let samples = [grid.row_winding(lo).as_f64(), grid.row_winding(hi).as_f64()];
            settle(&samples)
        }
        None => {
            let mut n = INDEX_SAMPLES_START;
            loop {
                let samples = [
                    loop_winding(field, measuring_latitude, n)?.as_f64(),
                    loop_winding(field, measuring_latitude, 2 * n)?.as_f64(),
                ];
                let settled = settle(&samples);
                if settled.2 <= MAX_INDEX_RESIDUAL || 2 * n >= INDEX_SAMPLES_MAX {
                    break settled;
                }
                n *= 2;
            }
        }
    };
    if residual > MAX_INDEX_RESIDUAL {
        return Err(AnalysisError::IndexUndetermined { pole, winding, residual });
    }
    let index = match pole {
        Pole::North => 1 + turns,
        Pole::South => 1 - turns,
    };
    Ok(PoleIndex { pole, index, winding: T::lit(winding), residual: T::lit(residual) })
}

/// Indexes at both poles, measured on the parallels at `±|measuring_latitude|`,
/// checked against Poincaré–Hopf (`I_N + I_S = 2`).
pub fn index_report<T: Scalar>(field: &UnitField<T>, measuring_latitude: T) -> Result<IndexReport<T>, AnalysisError> {
    let lat = measuring_latitude.abs();
    let north = poincare_index(field, Pole::North, lat)?;
    let south = poincare_index(field, Pole::South, -lat)?;
    if north.index + south.index != 2 {
        return Err(AnalysisError::PoincareHopf { north: north.index, south: south.index });
    }
    Ok(IndexReport {
        index_north: north.index,
        index_south: south.index,
        winding: north.winding,
        residual: north.residual.max(south.residual),
    })
}

/// Compares `∫ i*(ω12)(e1) ds` along the parallel at `alpha` with `2π(k - 1 + sin α)`,
/// `k` being the index at N.
///
/// The line integral is taken against arc length `ds = cos α dβ` with the
/// `n_beta`-point periodic trapezoid rule.
pub fn stokes_check<T: Scalar>(field: &UnitField<T>, alpha: T, n_beta: usize) -> Result<StokesCheck<T>, AnalysisError> {
    let n = n_beta.max(1);
    let mut sum = T::zero();
    for j in 0..n {
        let p = SphericalPoint::new(alpha, T::TAU() * T::from_count(j) / T::from_count(n))?;
        sum = sum + connection_form_pullback(field, &p)?;
    }
    let lhs = sum * alpha.cos() * T::TAU() / T::from_count(n);
    let k = poincare_index(field, Pole::North, alpha)?.index;
    let rhs = T::TAU() * (T::from_i64(k - 1).expect("index fits") + alpha.sin());
    Ok(StokesCheck { lhs, rhs, abs_diff: (lhs - rhs).abs() })
}

/// Volume, indexes and the elliptic bound for `field`, with indexes measured at
/// [`DEFAULT_MEASURING_LATITUDE`].
pub fn bound_report<T: Scalar>(field: &UnitField<T>, cfg: &QuadratureConfig<T>) -> Result<BoundReport<T>, AnalysisError> {
    bound_report_at(field, cfg, T::lit(DEFAULT_MEASURING_LATITUDE))
}

pub fn bound_report_at<T: Scalar>(
    field: &UnitField<T>,
    cfg: &QuadratureConfig<T>,
    measuring_latitude: T,
) -> Result<BoundReport<T>, AnalysisError> {
    let indexes = index_report(field, measuring_latitude)?;
    let volume = volume(field, cfg)?;
    let k = indexes.index_north.max(indexes.index_south);
    let bound = elliptic_bound::<T>(k)?;
    let margin = volume.value - bound;
    let equality_tolerance = T::lit(1e-6).max(T::lit(10.0) * volume.abs_error_estimate);
    let satisfied = margin >= -(volume.abs_error_estimate + T::lit(BOUND_TOLERANCE));
    let note = (k <= 2).then(|| {
        if k == 1 {
            "k = 1: the bound is 2π², the value of the north-south field; the elliptic bound is stated for k > 2".to_string()
        } else {
            "k = 2: the ellipse degenerates to a segment (bound 8π); the elliptic bound is stated for k > 2".to_string()
        }
    });
    Ok(BoundReport {
        volume,
        indexes,
        k,
        bound,
        margin,
        equality_tolerance,
        satisfied,
        attains_bound: margin.abs() <= equality_tolerance,
        note,
    })
}

/// Volume of `v_k` against `π·L(ε_k)` for every `k` in `k_min..=k_max`.
///
/// Rows are computed in parallel and returned in increasing `k`.
pub fn sweep<T: Scalar>(k_min: i64, k_max: i64, cfg: &QuadratureConfig<T>) -> Result<Vec<SweepRow<T>>, AnalysisError> {
    if k_min < 1 || k_min > k_max {
        return Err(AnalysisError::EmptyRange { k_min, k_max });
    }
    (k_min..=k_max)
        .into_par_iter()
        .map(|k| {
            let field = UnitField::spin(k)?;
            let volume = volume(&field, cfg)?;
            let bound = elliptic_bound::<T>(k)?;
            Ok(SweepRow { k, volume, bound, rel_gap: (volume.value - bound).abs() / bound })
        })
        .collect()
}
