use crate::scalar::Scalar;

use super::{QuadratureConfig, QuadratureError, QuadratureResult};

// 15-point Kronrod abscissae on [-1, 1] (non-negative half) with weights.
// Odd indices are also the 7-point Gauss abscissae.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Hard cap on live subintervals, independent of `max_depth`.
const MAX_INTERVALS: usize = 20_000;

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    depth: usize,
}

fn gauss_kronrod_15<T, F>(f: &mut F, a: T, b: T) -> Result<(T, T), QuadratureError>
where
    T: Scalar,
    F: FnMut(T) -> Result<T, QuadratureError>,
{
    let half = T::lit(0.5);
    let center = half * (a + b);
    let radius = half * (b - a);
    let mut eval = |x: T| -> Result<T, QuadratureError> {
        let y = f(x)?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadratureError::Integrand(format!("non-finite value {} at {}", y, x)))
        }
    };

    let fc = eval(center)?;
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for i in 0..7 {
        let dx = radius * T::lit(XGK[i]);
        let pair = eval(center - dx)? + eval(center + dx)?;
        kronrod = kronrod + pair * T::lit(WGK[i]);
        if i % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[i / 2]);
        }
    }
    Ok((kronrod * radius, ((kronrod - gauss) * radius).abs()))
}

/// Adaptive integration of a fallible integrand over `[a, b]`.
///
/// Uses the 15-point Kronrod / 7-point Gauss pair on every subinterval with
/// `|K15 - G7|` as the local error estimate. The interval with the largest
/// estimate is bisected until the summed estimate drops below
/// `max(abs_tol, rel_tol·|value|)`. Final sums are accumulated left to right.
pub fn try_integrate_1d<T, F>(
    mut f: F,
    a: T,
    b: T,
    cfg: &QuadratureConfig<T>,
) -> Result<QuadratureResult<T>, QuadratureError>
where
    T: Scalar,
    F: FnMut(T) -> Result<T, QuadratureError>,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(QuadratureError::InvalidInterval { a: a.as_f64(), b: b.as_f64() });
    }
    if !(cfg.rel_tol > T::zero()) || !(cfg.abs_tol > T::zero()) {
        return Err(QuadratureError::InvalidConfig("tolerances must be positive".into()));
    }

    let (value, error) = gauss_kronrod_15(&mut f, a, b)?;
    let mut evaluations = 15;
    let mut active = vec![Segment { a, b, value, error, depth: 0 }];
    let mut frozen: Vec<Segment<T>> = Vec::new();
    let mut total = value;
    let mut total_error = error;

    while total_error > cfg.tolerance(total) {
        // Largest error first; ties resolve to the leftmost candidate.
        let worst = active
            .iter()
            .enumerate()
            .fold(None::<(usize, T)>, |best, (i, s)| match best {
                Some((_, e)) if e >= s.error => best,
                _ => Some((i, s.error)),
            });
        let Some((idx, _)) = worst else { break };
        let seg = active.swap_remove(idx);
        if seg.depth >= cfg.max_depth || active.len() + frozen.len() >= MAX_INTERVALS {
            frozen.push(seg);
            continue;
        }
        let mid = T::lit(0.5) * (seg.a + seg.b);
        if !(seg.a < mid && mid < seg.b) {
            frozen.push(seg);
            continue;
        }
        let (lv, le) = gauss_kronrod_15(&mut f, seg.a, mid)?;
        let (rv, re) = gauss_kronrod_15(&mut f, mid, seg.b)?;
        evaluations += 30;
        total = total - seg.value + lv + rv;
        total_error = total_error - seg.error + le + re;
        let depth = seg.depth + 1;
        active.push(Segment { a: seg.a, b: mid, value: lv, error: le, depth });
        active.push(Segment { a: mid, b: seg.b, value: rv, error: re, depth });
    }

    let mut all: Vec<Segment<T>> = active.into_iter().chain(frozen).collect();
    all.sort_by(|x, y| x.a.partial_cmp(&y.a).expect("finite endpoints"));
    let value = all.iter().fold(T::zero(), |acc, s| acc + s.value);
    let abs_error_estimate = all.iter().fold(T::zero(), |acc, s| acc + s.error);
    if abs_error_estimate > cfg.tolerance(value) {
        return Err(QuadratureError::NonConvergence {
            best: value.as_f64(),
            error_estimate: abs_error_estimate.as_f64(),
            evaluations,
        });
    }
    Ok(QuadratureResult { value, abs_error_estimate, evaluations })
}

/// Adaptive integration of `f` over `[a, b]`; see [`try_integrate_1d`].
pub fn integrate_1d<T, F>(
    mut f: F,
    a: T,
    b: T,
    cfg: &QuadratureConfig<T>,
) -> Result<QuadratureResult<T>, QuadratureError>
where
    T: Scalar,
    F: FnMut(T) -> T,
{
    try_integrate_1d(|x| Ok(f(x)), a, b, cfg)
}

/// Trapezoid rule for a `2π`-periodic integrand over `[0, 2π)`, doubling the
/// number of nodes (starting at `n_start`) until two successive sums agree.
pub fn periodic_trapezoid<T, F>(
    mut f: F,
    n_start: usize,
    cfg: &QuadratureConfig<T>,
) -> Result<QuadratureResult<T>, QuadratureError>
where
    T: Scalar,
    F: FnMut(T) -> Result<T, QuadratureError>,
{
    const MAX_NODES: usize = 1 << 16;
    let n_start = n_start.max(4);
    let mut n = n_start;
    let mut sum = T::zero();
    for j in 0..n {
        sum = sum + f(T::TAU() * T::from_count(j) / T::from_count(n))?;
    }
    let mut current = sum * T::TAU() / T::from_count(n);
    let mut evaluations = n;
    loop {
        // Midpoints of the current nodes.
        let mut mids = T::zero();
        for j in 0..n {
            mids = mids + f(T::TAU() * (T::from_count(2 * j + 1)) / T::from_count(2 * n))?;
        }
        evaluations += n;
        sum = sum + mids;
        n *= 2;
        let refined = sum * T::TAU() / T::from_count(n);
        let diff = (refined - current).abs();
        if !refined.is_finite() {
            return Err(QuadratureError::Integrand("non-finite periodic sum".into()));
        }
        if diff <= cfg.tolerance(refined) {
            return Ok(QuadratureResult { value: refined, abs_error_estimate: diff, evaluations });
        }
        if n >= MAX_NODES {
            return Err(QuadratureError::NonConvergence {
                best: refined.as_f64(),
                error_estimate: diff.as_f64(),
                evaluations,
            });
        }
        current = refined;
    }
}
