//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line for each
//! and exits non-zero if any fails.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use unitvol::analysis::{bound_report, elliptic_bound, index_report, stokes_check, volume};
use unitvol::curvature::{curvatures_closed, curvatures_expanded};
use unitvol::fields::{make_grid, random_bump, BumpSpec, UnitField};
use unitvol::geometry::SphericalPoint;
use unitvol::quadrature::{elliptic_e, integrate_1d, integrate_sphere, QuadratureConfig};

type Outcome = Result<String, String>;

fn cfg() -> QuadratureConfig<f64> {
    QuadratureConfig::default()
}

fn criterion_1_equality_family() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for k in [1, 3, 4, 5, 10] {
        let v = volume(&UnitField::spin(k).unwrap(), &cfg()).map_err(|e| e.to_string())?;
        let bound = elliptic_bound::<f64>(k).unwrap();
        let rel = (v.value - bound).abs() / bound;
        worst = worst.max(rel);
        if rel > 1e-6 {
            return Err(format!("k={k}: volume {} vs bound {bound}, relative gap {rel:e}", v.value));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 10.0 {
        return Err(format!("took {secs:.1} s (limit 10 s)"));
    }
    Ok(format!("max relative gap {worst:.2e}, {secs:.2} s"))
}

fn criterion_2_known_values() -> Outcome {
    let v = volume(&UnitField::north_south(), &cfg()).map_err(|e| e.to_string())?;
    let exact = 2.0 * PI * PI;
    let rel_ns = (v.value - exact).abs() / exact;
    if rel_ns > 1e-7 {
        return Err(format!("north-south volume {} vs 2π² = {exact}", v.value));
    }
    let bound = elliptic_bound::<f64>(4).unwrap();
    let agm = 16.0 * PI * elliptic_e(0.75).unwrap();
    if (bound - agm).abs() > 1e-14 * agm {
        return Err(format!("bound {bound} differs from 16πE(0.75) = {agm}"));
    }
    let quad = 4.0 * PI * integrate_1d(|t: f64| (4.0 + 12.0 * t.sin().powi(2)).sqrt(), 0.0, PI / 2.0, &cfg()).unwrap().value;
    let rel_b = (bound - quad).abs() / quad;
    if rel_b > 1e-9 {
        return Err(format!("bound {bound} vs quadrature {quad}, relative {rel_b:e}"));
    }
    Ok(format!("vol(north-south) rel err {rel_ns:.2e}; πL(ε₄) = {bound:.10} (AGM vs quadrature {rel_b:.2e})"))
}

fn criterion_3_proposition_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst_abs, mut worst_rel) = (0.0_f64, 0.0_f64);
    for _ in 0..10_000 {
        let theta = rng.gen_range(-PI..PI);
        let theta1 = rng.gen_range(-10.0..10.0);
        let theta2 = rng.gen_range(-10.0..10.0);
        let alpha = rng.gen_range(-1.5..=1.5);
        let closed = curvatures_closed(theta, theta1, theta2, alpha);
        let expanded = curvatures_expanded(theta, theta1, theta2, alpha);
        worst_abs = worst_abs.max((closed.gamma - expanded.gamma).abs()).max((closed.delta - expanded.delta).abs());
        let lhs = 1.0 + closed.gamma.powi(2) + closed.delta.powi(2);
        let rhs = 1.0 + (alpha.tan() + theta1).powi(2) + theta2.powi(2);
        worst_rel = worst_rel.max((lhs - rhs).abs() / rhs);
    }
    if worst_abs > 1e-12 || worst_rel > 1e-10 {
        return Err(format!("expanded vs closed {worst_abs:e} (limit 1e-12), identity {worst_rel:e} (limit 1e-10)"));
    }
    Ok(format!("expanded vs closed max {worst_abs:.2e}, identity max rel {worst_rel:.2e}"))
}

fn criterion_4_stokes() -> Outcome {
    let mut worst = 0.0_f64;
    for k in [1, 3, 4, 7] {
        let field = UnitField::spin(k).unwrap();
        for alpha in [-1.2, -0.5, 0.0, 0.5, 1.2] {
            let s = stokes_check(&field, alpha, 64).map_err(|e| e.to_string())?;
            worst = worst.max(s.abs_diff);
            if s.abs_diff > 1e-9 {
                return Err(format!("k={k}, α={alpha}: lhs {} rhs {}", s.lhs, s.rhs));
            }
        }
    }
    Ok(format!("max |lhs - rhs| = {worst:.2e}"))
}

fn criterion_5_indexes() -> Outcome {
    for k in 1..=12 {
        let r = index_report(&UnitField::spin(k).unwrap(), 1.2).map_err(|e| e.to_string())?;
        if (r.index_north, r.index_south) != (k, 2 - k) {
            return Err(format!("Spin({k}): I_N = {}, I_S = {}", r.index_north, r.index_south));
        }
    }
    let mut others = vec![
        UnitField::north_south(),
        UnitField::from_grid(make_grid(&UnitField::spin(4).unwrap(), 32, 64).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let k = rng.gen_range(1..=8);
        let bump = random_bump(&mut rng, None).unwrap();
        others.push(UnitField::spin(k).unwrap().perturb(bump));
    }
    for f in &others {
        let r = index_report(f, 1.2).map_err(|e| e.to_string())?;
        if r.index_north + r.index_south != 2 {
            return Err(format!("indexes {} + {} != 2", r.index_north, r.index_south));
        }
    }
    Ok(format!("Spin(1..=12) exact; {} further fields sum to 2", others.len()))
}

fn criterion_6_theorem_inequality() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let fields: Vec<(i64, f64, UnitField<f64>)> = (0..50)
        .map(|_| {
            let k = rng.gen_range(3..=5);
            let bump = random_bump(&mut rng, None).unwrap();
            (k, bump.amplitude(), UnitField::spin(k).unwrap().perturb(bump))
        })
        .collect();
    let reports: Vec<_> = fields
        .par_iter()
        .map(|(k, a, f)| (*k, *a, bound_report(f, &cfg())))
        .collect();
    let mut min_ratio = f64::INFINITY;
    for (k, amplitude, report) in reports {
        let r = report.map_err(|e| e.to_string())?;
        if r.k != k || !r.satisfied {
            return Err(format!("Spin({k}) amplitude {amplitude}: k={} margin {:e} satisfied={}", r.k, r.margin, r.satisfied));
        }
        if amplitude >= 0.05 {
            let ratio = r.margin / r.volume.abs_error_estimate;
            min_ratio = min_ratio.min(ratio);
            if r.margin <= 10.0 * r.volume.abs_error_estimate {
                return Err(format!(
                    "Spin({k}) amplitude {amplitude}: margin {:e} not above 10x error {:e}",
                    r.margin, r.volume.abs_error_estimate
                ));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 120.0 {
        return Err(format!("took {secs:.1} s (limit 120 s)"));
    }
    Ok(format!("50 fields satisfied; min margin/error = {min_ratio:.3e}; {secs:.1} s"))
}

fn criterion_7_quadrature_sanity() -> Outcome {
    let area = integrate_sphere(|_| Ok::<_, std::convert::Infallible>(1.0), &cfg()).map_err(|e| e.to_string())?;
    let rel = (area.value - 4.0 * PI).abs() / (4.0 * PI);
    if rel > 1e-8 {
        return Err(format!("sphere area {} (rel {rel:e})", area.value));
    }
    let e0 = elliptic_e(0.0_f64).unwrap();
    let e1 = elliptic_e(1.0_f64).unwrap();
    if (e0 - PI / 2.0).abs() > 1e-14 * PI / 2.0 || (e1 - 1.0).abs() > 1e-14 {
        return Err(format!("E(0) = {e0}, E(1) = {e1}"));
    }
    Ok(format!("area rel err {rel:.2e}; E(0) = {e0}, E(1) = {e1}"))
}

/// RMS error of the grid's frame derivatives against the closed form at fixed off-grid probes.
fn grid_rms_error(exact: &UnitField<f64>, n: usize) -> f64 {
    let grid = UnitField::from_grid(make_grid(exact, n, n).unwrap());
    let probes = 997;
    let mut sum = 0.0;
    for j in 0..probes {
        let alpha = -1.2 + 2.4 * (j as f64 + 0.5) / probes as f64;
        let beta = (j as f64 * 2.399_963_229_728_653).rem_euclid(2.0 * PI);
        let p = SphericalPoint::new(alpha, beta).unwrap();
        let a = exact.evaluate(&p).unwrap();
        let g = grid.evaluate(&p).unwrap();
        sum += (a.theta1 - g.theta1).powi(2) + (a.theta2 - g.theta2).powi(2);
    }
    (sum / probes as f64).sqrt()
}

/// θ of Spin(3) is linear in β, so its central differences are exact; the rate is
/// measured on Spin(3) carrying a wide bump.
fn criterion_8_grid_convergence() -> Outcome {
    let spin3 = UnitField::<f64>::spin(3).unwrap();
    let spin_errors: Vec<f64> = [32, 64, 128].iter().map(|&n| grid_rms_error(&spin3, n)).collect();
    if spin_errors.iter().any(|&e| e > 1e-12) {
        return Err(format!("Spin(3) grid errors {spin_errors:?}"));
    }
    let bump = BumpSpec::new(0.5, SphericalPoint::new(0.2, 3.0).unwrap(), 1.2).unwrap();
    let bumped = spin3.perturb(bump);
    let errors: Vec<f64> = [128, 256, 512].iter().map(|&n| grid_rms_error(&bumped, n)).collect();
    let ratios = [errors[0] / errors[1], errors[1] / errors[2]];
    if ratios.iter().any(|r| !(3.5..=4.5).contains(r)) {
        return Err(format!("errors {errors:?}, ratios {ratios:?}"));
    }
    Ok(format!(
        "Spin(3) max error {:.1e}; bumped Spin(3) errors {:.3e} {:.3e} {:.3e}, ratios {:.3} {:.3}",
        spin_errors.iter().cloned().fold(0.0, f64::max),
        errors[0],
        errors[1],
        errors[2],
        ratios[0],
        ratios[1]
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 equality family vol(v_k) = πL(ε_k)", criterion_1_equality_family),
        ("2 known values", criterion_2_known_values),
        ("3 curvature identity", criterion_3_proposition_identity),
        ("4 Stokes identity along parallels", criterion_4_stokes),
        ("5 pole indexes", criterion_5_indexes),
        ("6 lower bound on perturbed fields", criterion_6_theorem_inequality),
        ("7 quadrature sanity", criterion_7_quadrature_sanity),
        ("8 grid derivative convergence", criterion_8_grid_convergence),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
