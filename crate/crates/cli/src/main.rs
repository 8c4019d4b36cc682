//! `unitvol`: volumes of unit vector fields on the punctured sphere.

mod output;
mod plot;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use unitvol::analysis::{self, DEFAULT_MEASURING_LATITUDE};
use unitvol::descriptor::{DescriptorError, FieldDescriptor};
use unitvol::quadrature::QuadratureError;
use unitvol::{AnalysisError, QuadratureConfig, UnitField};

use output::OutputRecord;
use plot::{Hemisphere, PlotOptions};

#[derive(Parser)]
#[command(name = "unitvol", version, about = "Volumes of unit vector fields on the sphere minus two antipodal points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Volume of the field with its error estimate.
    Volume {
        descriptor: PathBuf,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the results as key,value CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Pole indexes, the elliptic lower bound and the margin above it.
    Bound {
        descriptor: PathBuf,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Latitude of the parallels on which the indexes are read.
        #[arg(long, default_value_t = DEFAULT_MEASURING_LATITUDE, allow_hyphen_values = true)]
        measuring_latitude: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Volume against the bound for the fields θ = (k - 1)β, k in k_min..=k_max.
    Sweep {
        #[arg(allow_hyphen_values = true)]
        k_min: i64,
        #[arg(allow_hyphen_values = true)]
        k_max: i64,
        #[command(flatten)]
        quad: QuadArgs,
        /// CSV file with header k,volume,bound,rel_gap.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Line integral of the connection form along a parallel against 2π(k - 1 + sin α).
    Stokes {
        descriptor: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
        /// Trapezoid nodes along the parallel.
        #[arg(long, default_value_t = 256)]
        n_beta: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// SVG glyph plot of one hemisphere in orthographic projection.
    Plot {
        descriptor: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, value_enum, default_value_t = Hemisphere::North)]
        hemisphere: Hemisphere,
        /// Glyphs per diameter.
        #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u32).range(2..=400))]
        density: u32,
        /// Image size in pixels.
        #[arg(long, default_value_t = 600.0)]
        size: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Clone, Copy)]
struct QuadArgs {
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    pole_margin: Option<f64>,
    #[arg(long)]
    max_depth: Option<usize>,
    /// Trapezoid nodes in longitude for the inner integral.
    #[arg(long)]
    n_beta: Option<usize>,
}

impl QuadArgs {
    fn config(&self) -> Result<QuadratureConfig, CliError> {
        let d = QuadratureConfig::default();
        let cfg = QuadratureConfig {
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            abs_tol: self.abs_tol.unwrap_or(d.abs_tol),
            max_depth: self.max_depth.unwrap_or(d.max_depth),
            pole_margin: self.pole_margin.unwrap_or(d.pole_margin),
            n_beta: self.n_beta.unwrap_or(d.n_beta),
        };
        cfg.validate().map_err(|e| CliError::Input(e.to_string()))?;
        Ok(cfg)
    }

    fn echo(&self, cfg: &QuadratureConfig, rec: &mut OutputRecord) {
        rec.input("rel_tol", output::sig10(cfg.rel_tol));
        rec.input("abs_tol", output::sig10(cfg.abs_tol));
        rec.input("pole_margin", output::sig10(cfg.pole_margin));
        rec.input("max_depth", cfg.max_depth);
        rec.input("n_beta", cfg.n_beta);
    }
}

#[derive(Debug)]
enum CliError {
    Input(String),
    NonConvergence(String),
    IndexUndetermined(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::NonConvergence(_) => 3,
            CliError::IndexUndetermined(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::NonConvergence(m) | CliError::IndexUndetermined(m) => m,
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::IndexUndetermined { .. } | AnalysisError::PoincareHopf { .. } => {
                CliError::IndexUndetermined(e.to_string())
            }
            AnalysisError::Quadrature(QuadratureError::InvalidConfig(_) | QuadratureError::InvalidArgument(_)) => {
                CliError::Input(e.to_string())
            }
            AnalysisError::Quadrature(_) => CliError::NonConvergence(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<DescriptorError> for CliError {
    fn from(e: DescriptorError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn load_field(path: &Path, seed: u64) -> Result<(FieldDescriptor, UnitField), CliError> {
    let descriptor = FieldDescriptor::load(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let field = descriptor.build::<f64>(base, seed)?;
    Ok((descriptor, field))
}

fn describe(d: &FieldDescriptor) -> String {
    match d {
        FieldDescriptor::Spin { k } => format!("spin k={k}"),
        FieldDescriptor::NorthSouth => "north_south".into(),
        FieldDescriptor::Grid { n_alpha, n_beta, .. } => format!("grid {n_alpha}x{n_beta}"),
        FieldDescriptor::Perturbed { base, bump } => {
            format!("perturbed {} with {} bump(s)", describe(base), bump.as_slice().len())
        }
    }
}

fn write_csv(rec: &OutputRecord, path: &Option<PathBuf>) -> Result<(), CliError> {
    if let Some(p) = path {
        rec.write_csv(p).map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<OutputRecord, CliError> {
    match cli.command {
        Command::Volume { descriptor, quad, seed, csv } => {
            let cfg = quad.config()?;
            let (desc, field) = load_field(&descriptor, seed)?;
            let mut rec = OutputRecord::new("volume");
            rec.input("descriptor", descriptor.display());
            rec.input("field", describe(&desc));
            quad.echo(&cfg, &mut rec);
            let v = analysis::volume(&field, &cfg)?;
            rec.estimate("volume", v.value, v.abs_error_estimate);
            rec.int("evaluations", v.evaluations as i64);
            write_csv(&rec, &csv)?;
            Ok(rec)
        }
        Command::Bound { descriptor, quad, seed, measuring_latitude, csv } => {
            let cfg = quad.config()?;
            let (desc, field) = load_field(&descriptor, seed)?;
            let mut rec = OutputRecord::new("bound");
            rec.input("descriptor", descriptor.display());
            rec.input("field", describe(&desc));
            quad.echo(&cfg, &mut rec);
            rec.input("measuring_latitude", output::sig10(measuring_latitude));
            let r = analysis::bound_report_at(&field, &cfg, measuring_latitude)?;
            rec.int("index_north", r.indexes.index_north);
            rec.int("index_south", r.indexes.index_south);
            rec.real("index_residual", r.indexes.residual);
            rec.int("k", r.k);
            rec.estimate("volume", r.volume.value, r.volume.abs_error_estimate);
            rec.int("evaluations", r.volume.evaluations as i64);
            rec.real("bound", r.bound);
            rec.estimate("margin", r.margin, r.volume.abs_error_estimate);
            rec.text("status", if r.satisfied { "SATISFIED" } else { "VIOLATED" });
            rec.text("attains_bound", r.attains_bound.to_string());
            if let Some(note) = r.note {
                rec.text("note", note);
            }
            write_csv(&rec, &csv)?;
            Ok(rec)
        }
        Command::Sweep { k_min, k_max, quad, csv } => {
            let cfg = quad.config()?;
            let mut rec = OutputRecord::new("sweep");
            rec.input("k_min", k_min);
            rec.input("k_max", k_max);
            quad.echo(&cfg, &mut rec);
            let rows = analysis::sweep(k_min, k_max, &cfg)?;
            for row in &rows {
                rec.estimate(&format!("volume_{}", row.k), row.volume.value, row.volume.abs_error_estimate);
                rec.real(&format!("bound_{}", row.k), row.bound);
                rec.real(&format!("rel_gap_{}", row.k), row.rel_gap);
            }
            if let Some(path) = &csv {
                let write = || -> csv::Result<()> {
                    let mut w = csv::Writer::from_path(path)?;
                    w.write_record(["k", "volume", "bound", "rel_gap"])?;
                    for row in &rows {
                        w.write_record([
                            row.k.to_string(),
                            output::exact(row.volume.value),
                            output::exact(row.bound),
                            output::exact(row.rel_gap),
                        ])?;
                    }
                    w.flush()?;
                    Ok(())
                };
                write().map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(rec)
        }
        Command::Stokes { descriptor, alpha, n_beta, seed, csv } => {
            if n_beta < 4 {
                return Err(CliError::Input("--n-beta must be at least 4".into()));
            }
            let (desc, field) = load_field(&descriptor, seed)?;
            let mut rec = OutputRecord::new("stokes");
            rec.input("descriptor", descriptor.display());
            rec.input("field", describe(&desc));
            rec.input("alpha", output::sig10(alpha));
            rec.input("n_beta", n_beta);
            let s = analysis::stokes_check(&field, alpha, n_beta)?;
            let coarse = analysis::stokes_check(&field, alpha, n_beta / 2)?;
            rec.estimate("lhs", s.lhs, (s.lhs - coarse.lhs).abs());
            rec.real("rhs", s.rhs);
            rec.real("abs_diff", s.abs_diff);
            write_csv(&rec, &csv)?;
            Ok(rec)
        }
        Command::Plot { descriptor, svg, hemisphere, density, size, seed } => {
            if !(size.is_finite() && size >= 50.0) {
                return Err(CliError::Input("--size must be at least 50".into()));
            }
            let (desc, field) = load_field(&descriptor, seed)?;
            let opts = PlotOptions { hemisphere, density: density as usize, size };
            let glyphs = plot::glyphs(&field, &opts).map_err(|e| CliError::Input(e.to_string()))?;
            let side = match hemisphere {
                Hemisphere::North => "north",
                Hemisphere::South => "south",
            };
            let title = format!("{}, {side} hemisphere", describe(&desc));
            std::fs::write(&svg, plot::render_svg(&glyphs, &opts, &title))
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", svg.display())))?;
            let mut rec = OutputRecord::new("plot");
            rec.input("descriptor", descriptor.display());
            rec.input("field", describe(&desc));
            rec.input("hemisphere", side);
            rec.input("density", density);
            rec.int("glyphs", glyphs.len() as i64);
            rec.text("svg", svg.display().to_string());
            Ok(rec)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(cli) {
        Ok(mut rec) => {
            rec.timing_ms = start.elapsed().as_secs_f64() * 1e3;
            if let Err(e) = rec.write_human(std::io::stdout().lock()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            eprintln!("elapsed_ms = {:.1}", rec.timing_ms);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
