//! Field descriptor files.
//!
//! A descriptor is a TOML document with a `kind` key:
//!
//! ```toml
//! kind = "spin"          # θ = (k - 1)·β
//! k = 4
//! ```
//!
//! ```toml
//! kind = "north_south"
//! ```
//!
//! ```toml
//! kind = "grid"
//! n_alpha = 16           # rows, south to north, at latitudes -π/2 + (i + 1/2)π/n_alpha
//! n_beta = 32            # columns at longitudes 2πj/n_beta
//! theta_csv = "theta.csv"  # n_alpha lines of n_beta angles (radians), relative to the descriptor
//! # or inline: theta = [[0.0, 0.1, ...], ...]
//! ```
//!
//! ```toml
//! kind = "perturbed"
//! [base]
//! kind = "spin"
//! k = 4
//! [[bump]]
//! amplitude = 0.3
//! center_alpha = 0.0
//! center_beta = 3.141592653589793
//! width = 0.5
//! ```
//!
//! Bump keys that are left out are drawn from a seeded generator: centre latitude
//! in `[-1, 1]`, longitude in `[0, 2π)`, width in `[0.2, 0.5]`, amplitude in `(0, 0.5]`.

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::fields::{random_bump, BumpSpec, FieldError, GridField, UnitField};
use crate::geometry::SphericalPoint;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Parse(String),
    #[error("theta payload {path}: {message}")]
    Csv { path: PathBuf, message: String },
    #[error("invalid descriptor: {0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldDescriptor {
    Spin {
        k: i64,
    },
    NorthSouth,
    Grid {
        n_alpha: usize,
        n_beta: usize,
        #[serde(default)]
        theta: Option<Vec<Vec<f64>>>,
        #[serde(default)]
        theta_csv: Option<PathBuf>,
    },
    Perturbed {
        base: Box<FieldDescriptor>,
        bump: OneOrMany<BumpDescriptor>,
    },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    pub fn as_slice(&self) -> &[T] {
        match self {
            OneOrMany::One(x) => std::slice::from_ref(x),
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpDescriptor {
    pub amplitude: Option<f64>,
    pub center_alpha: Option<f64>,
    pub center_beta: Option<f64>,
    pub width: Option<f64>,
}

impl FieldDescriptor {
    pub fn from_toml_str(text: &str) -> Result<Self, DescriptorError> {
        toml::from_str(text).map_err(|e| DescriptorError::Parse(e.to_string()))
    }

    /// Reads and parses a descriptor file.
    pub fn load(path: &Path) -> Result<Self, DescriptorError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| DescriptorError::Io { path: path.to_path_buf(), source })?;
        Self::from_toml_str(&text).map_err(|e| match e {
            DescriptorError::Parse(msg) => DescriptorError::Parse(format!("{}: {}", path.display(), msg)),
            other => other,
        })
    }

    /// Builds the field. Relative CSV paths resolve against `base_dir`; missing
    /// bump parameters are drawn from a generator seeded with `seed`.
    pub fn build<T: Scalar>(&self, base_dir: &Path, seed: u64) -> Result<UnitField<T>, DescriptorError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.build_with(base_dir, &mut rng)
    }

    fn build_with<T: Scalar>(&self, base_dir: &Path, rng: &mut ChaCha8Rng) -> Result<UnitField<T>, DescriptorError> {
        match self {
            FieldDescriptor::Spin { k } => Ok(UnitField::spin(*k)?),
            FieldDescriptor::NorthSouth => Ok(UnitField::north_south()),
            FieldDescriptor::Grid { n_alpha, n_beta, theta, theta_csv } => {
                let rows = match (theta, theta_csv) {
                    (Some(rows), None) => rows.clone(),
                    (None, Some(path)) => read_theta_csv(&base_dir.join(path))?,
                    _ => {
                        return Err(DescriptorError::Invalid(
                            "grid needs exactly one of `theta` or `theta_csv`".into(),
                        ))
                    }
                };
                if rows.len() != *n_alpha {
                    return Err(DescriptorError::Invalid(format!(
                        "expected {n_alpha} theta rows, found {}",
                        rows.len()
                    )));
                }
                if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != *n_beta) {
                    return Err(DescriptorError::Invalid(format!(
                        "theta row {} has {} values, expected {n_beta}",
                        i + 1,
                        r.len()
                    )));
                }
                let values = rows.into_iter().flatten().map(T::lit).collect();
                Ok(UnitField::from_grid(GridField::new(*n_alpha, *n_beta, values)?))
            }
            FieldDescriptor::Perturbed { base, bump } => {
                let mut field = base.build_with(base_dir, rng)?;
                for b in bump.as_slice() {
                    field = field.perturb(b.resolve(rng)?);
                }
                Ok(field)
            }
        }
    }
}

impl BumpDescriptor {
    fn resolve<T: Scalar>(&self, rng: &mut ChaCha8Rng) -> Result<BumpSpec<T>, FieldError> {
        let drawn: BumpSpec<T> = random_bump(rng, self.amplitude.map(T::lit))?;
        let center = SphericalPoint::new(
            self.center_alpha.map(T::lit).unwrap_or(drawn.center().alpha()),
            self.center_beta.map(T::lit).unwrap_or(drawn.center().beta()),
        )?;
        BumpSpec::new(drawn.amplitude(), center, self.width.map(T::lit).unwrap_or(drawn.width()))
    }
}

fn read_theta_csv(path: &Path) -> Result<Vec<Vec<f64>>, DescriptorError> {
    let csv_err = |message: String| DescriptorError::Csv { path: path.to_path_buf(), message };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_err(e.to_string()))?;
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_err(e.to_string()))?;
        let row = record
            .iter()
            .enumerate()
            .map(|(col, field)| {
                field
                    .parse::<f64>()
                    .map_err(|_| csv_err(format!("line {}, column {}: `{field}` is not a number", line + 1, col + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldKind;

    #[test]
    fn parses_every_kind() {
        assert_eq!(FieldDescriptor::from_toml_str("kind = \"spin\"\nk = 4").unwrap(), FieldDescriptor::Spin { k: 4 });
        assert_eq!(FieldDescriptor::from_toml_str("kind = \"north_south\"").unwrap(), FieldDescriptor::NorthSouth);
        let d = FieldDescriptor::from_toml_str(
            "kind = \"perturbed\"\n[base]\nkind = \"spin\"\nk = 3\n[bump]\namplitude = 0.4\n",
        )
        .unwrap();
        let FieldDescriptor::Perturbed { base, bump } = &d else { panic!() };
        assert_eq!(**base, FieldDescriptor::Spin { k: 3 });
        assert_eq!(bump.as_slice()[0].amplitude, Some(0.4));
    }

    #[test]
    fn malformed_input_reports_position() {
        let err = FieldDescriptor::from_toml_str("kind = \"spin\"\nk = = 4\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("column"), "{msg}");
        assert!(FieldDescriptor::from_toml_str("kind = \"torus\"").is_err());
        assert!(FieldDescriptor::from_toml_str("kind = \"spin\"\nk = 4\nextra = 1").is_err());
    }

    #[test]
    fn builds_fields() {
        let dir = Path::new(".");
        let f: UnitField<f64> = FieldDescriptor::Spin { k: 4 }.build(dir, 0).unwrap();
        assert!(matches!(f.kind(), FieldKind::Spin { k: 4 }));
        assert!(FieldDescriptor::Spin { k: 0 }.build::<f64>(dir, 0).is_err());
        let grid = FieldDescriptor::Grid {
            n_alpha: 8,
            n_beta: 8,
            theta: Some(vec![vec![0.5; 8]; 8]),
            theta_csv: None,
        };
        assert!(grid.build::<f64>(dir, 0).unwrap().grid().is_some());
        let short = FieldDescriptor::Grid { n_alpha: 8, n_beta: 8, theta: Some(vec![vec![0.5; 8]; 7]), theta_csv: None };
        assert!(matches!(short.build::<f64>(dir, 0), Err(DescriptorError::Invalid(_))));
    }

    #[test]
    fn random_bumps_are_seeded() {
        let d = FieldDescriptor::from_toml_str("kind = \"perturbed\"\n[base]\nkind = \"spin\"\nk = 3\n[bump]\n").unwrap();
        let a: UnitField<f64> = d.build(Path::new("."), 7).unwrap();
        let b: UnitField<f64> = d.build(Path::new("."), 7).unwrap();
        let c: UnitField<f64> = d.build(Path::new("."), 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn reads_csv_payload() {
        let dir = tempfile::tempdir().unwrap();
        let line = ["1.5"; 8].join(",");
        std::fs::write(dir.path().join("t.csv"), vec![line; 8].join("\n")).unwrap();
        let d = FieldDescriptor::from_toml_str("kind = \"grid\"\nn_alpha = 8\nn_beta = 8\ntheta_csv = \"t.csv\"").unwrap();
        let f: UnitField<f64> = d.build(dir.path(), 0).unwrap();
        assert!(f.grid().unwrap().theta_values().iter().all(|&t| t == 1.5));

        std::fs::write(dir.path().join("bad.csv"), "1,2,x\n").unwrap();
        let d = FieldDescriptor::from_toml_str("kind = \"grid\"\nn_alpha = 8\nn_beta = 8\ntheta_csv = \"bad.csv\"").unwrap();
        let err = d.build::<f64>(dir.path(), 0).unwrap_err().to_string();
        assert!(err.contains("line 1, column 3"), "{err}");
    }
}
