//! Instance ingestion: TSPLIB files and seeded random generators.

pub mod random;
pub mod report;
pub mod tsplib;

use std::fmt;
use std::path::{Path, PathBuf};

use crate::model::{CostMatrix, ModelError};

/// Errors raised while reading or generating instances.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("unsupported keyword {0:?}")]
    UnsupportedKeyword(String),
    #[error("unsupported value {value:?} for keyword {keyword:?}")]
    Unsupported { keyword: String, value: String },
    #[error("missing required keyword {0:?}")]
    Missing(String),
    #[error("line {line}: {detail}")]
    Malformed { line: usize, detail: String },
    #[error("expected {expected} numbers in {section:?}, found {found}")]
    WrongCount {
        section: String,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("bad instance spec {spec:?}: {detail}")]
    BadSpec { spec: String, detail: String },
    #[error("bad report: {0}")]
    Report(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A named cost instance.
#[derive(Debug)]
pub struct Instance {
    pub name: String,
    pub costs: CostMatrix,
}

/// Where an instance comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSource {
    /// A TSPLIB-format file.
    TsplibFile(PathBuf),
    /// Random points on a square grid with ceiled Euclidean costs.
    RandomEuclidean { n: usize, box_size: u64, seed: u64 },
    /// Random symmetric matrix with integer costs in `1..=max_cost`.
    RandomMatrix { n: usize, max_cost: u64, seed: u64 },
}

impl fmt::Display for InstanceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSource::TsplibFile(path) => write!(f, "{}", path.display()),
            InstanceSource::RandomEuclidean { n, box_size, seed } => {
                write!(f, "random-euclidean:{n},box={box_size},seed={seed}")
            }
            InstanceSource::RandomMatrix { n, max_cost, seed } => {
                write!(f, "random-matrix:{n},max={max_cost},seed={seed}")
            }
        }
    }
}

/// Materialise an instance from its source.
pub fn load_instance(source: &InstanceSource) -> Result<Instance, IoError> {
    match source {
        InstanceSource::TsplibFile(path) => tsplib::read_tsplib(path),
        InstanceSource::RandomEuclidean { n, box_size, seed } => Ok(Instance {
            name: source.to_string(),
            costs: random::random_euclidean(*n, *box_size, *seed),
        }),
        InstanceSource::RandomMatrix { n, max_cost, seed } => Ok(Instance {
            name: source.to_string(),
            costs: random::random_matrix(*n, *max_cost, *seed),
        }),
    }
}

/// Parse a CLI instance argument.
///
/// `random-euclidean:<n>[,box=<B>][,seed=<S>]` and
/// `random-matrix:<n>[,max=<M>][,seed=<S>]` select the generators
/// (defaults: box 1000, max 1000, seed `default_seed`); anything else is
/// taken as a TSPLIB file path.
pub fn parse_instance_arg(arg: &str, default_seed: u64) -> Result<InstanceSource, IoError> {
    let bad = |detail: &str| IoError::BadSpec {
        spec: arg.to_string(),
        detail: detail.to_string(),
    };
    let parse_spec = |rest: &str| -> Result<(usize, Vec<(String, u64)>), IoError> {
        let mut parts = rest.split(',');
        let n: usize = parts
            .next()
            .filter(|s| !s.is_empty())
            .ok_or_else(|| bad("missing node count"))?
            .parse()
            .map_err(|_| bad("node count must be an integer"))?;
        let mut options = Vec::new();
        for part in parts {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| bad("options take key=value form"))?;
            let value: u64 = value
                .parse()
                .map_err(|_| bad(&format!("option {key:?} must be an integer")))?;
            options.push((key.to_string(), value));
        }
        Ok((n, options))
    };
    if let Some(rest) = arg.strip_prefix("random-euclidean:") {
        let (n, options) = parse_spec(rest)?;
        let (mut box_size, mut seed) = (1000u64, default_seed);
        for (key, value) in options {
            match key.as_str() {
                "box" => box_size = value,
                "seed" => seed = value,
                other => {
                    return Err(bad(&format!(
                        "unknown option {other:?} (expected box/seed)"
                    )))
                }
            }
        }
        if box_size == 0 {
            return Err(bad("box must be positive"));
        }
        return Ok(InstanceSource::RandomEuclidean { n, box_size, seed });
    }
    if let Some(rest) = arg.strip_prefix("random-matrix:") {
        let (n, options) = parse_spec(rest)?;
        let (mut max_cost, mut seed) = (1000u64, default_seed);
        for (key, value) in options {
            match key.as_str() {
                "max" => max_cost = value,
                "seed" => seed = value,
                other => {
                    return Err(bad(&format!(
                        "unknown option {other:?} (expected max/seed)"
                    )))
                }
            }
        }
        if max_cost == 0 {
            return Err(bad("max must be positive"));
        }
        return Ok(InstanceSource::RandomMatrix { n, max_cost, seed });
    }
    Ok(InstanceSource::TsplibFile(Path::new(arg).to_path_buf()))
}
