use std::path::PathBuf;

use thiserror::Error;

use crate::spaces::{Point2, Region};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point ({}, {}) is not finite", .0.x, .0.y)]
    NonFinite(Point2),

    #[error("point ({}, {}) lies outside region {region}", .point.x, .point.y)]
    OutsideRegion { point: Point2, region: Region },

    #[error("rejection sampling of {region} exhausted its budget of {budget} attempts")]
    SamplingBudget { region: Region, budget: usize },

    #[error("region {0} cannot be sampled")]
    Unsampleable(Region),

    #[error("delta {0} outside [0, 1/64]")]
    InvalidDelta(f64),

    #[error("delta {0} outside [0, 1/4) for threshold evaluation")]
    ThresholdDomain(f64),

    #[error("averaged midpoint ({}, {}) fell outside X1", .0.x, .0.y)]
    MidpointOutsideDomain(Point2),

    #[error("midpoint iteration did not reach tol {tol} within {max_iter} steps (last gap {gap})")]
    NoConvergence { tol: f64, max_iter: usize, gap: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid monotone function: {0}")]
    Monotone(String),

    #[error("ball of radius {radius} around ({}, {}) is not contained in the domain; boundary point ({}, {}) escapes", .center.x, .center.y, .escape.x, .escape.y)]
    BallNotInDomain {
        center: Point2,
        radius: f64,
        escape: Point2,
    },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
