use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no averaging window fits around frame {center} in a sequence of {total} frames")]
    Bounds { center: usize, total: usize },

    #[error("degenerate scene: every candidate window reproduces the sharp frame exactly")]
    DegenerateScene,

    #[error("degenerate statistic: {0}")]
    DegenerateStatistic(String),

    #[error("split error: {0}")]
    Split(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input error: {0}")]
    Input(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
