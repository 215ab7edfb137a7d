use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coincident circles: centers ({x:.6}, {y:.6}) share radius {radius}")]
    CoincidentCircles { x: f64, y: f64, radius: f64 },

    #[error("too many anchors: {count} exceeds cap {cap}")]
    TooManyAnchors { count: usize, cap: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("sampling grid too large: {cells} cells exceeds limit {limit}")]
    GridTooLarge { cells: f64, limit: f64 },

    #[error("invalid colander spec: {0}")]
    SpecInvalid(String),

    #[error(
        "cross-check failure: sampled diameter {sampled} exceeds analytic {analytic} + slack {slack}"
    )]
    CrossCheckFailure { sampled: f64, analytic: f64, slack: f64 },

    #[error("face has no boundary candidates")]
    EmptyFace,

    #[error("signature is not realized by any sampled domain point")]
    InfeasibleSignature,

    #[error("too many points: {count} exceeds limit {limit}")]
    TooManyPoints { count: usize, limit: usize },

    #[error("integer overflow computing g({n}, {d})")]
    Overflow { n: u64, d: u64 },

    #[error("no anchor count up to {cap} reaches epsilon {epsilon}")]
    SearchExhausted { cap: usize, epsilon: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
