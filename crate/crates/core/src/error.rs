use std::path::PathBuf;

use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid seed {seed}: {clause}")]
    InvalidSeed { seed: String, clause: String },

    #[error("invalid quadruple {quad}: {clause}")]
    InvalidQuadruple { quad: String, clause: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "substitution leaves non-integral coefficient {coefficient} = {value} in form q{form}"
    )]
    NonIntegral {
        form: usize,
        coefficient: &'static str,
        value: Rational,
    },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(
        "search grid has {points} points, over the limit of {limit}; set allow_large to override"
    )]
    Guardrail { points: u128, limit: u128 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
