use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} = {value} is out of range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit: {needed_bytes} bytes needed, budget is {budget_bytes} bytes")]
    ResourceLimit { needed_bytes: u64, budget_bytes: u64 },

    #[error("accuracy target {requested:e} not reached; best achievable bound {achieved:e}")]
    Accuracy { requested: f64, achieved: f64 },

    #[error("|eta(s)| = {magnitude:e} is within {threshold:e} of zero")]
    NearZeroDenominator { magnitude: f64, threshold: f64 },

    #[error("cache file: {0}")]
    CacheFormat(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
