//! Batch front end for `osp-yangian`: suite selection, parallel runs with
//! deterministic ordering, text and JSON reports, and exact matrix export.

pub mod export;
pub mod formats;
pub mod runner;

use std::fmt;

/// A bad command-line parameter, naming the offending field.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("--{field}: {message}")]
pub struct UsageError {
    pub field: String,
    pub message: String,
}

impl UsageError {
    pub fn new(field: impl Into<String>, message: impl fmt::Display) -> Self {
        Self { field: field.into(), message: message.to_string() }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Usage(#[from] UsageError),
    #[error(transparent)]
    Core(#[from] osp_yangian::Error),
}
