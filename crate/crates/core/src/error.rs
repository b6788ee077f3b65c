use thiserror::Error;

use crate::diagram::DiagramViolation;
use crate::mgr::MgrViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("format error: {0}")]
    Format(String),

    #[error("group of order {order} exceeds the configured cap {cap}")]
    TooLarge { order: usize, cap: usize },

    #[error("table does not satisfy the group axioms")]
    NotAGroup,

    #[error("members do not form a normal subgroup")]
    NotNormal,

    #[error("not a rack: {0}")]
    NotARack(String),

    #[error("not a G-family of racks: {0}")]
    NotAGFamily(String),

    #[error("invalid cocycle: extension violates {0}")]
    CocycleInvalid(MgrViolation),

    #[error("construction produced an invalid multiple group rack: {0}")]
    InvalidMgr(MgrViolation),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(DiagramViolation),

    #[error("{mv} site mismatch: expected {expected}; {detail}")]
    MoveMismatch {
        mv: &'static str,
        expected: &'static str,
        detail: String,
    },

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
