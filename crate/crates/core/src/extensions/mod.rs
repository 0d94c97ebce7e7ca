//! Abelian extensions of quandles and non-connected LSS constructions.

mod cocycle;
mod union;

use thiserror::Error;

use crate::congruence::CongruenceError;
use crate::lss::LssError;
use crate::quandle::QuandleError;

pub use cocycle::*;
pub use union::*;

#[derive(Debug, Error)]
pub enum ExtensionError {
    #[error("cocycle condition {condition} fails at ({a}, {b}, {c})")]
    CocycleViolation { condition: &'static str, a: usize, b: usize, c: usize },
    #[error("base quandle is not latin")]
    NotLatin,
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("generator condition fails: {0}")]
    GeneratorCondition(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("action compatibility {condition} fails at x = {x}, a = {a}")]
    CompatibilityViolation { condition: &'static str, x: usize, a: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Lss(#[from] LssError),
}
