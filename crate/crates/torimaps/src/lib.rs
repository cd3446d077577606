//! Exact toolkit for toroidal combinatorial maps.
//!
//! Maps are rotation systems (`sigma`, `alpha`) on darts. On top of them the
//! crate builds weighted biorientations, the canonical balanced orientations
//! of toroidal d-angulations, the closure bijection with decorated unicellular
//! mobiles, exhaustive generators, and exact power-series counting.

pub mod balanced;
pub mod bijection;
pub mod enumerate;
pub mod flow;
pub mod map;
pub mod orientation;
pub mod series;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use map::{CombMap, Dart, FaceRootedMap};
pub use orientation::{Regime, WeightedBiorientation};
