//! Finite-size experiments around the density of normalized syzygy weights.
//!
//! The statements these functions probe are asymptotic in `d`; nothing here
//! asserts them. [`wedge_sum_set`] enumerates sums of distinct lattice points,
//! [`average_hit`] searches for subsets of `dΔ ∩ Z^n` whose average lands
//! near a target, [`density_report`] measures how well the computed weights
//! cover Δ and [`upper_bound_check`] compares weights against `τ`.

mod average;
mod density;
mod upper;
mod wedge;

use thiserror::Error;

use crate::cap::CapError;
use crate::geometry::GeometryError;
use crate::koszul::SyzygyError;

pub use average::{average_hit, AverageWitness};
pub use density::{density_report, DensityOptions, DensityReport, DensitySample, NormalizedWeight};
pub use upper::{upper_bound_check, SlackEntry, UpperBoundReport, SLACK_MARGINS};
pub use wedge::{binomial, wedge_sum_set, wedge_sum_set_sampled, WedgeSumSet};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticsError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Syzygy(#[from] SyzygyError),
    #[error(transparent)]
    Cap(#[from] CapError),
    #[error("{count} subsets exceed the enumeration limit {limit}; use sampled mode")]
    LimitExceeded { count: u128, limit: u128 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
