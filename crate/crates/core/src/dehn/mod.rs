//! Van Kampen area by bounded search, and exponent bookkeeping for the
//! snowflake groups.
//!
//! Areas of short words do not exhibit the asymptotic Dehn exponent; the
//! witness slopes in [`ExponentReport`] are the growth evidence.

mod area;
mod exponent;

use thiserror::Error;

pub use area::{area_profile, min_area, AreaLimits, AreaProfile, AreaResult};
pub use exponent::{alpha_exponent, dehn_exponent_of, find_pq_for_exponent, ExponentReport, SLOPE_LEVELS};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum DehnError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("no (p, q) within the bound; closest {best:?} misses by {error}")]
    NotFound { best: Option<(u64, u64)>, error: f64 },
}
