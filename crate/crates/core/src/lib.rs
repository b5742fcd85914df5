//! Exact combinatorics of fighting fish.
//!
//! - [`surface`]: fish as glued-cell complexes, boundary walks, projection,
//!   and the incremental growth oracle.
//! - [`grammar`]: the wasp-waist grammar (build, decompose, exhaustive
//!   generation, joint statistic tables).
//! - [`trees`]: ternary trees, j-positive embeddings and their statistics.
//! - [`series`]: truncated multivariate power series over the rationals and
//!   every generating series used by the cross-checks.
//! - [`formulas`]: closed-form counts in exact big integers.
//! - [`validation`]: suites tying all of the above together.

use thiserror::Error;

pub mod formulas;
pub mod grammar;
pub mod series;
pub mod surface;
pub mod table;
pub mod trees;
pub mod validation;

pub use table::JointTable;

/// Upper bound on the work an enumeration may do, in abstract units
/// (sides for the growth oracle, objects for term and tree generation).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_units: u64,
}

impl Budget {
    pub const DEFAULT_UNITS: u64 = 100_000_000;

    pub fn new(max_units: u64) -> Self {
        Budget { max_units }
    }

    pub fn unlimited() -> Self {
        Budget { max_units: u64::MAX }
    }

    pub fn check(&self, needed: u64) -> Result<(), BudgetExceeded> {
        if needed > self.max_units {
            Err(BudgetExceeded {
                limit: self.max_units,
                needed,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_UNITS)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("work budget of {limit} units exceeded (needed {needed})")]
pub struct BudgetExceeded {
    pub limit: u64,
    pub needed: u64,
}
