//! The wasp-waist grammar: every fish is a single cell or is obtained from
//! one or two smaller fish by exactly one of five operations.
//!
//! Terms over the constructors `A`, `B1`, `B2`, `C1`, `C2`, `C3` are in
//! bijection with fish: [`build`] realizes a term as a [`FishComplex`] and
//! [`decompose`] recovers it. [`enumerate_terms`] generates all terms of
//! bounded size and [`joint_distribution`] counts them by statistics without
//! materializing any term.
//!
//! [`FishComplex`]: crate::surface::FishComplex

mod build;
mod decompose;
mod enumerate;
mod joint;
mod term;

use thiserror::Error;

use crate::surface::StructureError;
use crate::BudgetExceeded;

pub use build::build;
pub use decompose::decompose;
pub use enumerate::{enumerate_terms, TermCatalog, TermRecord};
pub use joint::{joint_distribution, JointDistribution};
pub use term::{FishTerm, StatVector, TermInfo, TermParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error("position {position} is out of range for a fin of length {fin}")]
    PositionOutOfRange { position: usize, fin: usize },
    #[error("{op} needs a {expected} fin edge at position {position}")]
    PositionKind {
        op: &'static str,
        position: usize,
        expected: char,
    },
    #[error("size must be at least 2, got {0}")]
    SizeTooSmall(usize),
    #[error("no grammar case matches: {0}")]
    NoCase(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}
