//! The real unit interval, presented without floating point.
//!
//! Numbers are exact rational combinations of square roots.  A finite
//! tuple of such numbers that is rationally independent and can express 1
//! with strictly positive integer weights names a *stage*: the interval
//! algebra of nonnegative integer combinations bounded by 1.  Stages are
//! ordered by expressibility and merged by basis reduction, so the unit
//! interval itself appears as the direct limit of an intensional
//! [`system::RealSystem`] that is never materialized.

pub mod exact;
pub mod lemmas;
pub mod system;
pub mod tuple;

pub use exact::{ExactReal, Radical};
pub use lemmas::{merge, reduce_to_positive_basis, refine_equal_sums, ReductionTrace};
pub use system::{approximate, stage, transition, Approximation, RealSystem, StageAlgebra};
pub use tuple::{GeneratorTuple, MembershipFailure};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RealError {
    #[error("cannot parse real literal `{0}`: {1}")]
    Parse(String, String),
    #[error("tuple is empty")]
    Empty,
    #[error("entry {index} ({value}) is not strictly positive")]
    NotPositive { index: usize, value: String },
    #[error("entry {index} ({value}) exceeds 1")]
    AboveOne { index: usize, value: String },
    #[error("entries {0} and {1} are out of order: tuples are strictly increasing")]
    NotSorted(usize, usize),
    #[error("entries are rationally dependent")]
    Dependent,
    #[error("1 is not a positive combination of {tuple}: {reason}")]
    UnitNotPositive { tuple: String, reason: String },
    #[error("split {split} is invalid for a tuple of length {len}")]
    BadSplit { split: usize, len: usize },
    #[error("side sums differ: {left} versus {right}")]
    UnequalSums { left: String, right: String },
    #[error("entry {index} ({value}) is negative")]
    NegativeEntry { index: usize, value: String },
    #[error("{small} does not embed into {big}: entry {index} {reason}")]
    NotComparable {
        small: String,
        big: String,
        index: usize,
        reason: String,
    },
    #[error("{value} lies outside the unit interval")]
    OutsideUnitInterval { value: String },
    #[error("{vector} is not an element of the stage at {tuple}")]
    OutsideStage { vector: String, tuple: String },
    #[error("internal invariant failed: {0}")]
    Internal(String),
}
