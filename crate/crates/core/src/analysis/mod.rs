//! Finite-stage checks: operator properties against random inputs, and
//! approximations of the infinitary relations (`<^∞`, `<*`, ω-chains,
//! blocks) read off recorded stream runs.

use alloc::string::String;

use crate::enumop::OpError;
use crate::name::ElementName;

mod blocks;
mod chains;
mod checks;
mod run;
mod truncation;

pub use blocks::{
    block_report, condense, gap_evidence, BlockClass, BlockReport, Class, Condensation,
    GapEvidence, Group,
};
pub use chains::{
    extract_chains, separation_check, ChainWitness, SeparationReport, SeparationVerdict,
};
pub use checks::{
    check_monotone, oracle_compare, rename_invariance, schedule_invariance, Counterexample,
    MonotoneReport, OracleReport, ScheduleReport,
};
pub use run::{StreamConfig, StreamRun};
pub use truncation::{truncation_iso_oracle, TruncationError};

pub use crate::diagram::check_linear;

/// Checkpoint spacing used unless configured otherwise.
pub const DEFAULT_CHECKPOINT_INTERVAL: usize = 10;
/// Consecutive checkpoints over which growth must be strict.
pub const DEFAULT_GROWTH_WINDOW: usize = 3;
/// Consecutive checkpoints over which adjacency must hold.
pub const DEFAULT_STABILITY_WINDOW: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("the open interval ({0}, {0}) is undefined")]
    SameElement(ElementName),
    #[error("{0} never appears in the run")]
    MissingElement(ElementName),
    #[error("no chain decomposition: {0}")]
    DecompositionFailed(String),
    #[error(transparent)]
    Operator(#[from] OpError),
}
