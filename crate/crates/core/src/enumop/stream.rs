use alloc::vec::Vec;

use super::{EnumOperator, OpError};
use crate::diagram::FiniteDiagram;
use crate::presentation::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("stage {stage}: {source}")]
pub struct StreamError {
    pub stage: usize,
    pub source: OpError,
}

/// Outputs on stages `0..=s_max`: stage `s` is `op` applied to `prefix(p, s)`.
pub fn run_stream(
    op: &dyn EnumOperator,
    p: &Presentation,
    s_max: usize,
) -> Result<Vec<FiniteDiagram>, StreamError> {
    p.stages(s_max)
        .enumerate()
        .map(|(stage, input)| {
            op.apply(&input)
                .map_err(|source| StreamError { stage, source })
        })
        .collect()
}
