use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{AnalysisError, DEFAULT_CHECKPOINT_INTERVAL};
use crate::diagram::{check_linear, FiniteDiagram};
use crate::enumop::{EnumOperator, OpError};
use crate::name::{render_chain, ElementName};
use crate::presentation::Presentation;

/// Outputs at or below this size get the full fact-level linearity check.
const FULL_LINEARITY_CHECK_MAX: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamConfig {
    pub stages: usize,
    pub checkpoint_interval: usize,
}

impl StreamConfig {
    pub fn new(stages: usize) -> StreamConfig {
        StreamConfig {
            stages,
            checkpoint_interval: DEFAULT_CHECKPOINT_INTERVAL,
        }
    }

    /// Multiples of the interval, and the last stage.
    pub fn checkpoints(&self, last: usize) -> Vec<usize> {
        let step = self.checkpoint_interval.max(1);
        let mut out: Vec<usize> = (1..).map(|k| k * step).take_while(|&s| s <= last).collect();
        if last > 0 && out.last() != Some(&last) {
            out.push(last);
        }
        out
    }
}

/// A recorded run of an operator over a presentation, kept at checkpoints.
#[derive(Debug, Clone)]
pub struct StreamRun {
    pub operator: String,
    pub presentation: String,
    pub schedule: String,
    pub requested_stages: usize,
    /// Last stage whose output was computed.
    pub completed: usize,
    /// First stage whose output exceeded the operator's budget.
    pub truncated_at: Option<usize>,
    pub truncation: Option<String>,
    pub checkpoints: Vec<usize>,
    pub inputs: Vec<FiniteDiagram>,
    pub outputs: Vec<FiniteDiagram>,
    /// Stage at which each input element was enumerated.
    pub arrival: BTreeMap<ElementName, usize>,
    pub linearity_violations: Vec<String>,
    pub monotonicity_violations: Vec<String>,
}

impl StreamRun {
    /// Runs stages `0..=stages`, checking every output for linearity and
    /// inclusion in the next one.
    pub fn record(
        op: &dyn EnumOperator,
        p: &Presentation,
        config: StreamConfig,
    ) -> Result<StreamRun, AnalysisError> {
        let mut run = StreamRun {
            operator: op.name(),
            presentation: p.label().to_string(),
            schedule: p.schedule_label(),
            requested_stages: config.stages,
            completed: 0,
            truncated_at: None,
            truncation: None,
            checkpoints: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            arrival: BTreeMap::new(),
            linearity_violations: Vec::new(),
            monotonicity_violations: Vec::new(),
        };
        let wanted = config.checkpoints(config.stages);
        let mut previous: Option<(FiniteDiagram, FiniteDiagram)> = None;
        for (stage, input) in p.stages(config.stages).enumerate() {
            for x in input.elements() {
                run.arrival.entry(x.clone()).or_insert(stage);
            }
            let output = match op.apply(&input) {
                Ok(output) => output,
                Err(e @ OpError::BudgetExceeded { .. }) => {
                    run.truncated_at = Some(stage);
                    run.truncation = Some(e.to_string());
                    break;
                }
                Err(e) => return Err(e.into()),
            };
            run.check_stage(stage, &output, previous.as_ref().map(|(_, o)| o));
            if wanted.binary_search(&stage).is_ok() {
                run.push_checkpoint(stage, &input, &output);
            }
            run.completed = stage;
            previous = Some((input, output));
        }
        if let Some((input, output)) = previous {
            if run.checkpoints.last() != Some(&run.completed) && run.completed > 0 {
                run.push_checkpoint(run.completed, &input, &output);
            }
        }
        Ok(run)
    }

    fn check_stage(
        &mut self,
        stage: usize,
        output: &FiniteDiagram,
        previous: Option<&FiniteDiagram>,
    ) {
        let linear = if output.len() <= FULL_LINEARITY_CHECK_MAX {
            check_linear(&output.to_facts())
        } else {
            output.validate()
        };
        if let Err(e) = linear {
            self.linearity_violations
                .push(format!("stage {stage}: {e}"));
        }
        if let Some(prev) = previous {
            if let Some(x) = prev.first_inclusion_failure(output) {
                self.monotonicity_violations.push(format!(
                    "stage {stage}: output of stage {} is not contained in it (first failure at {x})",
                    stage - 1
                ));
            }
        }
    }

    fn push_checkpoint(&mut self, stage: usize, input: &FiniteDiagram, output: &FiniteDiagram) {
        self.checkpoints.push(stage);
        self.inputs.push(input.clone());
        self.outputs.push(output.clone());
    }

    pub fn final_output(&self) -> Option<&FiniteDiagram> {
        self.outputs.last()
    }

    pub fn final_input(&self) -> Option<&FiniteDiagram> {
        self.inputs.last()
    }

    pub fn is_linear(&self) -> bool {
        self.linearity_violations.is_empty()
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_violations.is_empty()
    }

    /// Input elements enumerated at or before `stage`.
    pub fn arrived_by(&self, stage: usize) -> impl Iterator<Item = &ElementName> {
        self.arrival
            .iter()
            .filter(move |(_, &s)| s <= stage)
            .map(|(x, _)| x)
    }

    /// The same run with every diagram reversed.
    pub fn mirrored(&self) -> StreamRun {
        let flip = |d: &FiniteDiagram| {
            FiniteDiagram::from_order(d.elements().iter().rev().cloned().collect())
                .expect("reversal keeps names distinct")
        };
        StreamRun {
            presentation: format!("rev({})", self.presentation),
            inputs: self.inputs.iter().map(flip).collect(),
            outputs: self.outputs.iter().map(flip).collect(),
            ..self.clone()
        }
    }

    /// Short rendering of the final output, for reports.
    pub fn describe_final(&self, limit: usize) -> String {
        match self.final_output() {
            Some(d) => {
                let shown: Vec<ElementName> = d.elements().iter().take(limit).cloned().collect();
                let more = if d.len() > limit { " < ..." } else { "" };
                format!("{}{more}", render_chain(&shown))
            }
            None => String::new(),
        }
    }
}
