use std::collections::{BTreeMap, BTreeSet};

use ordembed_core::analysis::{
    condense, gap_evidence, schedule_invariance, BlockClass, BlockReport, Group, StreamConfig,
    StreamRun,
};
use ordembed_core::{ElementName, EnumOperator, Operator, OrderType, Presentation};
use serde_json::json;

use super::ExperimentError;
use crate::report::{Config, Report};

/// Elements of the schedule-invariance base order.
pub const INVARIANCE_BASE: usize = 15;
/// Random schedules tried per experiment.
pub const INVARIANCE_SCHEDULES: usize = 5;

pub fn ty(text: &str) -> OrderType {
    text.parse()
        .unwrap_or_else(|e| panic!("built-in expression {text:?}: {e}"))
}

pub fn operator(id: &str, config: &Config) -> Operator {
    let op: Operator = id
        .parse()
        .unwrap_or_else(|e| panic!("built-in operator {id:?}: {e}"));
    op.with_power_budget(config.power_budget)
}

/// Asserts `op.transfer(input) = expected` by normal-form equality.
pub fn transfer(report: &mut Report, op: &Operator, input: &str, expected: &str) {
    let name = format!("transfer {op} on {input}");
    match op.transfer(&ty(input)) {
        Ok(image) => {
            let pass = image.equal(&ty(expected)).unwrap_or(false);
            report.assert(
                name,
                pass,
                format!("{image}, expected {}", ty(expected).normalize().unwrap()),
            );
        }
        Err(e) => report.assert(name, false, e.to_string()),
    }
}

/// Records a run and asserts linearity and monotonicity at every stage.
pub fn stream(
    report: &mut Report,
    tag: &str,
    op: &Operator,
    p: &Presentation,
    config: &Config,
) -> Result<StreamRun, ExperimentError> {
    let stream_config = StreamConfig {
        stages: config.stages,
        checkpoint_interval: config.checkpoint_interval,
    };
    let run = StreamRun::record(op, p, stream_config)?;
    if report.operator.is_empty() {
        report.operator = run.operator.clone();
        report.presentation = format!("{} [{}]", run.presentation, run.schedule);
        report.checkpoints = run.checkpoints.clone();
    }
    report.assert(
        format!("{tag}: linear at every stage"),
        run.is_linear(),
        run.linearity_violations
            .first()
            .cloned()
            .unwrap_or_else(|| format!("{} stages", run.completed + 1)),
    );
    report.assert(
        format!("{tag}: monotone at every stage"),
        run.is_monotone(),
        run.monotonicity_violations
            .first()
            .cloned()
            .unwrap_or_else(|| format!("{} stages", run.completed + 1)),
    );
    report.evidence(
        &format!("{tag}: run"),
        json!({
            "presentation": run.presentation,
            "schedule": run.schedule,
            "completed": run.completed,
            "truncated_at": run.truncated_at,
            "truncation": run.truncation,
            "checkpoints": run.checkpoints,
            "output_sizes": run.outputs.iter().map(|d| d.len()).collect::<Vec<_>>(),
            "final_prefix": run.describe_final(12),
        }),
    );
    Ok(run)
}

/// Interval sizes between consecutive group representatives never shrink.
pub fn gaps_non_decreasing(
    report: &mut Report,
    tag: &str,
    run: &StreamRun,
    blocks: &BlockReport,
    config: &Config,
) {
    let mut checked = 0usize;
    let mut bad = None;
    for w in blocks.groups.windows(2) {
        let (x, y) = (&w[0].representative, &w[1].representative);
        if let Ok(g) = gap_evidence(run, x, y, config.growth_window) {
            checked += 1;
            if !g.is_non_decreasing() && bad.is_none() {
                bad = Some(format!("({x}, {y}): {:?}", g.counts));
            }
        }
    }
    let detail = bad
        .clone()
        .unwrap_or_else(|| format!("{checked} neighbouring pairs"));
    report.assert(
        format!("{tag}: gap counts non-decreasing"),
        bad.is_none(),
        detail,
    );
}

/// Every settled class of the condensation lies inside one first-coordinate group.
pub fn classes_refine_groups(report: &mut Report, tag: &str, run: &StreamRun, config: &Config) {
    let c = condense(run, config.stability_window);
    let mixed = c.settled().find(|k| {
        k.members
            .iter()
            .any(|x| x.group_key() != k.members[0].group_key())
    });
    let detail = match mixed {
        Some(k) => format!("class starting at {} spans several groups", k.members[0]),
        None => format!(
            "{} settled classes of {}",
            c.settled().count(),
            c.classes.len()
        ),
    };
    report.assert(
        format!("{tag}: settled classes refine groups"),
        mixed.is_none(),
        detail,
    );
}

/// Records how the condensation relates to the first-coordinate groups.
pub fn condensation_evidence(
    report: &mut Report,
    tag: &str,
    run: &StreamRun,
    blocks: &BlockReport,
    config: &Config,
) {
    let class_of: BTreeMap<&ElementName, BlockClass> =
        blocks.groups.iter().map(|g| (&g.key, g.class)).collect();
    let c = condense(run, config.stability_window);
    let (mut spanning, mut with_growing) = (0, 0);
    for k in c.settled() {
        let keys: BTreeSet<ElementName> = k.members.iter().map(ElementName::group_key).collect();
        if keys.len() > 1 {
            spanning += 1;
            if keys
                .iter()
                .any(|key| class_of.get(key) == Some(&BlockClass::Growing))
            {
                with_growing += 1;
            }
        }
    }
    report.evidence(
        &format!("{tag}: condensation"),
        json!({
            "classes": c.classes.len(),
            "settled": c.settled().count(),
            "spanning_groups": spanning,
            "spanning_growing_groups": with_growing,
        }),
    );
}

/// Groups whose first coordinate was enumerated by the middle of the run.
pub fn is_mature(run: &StreamRun, g: &Group, config: &Config) -> bool {
    run.arrival
        .get(&g.key)
        .is_some_and(|&s| s <= config.stages / 2)
}

/// Growing tiers holding a mature group, restricted to their mature groups.
pub fn mature_tiers(run: &StreamRun, blocks: &BlockReport, config: &Config) -> Vec<Vec<usize>> {
    blocks
        .tiers
        .iter()
        .map(|t| {
            t.iter()
                .copied()
                .filter(|&i| is_mature(run, &blocks.groups[i], config))
                .collect::<Vec<_>>()
        })
        .filter(|t| !t.is_empty())
        .collect()
}

/// The run over the reversed presentation is the mirror image of `forward`.
pub fn mirrored(report: &mut Report, tag: &str, forward: &StreamRun, reversed: &StreamRun) {
    let mirror = reversed.mirrored();
    let pass = mirror.outputs == forward.outputs && mirror.checkpoints == forward.checkpoints;
    let detail = format!("{} checkpoints compared", forward.checkpoints.len());
    report.assert(
        format!("{tag}: reversed input gives mirrored output"),
        pass,
        detail,
    );
}

/// Streams the first elements of `p` under seeded random schedules and
/// compares the final outputs.
pub fn schedule_robust(
    report: &mut Report,
    op: &dyn EnumOperator,
    p: &Presentation,
    config: &Config,
) {
    let base = p.prefix(INVARIANCE_BASE);
    let r = schedule_invariance(op, &base, INVARIANCE_SCHEDULES, config.seed);
    let pass = r.passed();
    report.assert(
        "final output independent of schedule",
        pass,
        format!(
            "{} schedules of {} elements, {} mismatches",
            r.schedules,
            base.len(),
            r.mismatches
        ),
    );
    report.evidence("schedule invariance", r);
}
