use ordembed_core::analysis::block_report;
use ordembed_core::analysis::BlockClass;
use ordembed_core::enumop::naive::naive_apply;
use ordembed_core::{OrderType, Presentation, Schedule};
use serde_json::json;

use super::common::{
    classes_refine_groups, condensation_evidence, gaps_non_decreasing, is_mature, mature_tiers,
    mirrored, operator, schedule_robust, stream, transfer, ty,
};
use super::ExperimentError;
use crate::report::{Config, Report};

fn std_presentation(target: &str) -> Result<Presentation, ExperimentError> {
    Ok(Presentation::standard(&ty(target), Schedule::Standard)?)
}

pub fn lexsum(report: &mut Report, n: u64, config: &Config) -> Result<(), ExperimentError> {
    let op = operator("lexsum", config);
    transfer(report, &op, &format!("w*{n}"), &format!("w^2*{n}"));
    transfer(
        report,
        &op,
        &format!("rev(w)*{n}"),
        &format!("rev(w^2)*{n}"),
    );
    let p = std_presentation(&format!("w*{n}"))?;
    let run = stream(report, "forward", &op, &p, config)?;
    let blocks = block_report(&run, config.stability_window, config.growth_window);
    let old: Vec<_> = blocks
        .groups
        .iter()
        .filter(|g| is_mature(&run, g, config))
        .collect();
    let not_growing: Vec<String> = old
        .iter()
        .filter(|g| g.class != BlockClass::Growing)
        .map(|g| g.key.to_string())
        .collect();
    report.assert(
        "blocks of elements present by mid-run are growing",
        not_growing.is_empty(),
        format!("{} groups checked, not growing: {not_growing:?}", old.len()),
    );
    gaps_non_decreasing(report, "forward", &run, &blocks, config);
    classes_refine_groups(report, "forward", &run, config);
    let reversed = stream(report, "reversed", &op, &p.reversed(), config)?;
    mirrored(report, "reversed", &run, &reversed);
    schedule_robust(report, &op, &p, config);
    Ok(())
}

pub fn rad(report: &mut Report, k: u64, config: &Config) -> Result<(), ExperimentError> {
    let op = operator("rad", config);
    for j in 1..=4 {
        transfer(report, &op, &format!("w*{}", j + 1), &format!("w^2*{j}"));
        transfer(
            report,
            &op,
            &format!("rev(w)*{}", j + 1),
            &format!("rev(w^2)*{j}"),
        );
    }
    let copies = k + 1;
    let p = std_presentation(&format!("w*{copies}"))?;
    let run = stream(report, "forward", &op, &p, config)?;
    let blocks = block_report(&run, config.stability_window, config.growth_window);
    let settled_by = config.stages / 2;
    let tiers = mature_tiers(&run, &blocks, config);
    let mut wrong = Vec::new();
    let mut bounds = Vec::new();
    let mut checked = 0;
    for g in &blocks.groups {
        let (Some(a), Some(&arrived)) = (g.key.as_atom(), run.arrival.get(&g.key)) else {
            continue;
        };
        if arrived > settled_by {
            continue;
        }
        checked += 1;
        let first_copy = a % copies == 0;
        match (first_copy, g.class) {
            (true, BlockClass::Bounded(b)) => {
                bounds.push(json!({ "element": a, "bound": b, "left_count": a / copies + 1 }))
            }
            (false, BlockClass::Growing) => {}
            _ => wrong.push(format!("{a}: {:?}", g.class)),
        }
    }
    report.assert(
        "first copy bounded, later copies growing",
        wrong.is_empty(),
        format!("{checked} groups present by stage {settled_by}; misclassified: {wrong:?}"),
    );
    report.evidence("first-copy bounds", bounds);
    report.assert(
        "one growing tier per later copy",
        tiers.len() as u64 == k,
        format!(
            "{} tiers of sizes {:?}",
            tiers.len(),
            tiers.iter().map(Vec::len).collect::<Vec<_>>()
        ),
    );
    gaps_non_decreasing(report, "forward", &run, &blocks, config);
    condensation_evidence(report, "forward", &run, &blocks, config);
    let reversed = stream(report, "reversed", &op, &p.reversed(), config)?;
    mirrored(report, "reversed", &run, &reversed);
    schedule_robust(report, &op, &p, config);
    Ok(())
}

/// The `ω·3 ↦ ω²·n` operator: `k` copies of `rad` for `n = 2k`, and
/// `k` copies of `rad` followed by `lexsum` for `n = 2k + 3`.
pub fn decomposition(n: u64) -> Option<String> {
    match n {
        0 | 1 => None,
        n if n % 2 == 0 => Some(format!("copies:{}:rad", n / 2)),
        n => {
            let mut parts = vec!["rad"; ((n - 3) / 2) as usize];
            parts.push("lexsum");
            Some(format!("hetero:{}", parts.join(",")))
        }
    }
}

pub fn copies(report: &mut Report, n: Option<u64>, config: &Config) -> Result<(), ExperimentError> {
    let counts: Vec<u64> = match n {
        Some(n) => vec![n],
        None => (1..=7).collect(),
    };
    for &m in &counts {
        transfer(
            report,
            &operator(&format!("copies:{m}:rad"), config),
            "w*2",
            &format!("w^2*{m}"),
        );
        if let Some(id) = decomposition(m) {
            transfer(report, &operator(&id, config), "w*3", &format!("w^2*{m}"));
            transfer(
                report,
                &operator(&id, config),
                "rev(w)*3",
                &format!("rev(w^2)*{m}"),
            );
        }
    }
    let op = operator(&format!("copies:{}:rad", n.unwrap_or(2)), config);
    let p = std_presentation("w*2")?;
    stream(report, "forward", &op, &p, config)?;
    schedule_robust(report, &op, &p, config);
    Ok(())
}

pub fn interval(report: &mut Report, n: u32, config: &Config) -> Result<(), ExperimentError> {
    let op = operator("interval", config);
    transfer(report, &op, "w^2", "w^3");
    transfer(report, &op, "rev(w^2)", "rev(w^3)");
    for m in 2..=4 {
        transfer(report, &op, &format!("w^{m}"), &format!("w^{}", 2 * m - 1));
    }
    let p = std_presentation(&format!("w^{n}"))?;
    let run = stream(report, "forward", &op, &p, config)?;
    let blocks = block_report(&run, config.stability_window, config.growth_window);
    gaps_non_decreasing(report, "forward", &run, &blocks, config);
    condensation_evidence(report, "forward", &run, &blocks, config);
    let reversed = stream(report, "reversed", &op, &p.reversed(), config)?;
    mirrored(report, "reversed", &run, &reversed);
    schedule_robust(report, &op, &p, config);
    Ok(())
}

pub fn power(report: &mut Report, config: &Config) -> Result<(), ExperimentError> {
    let op = operator("power", config);
    transfer(report, &op, "w", "w^w");
    for n in 0..=2 {
        transfer(report, &op, &format!("w^{}", n + 1), &format!("w^(w+{n})"));
    }
    let p = Presentation::standard(&OrderType::omega(), Schedule::Standard)?;
    let run = stream(report, "capped", &op, &p, config)?;
    let mut disagreements = 0;
    for (input, output) in run.inputs.iter().zip(&run.outputs) {
        if !naive_apply(&op, input).is_some_and(|naive| naive.agrees_with(output)) {
            disagreements += 1;
        }
    }
    report.assert(
        "capped run replays the naive recomputation",
        disagreements == 0,
        format!(
            "{} checkpoints, {disagreements} disagreements",
            run.checkpoints.len()
        ),
    );
    let capped = run.truncated_at.is_some_and(|s| s <= config.stages);
    let next_refused = run
        .truncated_at
        .is_none_or(|s| naive_apply(&op, &p.prefix(s)).is_none());
    report.assert(
        "budget stops the run instead of dropping output",
        next_refused,
        run.truncation
            .clone()
            .unwrap_or_else(|| "budget not reached".into()),
    );
    report.evidence("budget reached", capped);
    Ok(())
}

pub fn selfpow(report: &mut Report, k: u32, config: &Config) -> Result<(), ExperimentError> {
    let square = operator("selfpow:2", config);
    for m in 1..=3 {
        transfer(report, &square, &format!("w^{m}"), &format!("w^{}", 2 * m));
    }
    let op = operator(&format!("selfpow:{k}"), config);
    transfer(report, &op, "w", &format!("w^{k}"));
    let product = operator(&format!("prod:interval:selfpow:{k}"), config);
    transfer(report, &product, "w^2", &format!("w^{}", 2 * k + 3));
    let p = Presentation::standard(&OrderType::omega(), Schedule::Standard)?;
    stream(report, "forward", &op, &p, config)?;
    schedule_robust(report, &op, &p, config);
    Ok(())
}
