use ordembed_core::analysis::{
    block_report, extract_chains, gap_evidence, separation_check, BlockReport, ChainWitness,
    SeparationVerdict, StreamRun,
};
use ordembed_core::{ElementName, FiniteDiagram, OrderType, Presentation, Schedule};
use serde_json::json;

use super::common::{
    condensation_evidence, gaps_non_decreasing, mature_tiers, mirrored, operator, schedule_robust,
    stream,
};
use super::ExperimentError;
use crate::report::{Config, Report};

fn top_chain(run: &StreamRun, config: &Config) -> Result<ChainWitness, ExperimentError> {
    let chains = extract_chains(run, 1, config.stability_window, config.growth_window)?;
    Ok(chains.into_iter().next().unwrap_or(ChainWitness {
        chain: Vec::new(),
        gap_flags: Vec::new(),
    }))
}

fn separation(
    report: &mut Report,
    name: &str,
    d: &FiniteDiagram,
    a: &ChainWitness,
    b: &ChainWitness,
    expected: SeparationVerdict,
) -> Result<(), ExperimentError> {
    let r = separation_check(d, a, b)?;
    let detail = format!(
        "verdict {:?}, q {:?}, chains of {} and {}, exceptions {} / {}",
        r.verdict,
        r.q(),
        r.len_a,
        r.len_b,
        r.exceptions_forward,
        r.exceptions_backward
    );
    report.assert(name, r.verdict == expected, detail);
    report.evidence(name, r);
    Ok(())
}

fn halves(c: &ChainWitness) -> (Vec<ElementName>, Vec<ElementName>) {
    let even = c.chain.iter().step_by(2).cloned().collect();
    let odd = c.chain.iter().skip(1).step_by(2).cloned().collect();
    (even, odd)
}

pub fn chain_separation(report: &mut Report, config: &Config) -> Result<(), ExperimentError> {
    let op = operator("rad", config);
    let w = Presentation::standard(&OrderType::omega(), Schedule::Standard)?;
    let sum = Presentation::concat_sum(&[w.clone(), w.clone()])?;
    let run_ab = stream(report, "A+B", &op, &sum, config)?;
    let run_a = stream(report, "A", &op, &sum.part(0)?, config)?;
    let run_b = stream(report, "B", &op, &sum.part(1)?, config)?;
    let (a, b) = (top_chain(&run_a, config)?, top_chain(&run_b, config)?);
    report.evidence("chain lengths", json!({ "a": a.len(), "b": b.len() }));
    let final_ab = run_ab
        .final_output()
        .cloned()
        .unwrap_or_else(FiniteDiagram::empty);
    separation(
        report,
        "top chains of A below those of B",
        &final_ab,
        &a,
        &b,
        SeparationVerdict::Forward,
    )?;

    let swapped = stream(report, "B+A", &op, &sum.permute_parts(&[1, 0])?, config)?;
    let final_ba = swapped
        .final_output()
        .cloned()
        .unwrap_or_else(FiniteDiagram::empty);
    separation(
        report,
        "swapping the summands swaps the direction",
        &final_ba,
        &a,
        &b,
        SeparationVerdict::Backward,
    )?;

    let (even, odd) = halves(&a);
    let (even, odd) = (
        ChainWitness::from_elements(&run_a, even, config.growth_window),
        ChainWitness::from_elements(&run_a, odd, config.growth_window),
    );
    separation(
        report,
        "chains from one copy are not separated",
        &final_ab,
        &even,
        &odd,
        SeparationVerdict::None,
    )?;

    let rev = w.reversed();
    let rsum = Presentation::concat_sum(&[rev.clone(), rev])?;
    let run_rab = stream(report, "A*+B*", &op, &rsum, config)?.mirrored();
    let run_ra = stream(report, "A*", &op, &rsum.part(0)?, config)?.mirrored();
    let run_rb = stream(report, "B*", &op, &rsum.part(1)?, config)?.mirrored();
    let (ra, rb) = (top_chain(&run_ra, config)?, top_chain(&run_rb, config)?);
    let final_rab = run_rab
        .final_output()
        .cloned()
        .unwrap_or_else(FiniteDiagram::empty);
    separation(
        report,
        "mirrored: top chains of A* above those of B*",
        &final_rab,
        &ra,
        &rb,
        SeparationVerdict::Backward,
    )?;
    Ok(())
}

/// Consecutive groups of every tier have growing gaps between their representatives.
fn tier_gaps(
    report: &mut Report,
    tag: &str,
    run: &StreamRun,
    blocks: &BlockReport,
    config: &Config,
) {
    let mut pairs = 0;
    let mut flat = Vec::new();
    for tier in &mature_tiers(run, blocks, config) {
        for w in tier.windows(2) {
            let (x, y) = (
                &blocks.groups[w[0]].representative,
                &blocks.groups[w[1]].representative,
            );
            pairs += 1;
            match gap_evidence(run, x, y, config.growth_window) {
                Ok(g) if g.growing => {}
                _ => flat.push(format!("({x}, {y})")),
            }
        }
    }
    report.assert(
        format!("{tag}: gaps inside tiers grow"),
        pairs > 0 && flat.is_empty(),
        format!("{pairs} neighbouring pairs, not growing: {flat:?}"),
    );
}

fn tier_count(
    report: &mut Report,
    tag: &str,
    run: &StreamRun,
    blocks: &BlockReport,
    config: &Config,
    expected: usize,
) {
    let sizes: Vec<usize> = mature_tiers(run, blocks, config)
        .iter()
        .map(Vec::len)
        .collect();
    report.assert(
        format!("{tag}: {expected} growing tier(s)"),
        sizes.len() == expected,
        format!("tier sizes {sizes:?}"),
    );
    report.evidence(&format!("{tag}: tiers"), &sizes);
}

pub fn recombination(
    report: &mut Report,
    k: u64,
    part_size: u64,
    config: &Config,
) -> Result<(), ExperimentError> {
    let op = operator("rad", config);
    let p = Presentation::partition_recombine(k, part_size, Schedule::Standard)?;
    let run = stream(report, "recombined", &op, &p, config)?;
    let blocks = block_report(&run, config.stability_window, config.growth_window);
    tier_count(report, "recombined", &run, &blocks, config, 1);
    tier_gaps(report, "recombined", &run, &blocks, config);
    gaps_non_decreasing(report, "recombined", &run, &blocks, config);
    condensation_evidence(report, "recombined", &run, &blocks, config);
    schedule_robust(report, &op, &p, config);
    Ok(())
}

pub fn strict_growth(
    report: &mut Report,
    part_size: u64,
    config: &Config,
) -> Result<(), ExperimentError> {
    let op = operator("rad", config);
    let p = Presentation::strict_growth(part_size, Schedule::Standard)?;
    let run = stream(report, "N", &op, &p, config)?;
    let blocks = block_report(&run, config.stability_window, config.growth_window);
    tier_count(report, "N", &run, &blocks, config, 2);
    tier_gaps(report, "N", &run, &blocks, config);
    gaps_non_decreasing(report, "N", &run, &blocks, config);
    condensation_evidence(report, "N", &run, &blocks, config);
    if let [low, high, ..] = mature_tiers(&run, &blocks, config).as_slice() {
        let reps = |tier: &[usize]| {
            tier.iter()
                .map(|&i| blocks.groups[i].representative.clone())
                .collect()
        };
        let a = ChainWitness::from_elements(&run, reps(low), config.growth_window);
        let b = ChainWitness::from_elements(&run, reps(high), config.growth_window);
        let d = run
            .final_output()
            .cloned()
            .unwrap_or_else(FiniteDiagram::empty);
        separation(
            report,
            "N: lower tier below upper tier",
            &d,
            &a,
            &b,
            SeparationVerdict::Forward,
        )?;
    } else {
        report.assert(
            "N: lower tier below upper tier",
            false,
            "fewer than two tiers",
        );
    }

    let reversed = stream(report, "N reversed", &op, &p.reversed(), config)?;
    mirrored(report, "N reversed", &run, &reversed);

    let without = stream(report, "N without D", &op, &p.without_tail()?, config)?;
    let blocks = block_report(&without, config.stability_window, config.growth_window);
    tier_count(report, "N without D", &without, &blocks, config, 1);
    schedule_robust(report, &op, &p, config);
    Ok(())
}
