use ordembed_core::analysis::{
    block_report, condense, extract_chains, gap_evidence, separation_check, truncation_iso_oracle,
    AnalysisError, BlockClass, SeparationVerdict, StreamConfig, StreamRun,
};
use ordembed_core::{ElementName, Operator, OrderType, Presentation, Schedule};

fn run(op: &str, ty: &str, stages: usize) -> StreamRun {
    let p = Presentation::standard(&ty.parse::<OrderType>().unwrap(), Schedule::Standard).unwrap();
    StreamRun::record(
        &op.parse::<Operator>().unwrap(),
        &p,
        StreamConfig::new(stages),
    )
    .unwrap()
}

fn pair(a: u64, b: u64) -> ElementName {
    ElementName::pair(&ElementName::Atom(a), &ElementName::Atom(b))
}

#[test]
fn checkpoints_include_the_last_stage() {
    assert_eq!(StreamConfig::new(25).checkpoints(25), vec![10, 20, 25]);
    assert_eq!(StreamConfig::new(20).checkpoints(20), vec![10, 20]);
    assert!(StreamConfig::new(0).checkpoints(0).is_empty());
}

#[test]
fn lexsum_blocks_are_first_coordinates_and_grow() {
    let r = run("lexsum", "w", 60);
    assert!(r.is_linear() && r.is_monotone());
    let report = block_report(&r, 3, 3);
    let settled: Vec<_> = report
        .groups
        .iter()
        .filter(|g| r.arrival[&g.key] <= 30)
        .collect();
    assert!(!settled.is_empty());
    assert!(settled.iter().all(|g| g.class == BlockClass::Growing));
}

#[test]
fn single_checkpoint_leaves_every_element_alone() {
    let r = run("lexsum", "w", 10);
    let c = condense(&r, 3);
    assert_eq!(c.classes.len(), r.final_output().unwrap().len());
    assert!(c.classes.iter().all(|k| !k.settled && k.members.len() == 1));
}

#[test]
fn rad_on_two_omegas_separates_bounded_and_growing_blocks() {
    let r = run("rad", "w*2", 120);
    let report = block_report(&r, 3, 3);
    for g in &report.groups {
        let a = g.key.as_atom().unwrap();
        if r.arrival[&g.key] > 60 {
            continue;
        }
        if a % 2 == 0 {
            assert!(
                matches!(g.class, BlockClass::Bounded(_)),
                "{} {:?}",
                g.key,
                g.class
            );
        } else {
            assert_eq!(g.class, BlockClass::Growing, "{}", g.key);
        }
    }
    assert_eq!(report.tiers.len(), 1);
}

#[test]
fn gaps_grow_between_blocks_but_not_inside_them() {
    let r = run("rad", "w*2", 120);
    let across = gap_evidence(&r, &pair(0, 0), &pair(1, 0), 3).unwrap();
    assert!(across.growing && across.is_non_decreasing());
    let inside = gap_evidence(&r, &pair(2, 0), &pair(2, 1), 3).unwrap();
    assert!(!inside.growing);
    assert!(matches!(
        gap_evidence(&r, &pair(0, 0), &pair(0, 0), 3),
        Err(AnalysisError::SameElement(_))
    ));
    assert!(matches!(
        gap_evidence(&r, &pair(0, 0), &pair(999, 0), 3),
        Err(AnalysisError::MissingElement(_))
    ));
}

#[test]
fn rad_on_omega_gives_one_chain() {
    let r = run("rad", "w", 100);
    let chains = extract_chains(&r, 1, 3, 3).unwrap();
    assert_eq!(chains.len(), 1);
    assert!(chains[0].len() > 20);
}

#[test]
fn chains_from_one_copy_make_no_claim() {
    let r = run("rad", "w*2", 150);
    let top = &extract_chains(&r, 2, 3, 3).unwrap()[1];
    let even: Vec<ElementName> = top.chain.iter().step_by(2).cloned().collect();
    let odd: Vec<ElementName> = top.chain.iter().skip(1).step_by(2).cloned().collect();
    let a = ordembed_core::analysis::ChainWitness::from_elements(&r, even, 3);
    let b = ordembed_core::analysis::ChainWitness::from_elements(&r, odd, 3);
    let report = separation_check(r.final_output().unwrap(), &a, &b).unwrap();
    assert_eq!(report.verdict, SeparationVerdict::None);
}

#[test]
fn oracle_distinguishes_block_counts() {
    let p = |s: &str| s.parse::<OrderType>().unwrap();
    assert!(!truncation_iso_oracle(&p("w*2"), &p("w"), 3).unwrap());
    assert!(truncation_iso_oracle(&p("w + w^2"), &p("w^2"), 3).unwrap());
}
