use ordembed::facts::{parse_stages, write_stages, FactsError};
use ordembed_core::presentation::random_finite_diagram;
use ordembed_core::{FiniteDiagram, OrderType, Presentation, Schedule};

#[test]
fn presentation_stages_round_trip() {
    let ty: OrderType = "rev(w)*2 + w^2".parse().unwrap();
    let p = Presentation::standard(&ty, Schedule::Standard).unwrap();
    let stages: Vec<FiniteDiagram> = p.stages(30).collect();
    let text = write_stages(stages.iter().enumerate());
    let parsed = parse_stages(&text).unwrap();
    assert_eq!(parsed.len(), 31);
    for (i, (s, d)) in parsed.iter().enumerate() {
        assert_eq!((*s, d), (i, &stages[i]));
    }
}

#[test]
fn reader_accepts_any_generating_facts() {
    for seed in 0..50 {
        let d = random_finite_diagram(9, seed);
        let mut text = String::from("# stage 4\n");
        for x in d.elements().iter().rev() {
            text.push_str(&format!("E {x}\n"));
        }
        let xs = d.elements();
        for i in 0..xs.len() {
            for j in (i + 1..xs.len()).rev() {
                text.push_str(&format!("L {} {}\n", xs[i], xs[j]));
            }
        }
        assert_eq!(parse_stages(&text).unwrap(), vec![(4, d)]);
    }
}

#[test]
fn contradictory_facts_are_rejected() {
    let err = parse_stages("# stage 1\nE 0\nE 1\nL 0 1\nL 1 0\n").unwrap_err();
    assert!(matches!(err, FactsError::NotLinear { stage: 1, .. }));
}
