use ordembed_core::analysis::check_monotone;
use ordembed_core::enumop::{run_stream, TrialShape};
use ordembed_core::presentation::random_finite_diagram;
use ordembed_core::{
    ElementName, EnumOperator, FiniteDiagram, OpError, Operator, OrderType, Presentation, Schedule,
};

fn chain(text: &str) -> Vec<ElementName> {
    text.split_whitespace()
        .map(|s| s.parse().unwrap())
        .collect()
}

fn atoms(order: &[u64]) -> FiniteDiagram {
    FiniteDiagram::from_atoms(order.iter().copied()).unwrap()
}

fn op(id: &str) -> Operator {
    id.parse().unwrap()
}

/// Pairs `(a, d)` by brute force over the definition, listed lexicographically.
fn rad_oracle(order: &[u64]) -> Vec<(u64, u64)> {
    let n = order.len();
    let mut out = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        let left = (0..n).filter(|&j| j <= i).count();
        let right = (0..n).filter(|&j| j >= i).count();
        let rad = left.min(right) as u64;
        for &d in order {
            if d <= rad {
                out.push((a, d));
            }
        }
    }
    out
}

fn interval_oracle(order: &[u64]) -> Vec<(u64, u64)> {
    let pos = |x: u64| order.iter().position(|&y| y == x).unwrap();
    let mut out = Vec::new();
    for &a in order {
        let s: Vec<u64> = order.iter().copied().filter(|&x| x <= a).collect();
        let b = s
            .iter()
            .copied()
            .filter(|&x| pos(x) <= pos(a))
            .min_by_key(|&x| pos(x))
            .unwrap();
        let c = s
            .iter()
            .copied()
            .filter(|&x| pos(x) >= pos(a))
            .max_by_key(|&x| pos(x))
            .unwrap();
        for &d in order {
            if pos(b) <= pos(d) && pos(d) <= pos(c) {
                out.push((a, d));
            }
        }
    }
    out
}

fn pairs(v: &[(u64, u64)]) -> Vec<ElementName> {
    v.iter()
        .map(|&(a, d)| ElementName::pair(&ElementName::Atom(a), &ElementName::Atom(d)))
        .collect()
}

#[test]
fn lexsum_examples() {
    let out = op("lexsum").apply(&atoms(&[0, 1])).unwrap();
    assert_eq!(out.elements(), chain("P(0,0) P(0,1) P(1,0) P(1,1)"));
    let out = op("lexsum").apply(&atoms(&[5, 2, 9])).unwrap();
    assert_eq!(out.len(), 9);
    assert!(out.elements()[..3]
        .iter()
        .all(|x| x.group_key() == ElementName::Atom(5)));
}

#[test]
fn rad_examples() {
    let out = op("rad").apply(&atoms(&[0, 1, 2])).unwrap();
    assert_eq!(
        out.elements(),
        chain("P(0,0) P(0,1) P(1,0) P(1,1) P(1,2) P(2,0) P(2,1)")
    );
    assert_eq!(out.elements(), pairs(&rad_oracle(&[0, 1, 2])));
    let out = op("rad").apply(&atoms(&[0])).unwrap();
    assert_eq!(out.elements(), chain("P(0,0)"));
}

#[test]
fn interval_examples() {
    let out = op("interval").apply(&atoms(&[2, 0, 1])).unwrap();
    assert_eq!(
        out.elements(),
        chain("P(2,2) P(2,0) P(2,1) P(0,0) P(1,0) P(1,1)")
    );
    assert_eq!(out.elements(), pairs(&interval_oracle(&[2, 0, 1])));
    assert_eq!(
        op("interval").apply(&atoms(&[0])).unwrap().elements(),
        chain("P(0,0)")
    );
}

#[test]
fn power_examples() {
    assert_eq!(
        op("power").apply(&atoms(&[0])).unwrap().elements(),
        chain("T(0,[])")
    );
    let out = op("power").apply(&atoms(&[0, 1])).unwrap();
    assert_eq!(out.elements(), chain("T(0,[]) T(1,[0]) T(1,[1])"));
}

#[test]
fn combinator_examples() {
    let d = atoms(&[3, 1, 2]);
    let single = op("copies:1:rad").apply(&d).unwrap();
    let plain = op("rad").apply(&d).unwrap();
    let untagged: Vec<ElementName> = plain
        .elements()
        .iter()
        .map(|x| ElementName::copy(0, x.clone()))
        .collect();
    assert_eq!(single.elements(), untagged);
    assert!(op("hetero:").apply(&d).unwrap().is_empty());
    let three = op("hetero:rad,rad,lexsum").apply(&d).unwrap();
    assert_eq!(three.len(), 2 * plain.len() + 9);
    assert_eq!(op("selfpow:1").apply(&d).unwrap().len(), 3);
    assert_eq!(op("selfpow:2").apply(&d).unwrap().len(), 9);
}

#[test]
fn apply_matches_test_oracles_on_random_inputs() {
    for seed in 0..300 {
        let d = random_finite_diagram((seed % 10) as usize, seed);
        let order: Vec<u64> = d.elements().iter().map(|x| x.as_atom().unwrap()).collect();
        assert_eq!(
            op("rad").apply(&d).unwrap().elements(),
            pairs(&rad_oracle(&order)),
            "rad seed {seed}"
        );
        assert_eq!(
            op("interval").apply(&d).unwrap().elements(),
            pairs(&interval_oracle(&order)),
            "interval seed {seed}"
        );
    }
}

#[test]
fn power_budget_refuses_large_inputs() {
    let d = atoms(&[0, 1, 2, 3, 4, 5, 6, 7]);
    let capped = Operator::power().with_power_budget(100);
    assert!(matches!(
        capped.apply(&d),
        Err(OpError::BudgetExceeded { .. })
    ));
}

#[test]
fn stream_final_stage_is_apply_of_final_prefix() {
    let p =
        Presentation::standard(&"w*2".parse::<OrderType>().unwrap(), Schedule::Seeded(4)).unwrap();
    for id in ["rad", "lexsum", "interval", "copies:2:rad"] {
        let outputs = run_stream(&op(id), &p, 40).unwrap();
        assert!(outputs[0].is_empty());
        assert_eq!(
            outputs.last().unwrap(),
            &op(id).apply(&p.prefix(40)).unwrap()
        );
        assert!(
            outputs.windows(2).all(|w| w[0].is_subdiagram_of(&w[1])),
            "{id}"
        );
    }
}

/// `rad` keeping only pairs whose value equals the radius exactly.
struct ExactRad;

impl EnumOperator for ExactRad {
    fn name(&self) -> String {
        "exact-rad".into()
    }

    fn apply(&self, input: &FiniteDiagram) -> Result<FiniteDiagram, OpError> {
        let n = input.len();
        let mut out = Vec::new();
        for (i, a) in input.elements().iter().enumerate() {
            let rad = (i + 1).min(n - i) as u64;
            for d in input.elements() {
                if d.as_atom() == Some(rad) {
                    out.push(ElementName::pair(a, d));
                }
            }
        }
        Ok(FiniteDiagram::from_order(out).unwrap())
    }

    fn transfer(&self, _: &OrderType) -> Result<OrderType, OpError> {
        unimplemented!()
    }

    fn input_fragment(&self) -> String {
        String::new()
    }
}

/// `rad` with `max` in place of `min`.
struct MaxRad;

impl EnumOperator for MaxRad {
    fn name(&self) -> String {
        "max-rad".into()
    }

    fn apply(&self, input: &FiniteDiagram) -> Result<FiniteDiagram, OpError> {
        let n = input.len();
        let mut out = Vec::new();
        for (i, a) in input.elements().iter().enumerate() {
            let rad = (i + 1).max(n - i) as u64;
            for d in input.elements() {
                if d.as_atom().unwrap() <= rad {
                    out.push(ElementName::pair(a, d));
                }
            }
        }
        Ok(FiniteDiagram::from_order(out).unwrap())
    }

    fn transfer(&self, _: &OrderType) -> Result<OrderType, OpError> {
        unimplemented!()
    }

    fn input_fragment(&self) -> String {
        String::new()
    }
}

#[test]
fn broken_operator_is_caught_with_small_counterexample() {
    let report = check_monotone(
        &ExactRad,
        TrialShape {
            max_size: 8,
            name_bound: 16,
        },
        200,
        1,
    );
    assert!(report.violations > 0);
    let cx = report.counterexample.unwrap();
    assert!(
        cx.large.split('<').count() <= 6,
        "not minimized: {}",
        cx.large
    );
    assert!(!cx.witness.is_empty());
}

#[test]
fn max_radius_variant_is_still_monotone() {
    let report = check_monotone(
        &MaxRad,
        TrialShape {
            max_size: 8,
            name_bound: 16,
        },
        300,
        1,
    );
    assert!(report.passed(), "{report:?}");
}

#[test]
fn zero_trials_pass() {
    assert!(check_monotone(&op("rad"), TrialShape::for_operator(&op("rad")), 0, 0).passed());
}
