use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::FiniteDiagram;
use crate::enumop::naive::naive_apply;
use crate::enumop::{run_stream, EnumOperator, OpError, Operator, TrialShape};
use crate::name::{render_chain, ElementName};
use crate::presentation::{random_finite_diagram_in, Presentation, Schedule};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub small: String,
    pub large: String,
    pub output_small: String,
    pub output_large: String,
    /// First output element of the small input that is missing or misplaced in the large output.
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneReport {
    pub trials: usize,
    pub violations: usize,
    pub errors: usize,
    pub counterexample: Option<Counterexample>,
}

impl MonotoneReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.errors == 0
    }
}

fn trial_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_pair(rng: &mut ChaCha8Rng, shape: TrialShape) -> (FiniteDiagram, FiniteDiagram) {
    let size = rng.gen_range(0..=shape.max_size);
    let large = random_finite_diagram_in(size, shape.name_bound, rng.gen());
    let keep: Vec<bool> = (0..large.len()).map(|_| rng.gen_bool(0.5)).collect();
    let mut i = 0;
    let small = large.restrict(|_| {
        i += 1;
        keep[i - 1]
    });
    (small, large)
}

/// `Some(witness)` when `op(small) ⊆ op(large)` fails.
fn inclusion_failure(
    op: &dyn EnumOperator,
    small: &FiniteDiagram,
    large: &FiniteDiagram,
) -> Result<Option<ElementName>, OpError> {
    let out_small = op.apply(small)?;
    let out_large = op.apply(large)?;
    Ok(out_small.first_inclusion_failure(&out_large).cloned())
}

/// For each trial, a random `δ'` and a random subdiagram `δ ⊆ δ'`; checks `op(δ) ⊆ op(δ')`.
pub fn check_monotone(
    op: &dyn EnumOperator,
    shape: TrialShape,
    trials: usize,
    seed: u64,
) -> MonotoneReport {
    let mut rng = trial_rng(seed);
    let mut report = MonotoneReport {
        trials,
        violations: 0,
        errors: 0,
        counterexample: None,
    };
    for _ in 0..trials {
        let (small, large) = random_pair(&mut rng, shape);
        match inclusion_failure(op, &small, &large) {
            Ok(None) => {}
            Ok(Some(_)) => {
                report.violations += 1;
                if report.counterexample.is_none() {
                    report.counterexample = Some(minimize(op, small, large));
                }
            }
            Err(_) => report.errors += 1,
        }
    }
    report
}

/// Greedily drops elements while the violation persists.
fn minimize(
    op: &dyn EnumOperator,
    mut small: FiniteDiagram,
    mut large: FiniteDiagram,
) -> Counterexample {
    let fails =
        |s: &FiniteDiagram, l: &FiniteDiagram| matches!(inclusion_failure(op, s, l), Ok(Some(_)));
    loop {
        let mut shrunk = false;
        for x in large.elements().to_vec() {
            let l = large.restrict(|y| y != &x);
            let s = small.restrict(|y| y != &x);
            if fails(&s, &l) {
                (small, large) = (s, l);
                shrunk = true;
                break;
            }
            if small.contains(&x) {
                let s = small.restrict(|y| y != &x);
                if fails(&s, &large) {
                    small = s;
                    shrunk = true;
                    break;
                }
            }
        }
        if !shrunk {
            break;
        }
    }
    let out_small = op.apply(&small).expect("counterexample applies");
    let out_large = op.apply(&large).expect("counterexample applies");
    let witness = out_small
        .first_inclusion_failure(&out_large)
        .map(ToString::to_string)
        .unwrap_or_default();
    Counterexample {
        small: render_chain(small.elements()),
        large: render_chain(large.elements()),
        output_small: render_chain(out_small.elements()),
        output_large: render_chain(out_large.elements()),
        witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub trials: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Compares `apply` with the naive reference on random diagrams; both
/// refusing the same input (e.g. over budget) counts as agreement.
pub fn oracle_compare(op: &Operator, shape: TrialShape, trials: usize, seed: u64) -> OracleReport {
    let mut rng = trial_rng(seed);
    let mut report = OracleReport {
        trials,
        mismatches: 0,
        first_mismatch: None,
    };
    for _ in 0..trials {
        let size = rng.gen_range(0..=shape.max_size);
        let d = random_finite_diagram_in(size, shape.name_bound, rng.gen());
        let agree = match (op.apply(&d), naive_apply(op, &d)) {
            (Ok(out), Some(naive)) => naive.agrees_with(&out),
            (Err(_), None) => true,
            _ => false,
        };
        if !agree {
            report.mismatches += 1;
            if report.first_mismatch.is_none() {
                report.first_mismatch = Some(format!("input {}", render_chain(d.elements())));
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScheduleReport {
    pub base: String,
    pub schedules: usize,
    pub mismatches: usize,
    pub non_linear_stages: usize,
    pub non_monotone_stages: usize,
    pub errors: usize,
}

impl ScheduleReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
            && self.non_linear_stages == 0
            && self.non_monotone_stages == 0
            && self.errors == 0
    }
}

/// Streams `base` under `schedules` random insertion orders and compares each
/// final output with `op(base)`.
pub fn schedule_invariance(
    op: &dyn EnumOperator,
    base: &FiniteDiagram,
    schedules: usize,
    seed: u64,
) -> ScheduleReport {
    let mut rng = trial_rng(seed);
    let mut report = ScheduleReport {
        base: render_chain(base.elements()),
        schedules,
        mismatches: 0,
        non_linear_stages: 0,
        non_monotone_stages: 0,
        errors: 0,
    };
    let Ok(expected) = op.apply(base) else {
        report.errors = schedules;
        return report;
    };
    let presentation = match Presentation::from_diagram(base) {
        Ok(p) => p,
        Err(_) => {
            report.errors = schedules;
            return report;
        }
    };
    let mut atoms: Vec<u64> = base
        .elements()
        .iter()
        .filter_map(ElementName::as_atom)
        .collect();
    for _ in 0..schedules {
        atoms.shuffle(&mut rng);
        let p = presentation.with_schedule(Schedule::Explicit(atoms.clone()));
        match run_stream(op, &p, atoms.len()) {
            Ok(outputs) => {
                for (i, out) in outputs.iter().enumerate() {
                    if out.validate().is_err() {
                        report.non_linear_stages += 1;
                    }
                    if i > 0 && !outputs[i - 1].is_subdiagram_of(out) {
                        report.non_monotone_stages += 1;
                    }
                }
                if outputs.last() != Some(&expected) {
                    report.mismatches += 1;
                }
            }
            Err(_) => report.errors += 1,
        }
    }
    report
}

/// Renames atoms by a random increasing injection and checks that the output
/// is renamed the same way. Returns the number of failing trials.
///
/// Operators that compare atom values with element counts (`rad`, `power`)
/// are not invariant under such renamings.
pub fn rename_invariance(
    op: &dyn EnumOperator,
    shape: TrialShape,
    trials: usize,
    seed: u64,
) -> usize {
    let mut rng = trial_rng(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let size = rng.gen_range(0..=shape.max_size);
        let d = random_finite_diagram_in(size, shape.name_bound, rng.gen());
        let mut sorted: Vec<u64> = d
            .elements()
            .iter()
            .filter_map(ElementName::as_atom)
            .collect();
        sorted.sort_unstable();
        let mut map = BTreeMap::new();
        let mut next = 0u64;
        for a in sorted {
            next += rng.gen_range(0..3);
            map.insert(a, next);
            next += 1;
        }
        let rename = |x: &ElementName| rename_atoms(x, &|a| map[&a]);
        let renamed = FiniteDiagram::from_order(d.elements().iter().map(rename).collect())
            .expect("injective renaming");
        let ok = match (op.apply(&d), op.apply(&renamed)) {
            (Ok(out), Ok(out_renamed)) => {
                let expected: Vec<ElementName> = out.elements().iter().map(rename).collect();
                expected == out_renamed.elements()
            }
            (Err(_), Err(_)) => true,
            _ => false,
        };
        if !ok {
            failures += 1;
        }
    }
    failures
}

fn rename_atoms(x: &ElementName, f: &dyn Fn(u64) -> u64) -> ElementName {
    match x {
        ElementName::Atom(a) => ElementName::Atom(f(*a)),
        ElementName::Pair(a, b) => {
            ElementName::Pair(Box::new(rename_atoms(a, f)), Box::new(rename_atoms(b, f)))
        }
        ElementName::Tuple(a, rest) => ElementName::Tuple(
            Box::new(rename_atoms(a, f)),
            rest.iter().map(|y| rename_atoms(y, f)).collect(),
        ),
        ElementName::Copy(i, inner) => ElementName::Copy(*i, Box::new(rename_atoms(inner, f))),
    }
}
