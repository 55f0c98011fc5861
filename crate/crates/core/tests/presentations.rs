use ordembed_core::presentation::{cantor_unpair, random_finite_diagram, Rows};
use ordembed_core::{ElementName, FiniteDiagram, OrderType, Presentation, Schedule};

fn ty(s: &str) -> OrderType {
    s.parse().unwrap()
}

fn atoms(d: &FiniteDiagram) -> Vec<u64> {
    d.elements().iter().map(|x| x.as_atom().unwrap()).collect()
}

#[test]
fn omega_times_two_interleaves_copies() {
    let p = Presentation::standard(&ty("w*2"), Schedule::Standard).unwrap();
    assert_eq!(atoms(&p.prefix(4)), vec![0, 2, 1, 3]);
}

#[test]
fn reversed_omega_descends() {
    let p = Presentation::standard(&ty("rev(w)"), Schedule::Standard).unwrap();
    assert_eq!(atoms(&p.prefix(3)), vec![2, 1, 0]);
}

#[test]
fn omega_squared_follows_unpairing() {
    let p = Presentation::standard(&ty("w^2"), Schedule::Standard).unwrap();
    for s in [10usize, 37, 100] {
        let mut expected: Vec<u64> = (0..s as u64).collect();
        expected.sort_by_key(|&i| cantor_unpair(i));
        assert_eq!(atoms(&p.prefix(s)), expected, "stage {s}");
    }
}

#[test]
fn prefixes_grow_monotonically() {
    for t in ["w", "w*3", "w^2 + rev(w)", "5 + w^2*2", "rev(w^2)"] {
        let p = Presentation::standard(&ty(t), Schedule::Seeded(11)).unwrap();
        let stages: Vec<FiniteDiagram> = p.stages(80).collect();
        for (s, w) in stages.windows(2).enumerate() {
            assert!(w[0].is_subdiagram_of(&w[1]), "{t} at stage {s}");
            assert_eq!(w[0].len() + 1, w[1].len());
        }
        assert_eq!(stages[40], p.prefix(40));
    }
}

#[test]
fn schedules_change_order_of_arrival_not_content() {
    let target = ty("w*2");
    let base = Presentation::standard(&target, Schedule::Standard).unwrap();
    for sched in [
        Schedule::RoundRobin,
        Schedule::Seeded(3),
        Schedule::Seeded(99),
    ] {
        let other = base.with_schedule(sched);
        for s in (0..=50).step_by(5) {
            let small = other.prefix(s);
            let found = (s..=s + 32).any(|t| small.is_subdiagram_of(&base.prefix(t)));
            assert!(
                found,
                "stage {s} of {} does not embed",
                other.schedule_label()
            );
        }
    }
}

#[test]
fn merge_contains_each_row() {
    let merged = Presentation::interleave_merge(Rows::Finite(3), 1, Schedule::Standard).unwrap();
    for n in 0..3 {
        let row = merged.row(n).unwrap();
        for s in [10usize, 30, 60] {
            let whole = merged.prefix(s);
            let part = row.prefix(s);
            assert!(part.len() <= whole.len());
            let restricted = whole.restrict(|x| part.contains(x));
            assert_eq!(restricted, part, "row {n} at stage {s}");
        }
    }
}

#[test]
fn concat_orders_parts_one_after_another() {
    let w = Presentation::standard(&OrderType::omega(), Schedule::Standard).unwrap();
    let sum = Presentation::concat_sum(&[w.clone(), w]).unwrap();
    let d = sum.prefix(40);
    let first = sum.part(0).unwrap().prefix(40);
    let second = sum.part(1).unwrap().prefix(40);
    assert_eq!(first.len() + second.len(), d.len());
    let last_first = d.position(first.elements().last().unwrap()).unwrap();
    let first_second = d.position(&second.elements()[0]).unwrap();
    assert!(last_first < first_second);
    let swapped = sum.permute_parts(&[1, 0]).unwrap().prefix(40);
    assert!(
        swapped.position(&second.elements()[0]).unwrap()
            < swapped.position(&first.elements()[0]).unwrap()
    );
}

#[test]
fn reversal_mirrors_every_stage() {
    let p = Presentation::standard(&ty("w*2 + 3"), Schedule::Standard).unwrap();
    let r = p.reversed();
    for s in [0usize, 7, 33] {
        let mut expect = p.prefix(s).into_elements();
        expect.reverse();
        assert_eq!(r.prefix(s).elements(), expect.as_slice());
    }
}

#[test]
fn random_diagrams_are_linear_and_reproducible() {
    let a = random_finite_diagram(12, 5);
    assert_eq!(a, random_finite_diagram(12, 5));
    assert_eq!(a.len(), 12);
    assert!(a.validate().is_ok());
    assert!(a
        .elements()
        .iter()
        .all(|x| matches!(x, ElementName::Atom(n) if *n < 24)));
}

#[test]
fn unsupported_targets_are_rejected() {
    assert!(Presentation::standard(&ty("w^w"), Schedule::Standard).is_err());
}
