use ordembed_core::analysis::truncation_iso_oracle;
use ordembed_core::{OrderType, Term};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Term> {
    prop_oneof![
        (1u64..4).prop_map(Term::Finite),
        (1u64..4, 1u64..4).prop_map(|(e, c)| Term::power(OrderType::finite(e), c)),
        (1u64..4, 1u64..4).prop_map(|(e, c)| Term::reversed_power(OrderType::finite(e), c)),
    ]
}

fn expr(max_terms: usize) -> impl Strategy<Value = OrderType> {
    prop::collection::vec(term(), 0..=max_terms).prop_map(OrderType::from_terms)
}

fn ordinal_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        (1u64..4).prop_map(Term::Finite),
        (1u64..3, 1u64..3).prop_map(|(e, c)| Term::power(OrderType::finite(e), c)),
    ]
}

proptest! {
    #[test]
    fn normalize_is_idempotent(e in expr(5)) {
        let once = e.normalize().unwrap();
        prop_assert_eq!(once.normalize().unwrap(), once);
    }

    #[test]
    fn reverse_commutes_with_normalize(e in expr(5)) {
        let a = e.reverse().normalize().unwrap();
        let b = e.normalize().unwrap().reverse().normalize().unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn reverse_is_an_involution(e in expr(5)) {
        prop_assert_eq!(e.reverse().reverse(), e);
    }

    #[test]
    fn addition_is_associative(a in expr(3), b in expr(3), c in expr(3)) {
        let left = a.add(&b).unwrap().add(&c).unwrap();
        let right = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reverse_distributes_over_sums(a in expr(3), b in expr(3)) {
        let lhs = a.add(&b).unwrap().reverse().normalize().unwrap();
        let rhs = b.reverse().add(&a.reverse()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ordinal_product_distributes_on_the_left(
        a in prop::collection::vec(ordinal_term(), 1..3).prop_map(OrderType::from_terms),
        b in prop::collection::vec(ordinal_term(), 1..3).prop_map(OrderType::from_terms),
        c in prop::collection::vec(ordinal_term(), 1..3).prop_map(OrderType::from_terms),
    ) {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbolic_equality_is_never_refuted(e in expr(3)) {
        let n = e.normalize().unwrap();
        if n.terms().len() <= 3 {
            prop_assert!(truncation_iso_oracle(&e.normalize().unwrap(), &n, 4).unwrap());
        }
    }

    #[test]
    fn refuted_pairs_are_unequal(a in expr(2), b in expr(2)) {
        let (na, nb) = (a.normalize().unwrap(), b.normalize().unwrap());
        if let (Ok(false), Ok(true)) = (truncation_iso_oracle(&na, &nb, 4), na.equal(&nb)) {
            prop_assert!(false, "oracle refutes {} = {}", na, nb);
        }
    }
}

#[test]
fn documented_examples() {
    let p = |s: &str| s.parse::<OrderType>().unwrap();
    assert!(p("w + w^2").equal(&p("w^2")).unwrap());
    assert_eq!(
        p("w^2*3").reverse().normalize().unwrap().to_string(),
        "rev(w^2)*3"
    );
    assert!(p("3 + w").equal(&p("w")).unwrap());
    assert!(p("rev(w) + 3").equal(&p("rev(w)")).unwrap());
    assert!(!p("w + 3").equal(&p("w")).unwrap());
    assert!(p("w*2").mul(&p("w")).unwrap().equal(&p("w^2")).unwrap());
    assert!(p("w").mul(&p("2")).unwrap().equal(&p("w*2")).unwrap());
    assert!(p("w + 1").pow(2).unwrap().equal(&p("w^2 + w + 1")).unwrap());
    assert!("w +".parse::<OrderType>().is_err());
}
