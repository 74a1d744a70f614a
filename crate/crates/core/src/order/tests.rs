use super::*;
use crate::causal::event_order;
use crate::kahn::make_seq_domain;

fn seq(order: &PartialOrderSpec, tokens: &[i64]) -> Element {
    order.element(Value::Seq(tokens.to_vec())).unwrap()
}

#[test]
fn prefix_leq_examples() {
    let order = make_seq_domain(&[1, 2], None);
    assert!(order.leq(&seq(&order, &[1]), &seq(&order, &[1, 2])).unwrap());
    assert!(!order.leq(&seq(&order, &[1]), &seq(&order, &[2, 1])).unwrap());
}

#[test]
fn initial_segment_leq_examples() {
    let order = event_order();
    let a = TimedValue::new(10, Rat::int(1));
    let b = TimedValue::new(11, Rat::int(2));
    let small = order
        .element(Value::Events(EventHistory::new([a.clone()]).unwrap()))
        .unwrap();
    let big = order
        .element(Value::Events(EventHistory::new([a, b]).unwrap()))
        .unwrap();
    assert!(order.leq(&small, &big).unwrap());
    assert!(!order.leq(&big, &small).unwrap());
}

#[test]
fn cross_domain_comparison_is_an_error() {
    let order = make_seq_domain(&[1, 2], None);
    let other = make_seq_domain(&[1, 2, 3], None);
    let a = seq(&order, &[1]);
    let b = seq(&other, &[1]);
    assert!(matches!(
        order.leq(&a, &b),
        Err(crate::Error::DomainMismatch { .. })
    ));
}

#[test]
fn sup_of_finite_prefix_chain_is_its_maximum() {
    let order = make_seq_domain(&[5, 7], None);
    let chain = order
        .chain(vec![
            seq(&order, &[]),
            seq(&order, &[5]),
            seq(&order, &[5, 7]),
        ])
        .unwrap();
    assert_eq!(order.sup_chain(&chain).unwrap(), seq(&order, &[5, 7]));
}

#[test]
fn sup_of_empty_chain_is_the_least_element() {
    let order = make_seq_domain(&[5, 7], None);
    let chain = order.chain(vec![]).unwrap();
    assert_eq!(order.sup_chain(&chain).unwrap(), seq(&order, &[]));
}

#[test]
fn componentwise_sup_takes_per_label_maxima() {
    let base = make_seq_domain(&[1, 9], None);
    let labels: std::collections::BTreeSet<Label> =
        [Label::new("i"), Label::new("j")].into();
    let order = tuple_order(&base, &labels);
    let t = |i: &[i64], j: &[i64]| {
        order
            .element(Value::tuple([
                (Label::new("i"), Value::Seq(i.to_vec())),
                (Label::new("j"), Value::Seq(j.to_vec())),
            ]))
            .unwrap()
    };
    let chain = order.chain(vec![t(&[], &[9]), t(&[1], &[9])]).unwrap();
    assert_eq!(order.sup_chain(&chain).unwrap(), t(&[1], &[9]));
}

#[test]
fn sup_rejects_chains_leaving_the_bounded_domain() {
    let bounded = make_seq_domain(&[1], Some(2));
    // sneak in an overlong member by tagging manually
    let overlong = Element::new(bounded.id().clone(), Value::seq([1, 1, 1]));
    let chain = bounded
        .chain(vec![
            bounded.element(Value::seq([1])).unwrap(),
            overlong,
        ])
        .unwrap();
    assert!(matches!(
        bounded.sup_chain(&chain),
        Err(crate::Error::NoSupremum { .. })
    ));
}

#[test]
fn inf_of_prefix_chain_is_its_minimum() {
    let order = make_seq_domain(&[1, 2], None);
    let chain = order
        .chain(vec![seq(&order, &[1]), seq(&order, &[1, 2])])
        .unwrap();
    assert_eq!(order.inf_chain(&chain).unwrap(), seq(&order, &[1]));

    let singleton = order.chain(vec![seq(&order, &[1, 2])]).unwrap();
    assert_eq!(order.inf_chain(&singleton).unwrap(), seq(&order, &[1, 2]));

    let empty = order.chain(vec![]).unwrap();
    assert!(matches!(
        order.inf_chain(&empty),
        Err(crate::Error::EmptyChain)
    ));
}

#[test]
fn inf_of_event_histories() {
    let order = event_order();
    let a = TimedValue::new(10, Rat::int(1));
    let b = TimedValue::new(11, Rat::int(2));
    let small = order
        .element(Value::Events(EventHistory::new([a.clone()]).unwrap()))
        .unwrap();
    let big = order
        .element(Value::Events(EventHistory::new([a, b]).unwrap()))
        .unwrap();
    let chain = order.chain(vec![big, small.clone()]).unwrap();
    assert_eq!(order.inf_chain(&chain).unwrap(), small);
}

#[test]
fn chain_rejects_incomparable_members() {
    let order = make_seq_domain(&[1, 2], None);
    assert!(matches!(
        order.chain(vec![seq(&order, &[1]), seq(&order, &[2])]),
        Err(crate::Error::NotAChain { .. })
    ));
}

#[test]
fn well_ordering_of_finite_event_sets() {
    let order = crate::causal::event_atom_order();
    let at = |v: i64, t: i64| {
        order
            .element(Value::Events(
                EventHistory::new([TimedValue::new(v, Rat::int(t))]).unwrap(),
            ))
            .unwrap()
    };
    // events at strictly increasing times are totally ordered
    assert!(order.is_well_ordered(&[at(10, 1), at(11, 2)]).unwrap());
    // equal times with distinct values are incomparable
    assert!(!order.is_well_ordered(&[at(10, 1), at(11, 1)]).unwrap());
    assert!(order.is_well_ordered(&[]).unwrap());
}

#[test]
fn same_time_events_are_rejected_at_construction() {
    let result = EventHistory::new([
        TimedValue::new(10, Rat::int(1)),
        TimedValue::new(11, Rat::int(1)),
    ]);
    assert!(matches!(result, Err(crate::Error::NotWellOrdered { .. })));
}

#[test]
fn monotone_checker_passes_identity_and_constant() {
    let order = make_seq_domain(&[1, 2], None);
    let pairs = vec![
        (seq(&order, &[]), seq(&order, &[1])),
        (seq(&order, &[1]), seq(&order, &[1, 2])),
    ];
    let report = check_monotone(&order, &order, |x| Ok(x.clone()), &pairs).unwrap();
    assert!(report.is_clean());
    assert_eq!(report.checked, 2);

    let constant = seq(&order, &[2]);
    let report =
        check_monotone(&order, &order, |_| Ok(constant.clone()), &pairs).unwrap();
    assert!(report.is_clean());
}

#[test]
fn monotone_checker_flags_sequence_reversal() {
    // reverse([1]) = [1] and reverse([1,2]) = [2,1]: [1] is not a prefix of
    // [2,1], so the pair [1] ⪯ [1,2] is a violation
    let order = make_seq_domain(&[1, 2], None);
    let reverse = |x: &Element| {
        let mut s = x.value.as_seq().unwrap().to_vec();
        s.reverse();
        order.element(Value::Seq(s))
    };
    let pairs = vec![
        (seq(&order, &[]), seq(&order, &[1, 2])),
        (seq(&order, &[1]), seq(&order, &[1, 2])),
    ];
    let report = check_monotone(&order, &order, reverse, &pairs).unwrap();
    assert_eq!(report.violations.len(), 1);
    assert_eq!(report.violations[0].input_low, seq(&order, &[1]));
}

#[test]
fn finite_poset_constructor_validates_axioms() {
    // a broken "leq" that is not antisymmetric
    let broken = finite_poset(
        "broken",
        vec![Value::Int(0), Value::Int(1)],
        |_, _| true,
    );
    assert!(matches!(broken, Err(crate::Error::InvalidOrder { .. })));

    let chain = finite_poset("ok", (0..3).map(Value::Int).collect(), |a, b| {
        a.as_int().unwrap() <= b.as_int().unwrap()
    })
    .unwrap();
    assert_eq!(chain.least().unwrap().value, Value::Int(0));
}

/// Order axioms on every enumerated element of the shipped small domains.
#[test]
fn axioms_hold_on_enumerated_domains() {
    let domains = vec![
        make_seq_domain(&[0, 1], Some(3)),
        powerset_domain("ps3", &[0, 1, 2]),
        int_range_poset("r5", 0, 4),
    ];
    for order in &domains {
        let elements = order.enumerated().unwrap();
        for a in &elements {
            assert_eq!(order.compare(a, a).unwrap(), Comparison::Equal);
            for b in &elements {
                let ab = order.compare(a, b).unwrap();
                let ba = order.compare(b, a).unwrap();
                match ab {
                    Comparison::Equal => {
                        assert_eq!(a, b, "only equal values compare Equal");
                        assert_eq!(ba, Comparison::Equal);
                    }
                    Comparison::LessEq => assert_eq!(ba, Comparison::GreaterEq),
                    Comparison::GreaterEq => assert_eq!(ba, Comparison::LessEq),
                    Comparison::Incomparable => assert_eq!(ba, Comparison::Incomparable),
                }
                for c in &elements {
                    if order.leq(a, b).unwrap() && order.leq(b, c).unwrap() {
                        assert!(order.leq(a, c).unwrap(), "transitivity {a} {b} {c}");
                    }
                }
            }
        }
    }
}

/// sup/inf agree with brute-force extremal bounds on enumerated domains.
#[test]
fn sup_and_inf_are_extremal_bounds() {
    let order = powerset_domain("ps3x", &[0, 1, 2]);
    let elements = order.enumerated().unwrap();
    let chain = order
        .chain(vec![
            order.element(Value::set([])).unwrap(),
            order.element(Value::set([1])).unwrap(),
            order.element(Value::set([0, 1])).unwrap(),
        ])
        .unwrap();
    let sup = order.sup_chain(&chain).unwrap();
    let inf = order.inf_chain(&chain).unwrap();
    for member in chain.elements() {
        assert!(order.leq(member, &sup).unwrap());
        assert!(order.leq(&inf, member).unwrap());
    }
    // least among all enumerated upper bounds, greatest among lower bounds
    for candidate in &elements {
        let upper = chain
            .elements()
            .iter()
            .all(|m| order.leq(m, candidate).unwrap());
        if upper {
            assert!(order.leq(&sup, candidate).unwrap());
        }
        let lower = chain
            .elements()
            .iter()
            .all(|m| order.leq(candidate, m).unwrap());
        if lower {
            assert!(order.leq(candidate, &inf).unwrap());
        }
    }
}

/// Componentwise tuple order agrees with per-label comparison on all
/// enumerated tuples over a two-element domain.
#[test]
fn tuple_order_agrees_with_per_label_comparison() {
    let base = int_range_poset("b2", 0, 1);
    let labels: std::collections::BTreeSet<Label> =
        [Label::new("i"), Label::new("j")].into();
    let order = tuple_order(&base, &labels);
    let tuples = order.enumerated().unwrap();
    assert_eq!(tuples.len(), 4);
    for a in &tuples {
        for b in &tuples {
            let expected = {
                let (ma, mb) = (a.value.as_tuple().unwrap(), b.value.as_tuple().unwrap());
                let le = labels.iter().all(|l| {
                    base.leq_values(&ma[l], &mb[l])
                });
                let ge = labels.iter().all(|l| {
                    base.leq_values(&mb[l], &ma[l])
                });
                match (le, ge) {
                    (true, true) => Comparison::Equal,
                    (true, false) => Comparison::LessEq,
                    (false, true) => Comparison::GreaterEq,
                    (false, false) => Comparison::Incomparable,
                }
            };
            assert_eq!(order.compare(a, b).unwrap(), expected);
        }
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn arb_seq() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(0..2i64, 0..6)
    }

    proptest! {
        #[test]
        fn prefix_order_is_a_partial_order(a in arb_seq(), b in arb_seq(), c in arb_seq()) {
            let order = make_seq_domain(&[0, 1], None);
            let ea = order.element(Value::Seq(a)).unwrap();
            let eb = order.element(Value::Seq(b)).unwrap();
            let ec = order.element(Value::Seq(c)).unwrap();
            prop_assert_eq!(order.compare(&ea, &ea).unwrap(), Comparison::Equal);
            if order.leq(&ea, &eb).unwrap() && order.leq(&eb, &ea).unwrap() {
                prop_assert_eq!(&ea, &eb);
            }
            if order.leq(&ea, &eb).unwrap() && order.leq(&eb, &ec).unwrap() {
                prop_assert!(order.leq(&ea, &ec).unwrap());
            }
        }

        #[test]
        fn chains_sort_and_bound(mut lens in proptest::collection::vec(0usize..5, 1..4)) {
            let order = make_seq_domain(&[0], None);
            lens.sort_unstable();
            let members: Vec<Element> = lens
                .iter()
                .map(|l| order.element(Value::Seq(vec![0; *l])).unwrap())
                .collect();
            let chain = order.chain(members.clone()).unwrap();
            let sup = order.sup_chain(&chain).unwrap();
            let inf = order.inf_chain(&chain).unwrap();
            for m in &members {
                prop_assert!(order.leq(m, &sup).unwrap());
                prop_assert!(order.leq(&inf, m).unwrap());
            }
        }
    }
}
