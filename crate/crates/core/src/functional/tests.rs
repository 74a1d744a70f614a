use super::*;
use crate::order::{bit_domain, Assignment, Label, Value};

fn l(s: &str) -> Label {
    Label::new(s)
}

fn bit(n: i64) -> Value {
    Value::Int(n)
}

fn asg(entries: &[(&str, i64)]) -> Assignment {
    entries
        .iter()
        .map(|(k, v)| (Label::new(*k), Value::Int(*v)))
        .collect()
}

/// The inverter pair: s({i1: x1, i2: x2}) = {o1: 1-x1, o2: 1-x2, o3: x1}.
pub(crate) fn prefer_zero_example_system() -> FunctionalSystem {
    let signature = Signature::new([l("i1"), l("i2")], [l("o1"), l("o2"), l("o3")]).unwrap();
    FunctionalSystem::new(signature, bit_domain(), |x| {
        let x1 = x[&Label::new("i1")].as_int().unwrap();
        let x2 = x[&Label::new("i2")].as_int().unwrap();
        Ok(asg(&[("o1", 1 - x1), ("o2", 1 - x2), ("o3", x1)]))
    })
}

fn prefer_zero() -> Chooser {
    Chooser::PreferListed(vec![bit(0), bit(1)])
}

fn constant_system(output: &str, value: i64) -> FunctionalSystem {
    let signature = Signature::new([], [Label::new(output)]).unwrap();
    let out = asg(&[(output, value)]);
    FunctionalSystem::new(signature, bit_domain(), move |_| Ok(out.clone()))
}

#[test]
fn fpar_of_constants_emits_both() {
    let c1 = constant_system("o1", 0);
    let c2 = constant_system("o2", 1);
    let both = fpar(&c1, &c2).unwrap();
    assert_eq!(both.evaluate(&Assignment::new()).unwrap(), asg(&[("o1", 0), ("o2", 1)]));
}

#[test]
fn fpar_is_commutative_and_associative_extensionally() {
    let mk = |inp: &str, out: &str| {
        let signature = Signature::new([l(inp)], [l(out)]).unwrap();
        let (inp, out) = (l(inp), l(out));
        FunctionalSystem::new(signature, bit_domain(), move |x| {
            let v = x[&inp].as_int().unwrap();
            Ok([(out.clone(), bit(1 - v))].into())
        })
    };
    let s1 = mk("a", "x");
    let s2 = mk("b", "y");
    let s3 = mk("c", "z");

    let ab = fpar(&s1, &s2).unwrap();
    let ba = fpar(&s2, &s1).unwrap();
    let inputs = enumerate_inputs(&bit_domain(), ab.signature().inputs()).unwrap();
    assert!(observational_eq(&ab, &ba, &inputs).unwrap());

    let left = fpar(&fpar(&s1, &s2).unwrap(), &s3).unwrap();
    let right = fpar(&s1, &fpar(&s2, &s3).unwrap()).unwrap();
    let inputs = enumerate_inputs(&bit_domain(), left.signature().inputs()).unwrap();
    assert!(observational_eq(&left, &right, &inputs).unwrap());
}

#[test]
fn fpar_rejects_label_clashes_and_domain_mixing() {
    let c1 = constant_system("o", 0);
    let c2 = constant_system("o", 1);
    assert!(matches!(fpar(&c1, &c2), Err(crate::Error::LabelClash { .. })));

    let signature = Signature::new([], [l("p")]).unwrap();
    let other = FunctionalSystem::new(
        signature,
        crate::order::int_range_poset("trits", 0, 2),
        |_| Ok([(Label::new("p"), Value::Int(0))].into()),
    );
    assert!(matches!(
        fpar(&c1, &other),
        Err(crate::Error::DomainMismatch { .. })
    ));
}

#[test]
fn fixed_point_sets_of_small_systems() {
    // identity i -> o: every bit is fixed
    let signature = Signature::new([l("i")], [l("o")]).unwrap();
    let identity = FunctionalSystem::new(signature, bit_domain(), |x| {
        Ok([(Label::new("o"), x[&Label::new("i")].clone())].into())
    });
    assert_eq!(
        fixed_point_set(&identity, &l("i"), &l("o"), &Assignment::new()).unwrap(),
        vec![bit(0), bit(1)]
    );

    // inverter i -> o: no fixed point
    let signature = Signature::new([l("i")], [l("o")]).unwrap();
    let inverter = FunctionalSystem::new(signature, bit_domain(), |x| {
        let v = x[&Label::new("i")].as_int().unwrap();
        Ok([(Label::new("o"), bit(1 - v))].into())
    });
    assert!(fixed_point_set(&inverter, &l("i"), &l("o"), &Assignment::new())
        .unwrap()
        .is_empty());
}

/// The worked inverter-pair example: connecting i2–o1 leaves a system with
/// a unique fixed point per input, and the remaining loop i1–o2 has both
/// bits fixed.
#[test]
fn prefer_zero_counterexample_runs_exactly() {
    let s = prefer_zero_example_system();

    // γ{i2,o1}(s)({i1: x1}) = {o2: x1, o3: x1}
    let first = fconnect(&l("i2"), &l("o1"), &s, &prefer_zero()).unwrap();
    for x1 in 0..=1 {
        assert_eq!(
            first.evaluate(&asg(&[("i1", x1)])).unwrap(),
            asg(&[("o2", x1), ("o3", x1)]),
        );
    }

    // Φ of the remaining loop at empty context is {0, 1}
    assert_eq!(
        fixed_point_set(&first, &l("i1"), &l("o2"), &Assignment::new()).unwrap(),
        vec![bit(0), bit(1)]
    );

    // γ{i1,o2}(γ{i2,o1}(s))(∅) = {o3: 0}
    let closed = fconnect(&l("i1"), &l("o2"), &first, &prefer_zero()).unwrap();
    assert_eq!(closed.evaluate(&Assignment::new()).unwrap(), asg(&[("o3", 0)]));

    // opposite order: γ{i2,o1}(γ{i1,o2}(s))(∅) = {o3: 1}
    let other_first = fconnect(&l("i1"), &l("o2"), &s, &prefer_zero()).unwrap();
    for x2 in 0..=1 {
        assert_eq!(
            other_first.evaluate(&asg(&[("i2", x2)])).unwrap(),
            asg(&[("o1", x2), ("o3", 1 - x2)]),
        );
    }
    let other_closed = fconnect(&l("i2"), &l("o1"), &other_first, &prefer_zero()).unwrap();
    assert_eq!(
        other_closed.evaluate(&Assignment::new()).unwrap(),
        asg(&[("o3", 1)])
    );

    // the two orders disagree extensionally
    assert!(!observational_eq(&closed, &other_closed, &[Assignment::new()]).unwrap());
}

#[test]
fn chooser_soundness_is_enforced() {
    // a "chooser" that always returns 1 is unsound for the inverter loop
    let signature = Signature::new([l("i")], [l("o")]).unwrap();
    let inverter = FunctionalSystem::new(signature, bit_domain(), |x| {
        let v = x[&Label::new("i")].as_int().unwrap();
        Ok([(Label::new("o"), bit(1 - v))].into())
    });
    let connected =
        fconnect(&l("i"), &l("o"), &inverter, &Chooser::PreferListed(vec![bit(0)])).unwrap();
    assert!(matches!(
        connected.evaluate(&Assignment::new()),
        Err(crate::Error::NoFixedPoint { .. })
    ));
}

#[test]
fn brute_force_least_chooser_agrees_with_kleene() {
    let s = prefer_zero_example_system();
    let first = fconnect(&l("i2"), &l("o1"), &s, &Chooser::BruteForceLeast).unwrap();
    let closed = fconnect(&l("i1"), &l("o2"), &first, &Chooser::BruteForceLeast).unwrap();
    let via_kleene = {
        let first = fconnect(
            &l("i2"),
            &l("o1"),
            &s,
            &Chooser::LeastViaKleene(crate::fixpoint::Fuel::default()),
        )
        .unwrap();
        fconnect(
            &l("i1"),
            &l("o2"),
            &first,
            &Chooser::LeastViaKleene(crate::fixpoint::Fuel::default()),
        )
        .unwrap()
    };
    assert!(observational_eq(&closed, &via_kleene, &[Assignment::new()]).unwrap());
}

#[test]
fn observational_eq_examples() {
    let c1 = constant_system("o", 1);
    let c2 = constant_system("o", 1);
    assert!(observational_eq(&c1, &c1, &[Assignment::new()]).unwrap());
    // structurally different closures, extensionally equal
    assert!(observational_eq(&c1, &c2, &[Assignment::new()]).unwrap());

    let signature = Signature::new([], [l("p")]).unwrap();
    let different = FunctionalSystem::new(signature, bit_domain(), |_| {
        Ok([(Label::new("p"), Value::Int(0))].into())
    });
    assert!(matches!(
        observational_eq(&c1, &different, &[]),
        Err(crate::Error::SignatureMismatch { .. })
    ));
}

mod merge_tests {
    use super::*;

    /// System over merged interfaces a and m: a.out echoes a constant, and
    /// m.out mirrors whatever arrives on a.in.
    fn reporter(iface: &str, monitor: &str, emitted: i64) -> FunctionalSystem {
        let a_in = input_label(&l(iface));
        let a_out = output_label(&l(iface));
        let m_in = input_label(&l(monitor));
        let m_out = output_label(&l(monitor));
        let signature =
            Signature::new([a_in.clone(), m_in], [a_out.clone(), m_out.clone()]).unwrap();
        FunctionalSystem::new(signature, bit_domain(), move |x| {
            Ok([
                (a_out.clone(), bit(emitted)),
                (m_out.clone(), x[&a_in].clone()),
            ]
            .into())
        })
    }

    /// Echo system: b.out repeats b.in; n.out mirrors b.in as well.
    fn echo(iface: &str, monitor: &str) -> FunctionalSystem {
        let b_in = input_label(&l(iface));
        let b_out = output_label(&l(iface));
        let n_in = input_label(&l(monitor));
        let n_out = output_label(&l(monitor));
        let signature =
            Signature::new([b_in.clone(), n_in], [b_out.clone(), n_out.clone()]).unwrap();
        FunctionalSystem::new(signature, bit_domain(), move |x| {
            Ok([
                (b_out.clone(), x[&b_in].clone()),
                (n_out.clone(), x[&b_in].clone()),
            ]
            .into())
        })
    }

    #[test]
    fn bidirectional_connection_exchanges_values_both_ways() {
        // one connect' wires a.in <- b.out and b.in <- a.out; the monitors
        // then both observe the constant injected by the reporter. Oracle:
        // brute-forcing the joint fixed point of the two directed loops
        // over bits gives a.in = b.out = 1 and b.in = a.out = 1.
        let s = merge_interfaces(
            fpar(&reporter("a", "m", 1), &echo("b", "n")).unwrap(),
            Chooser::BruteForceLeast,
        )
        .unwrap();
        let connected = s.connect(&l("a"), &l("b")).unwrap();
        assert_eq!(
            connected.interfaces().iter().cloned().collect::<Vec<_>>(),
            vec![l("m"), l("n")]
        );
        let x: Assignment = [
            (input_label(&l("m")), bit(0)),
            (input_label(&l("n")), bit(0)),
        ]
        .into();
        let out = connected.inner().evaluate(&x).unwrap();
        assert_eq!(out[&output_label(&l("m"))], bit(1));
        assert_eq!(out[&output_label(&l("n"))], bit(1));
    }

    #[test]
    fn connect_ignoring_inputs_keeps_outputs() {
        // both sides ignore their paired inputs entirely
        let constant_pair = |iface: &str, monitor: &str, v: i64| {
            let a_in = input_label(&l(iface));
            let a_out = output_label(&l(iface));
            let m_in = input_label(&l(monitor));
            let m_out = output_label(&l(monitor));
            let signature =
                Signature::new([a_in, m_in], [a_out.clone(), m_out.clone()]).unwrap();
            FunctionalSystem::new(signature, bit_domain(), move |_| {
                Ok([(a_out.clone(), bit(v)), (m_out.clone(), bit(v))].into())
            })
        };
        let s = merge_interfaces(
            fpar(&constant_pair("a", "m", 1), &constant_pair("b", "n", 0)).unwrap(),
            Chooser::BruteForceLeast,
        )
        .unwrap();
        let connected = s.connect(&l("a"), &l("b")).unwrap();
        let x: Assignment = [
            (input_label(&l("m")), bit(0)),
            (input_label(&l("n")), bit(0)),
        ]
        .into();
        let out = connected.inner().evaluate(&x).unwrap();
        assert_eq!(out[&output_label(&l("m"))], bit(1));
        assert_eq!(out[&output_label(&l("n"))], bit(0));
    }

    #[test]
    fn self_pairs_and_malformed_pairings_are_rejected() {
        let s = merge_interfaces(reporter("a", "m", 0), Chooser::BruteForceLeast).unwrap();
        assert!(matches!(
            s.connect(&l("a"), &l("a")),
            Err(crate::Error::MalformedPairing { .. })
        ));

        let signature = Signature::new([l("raw")], [output_label(&l("raw"))]).unwrap();
        let bad = FunctionalSystem::new(signature, bit_domain(), |x| {
            Ok([(output_label(&l("raw")), x[&l("raw")].clone())].into())
        });
        assert!(matches!(
            merge_interfaces(bad, Chooser::BruteForceLeast),
            Err(crate::Error::MalformedPairing { .. })
        ));
    }
}
