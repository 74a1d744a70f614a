use super::*;
use crate::order::Label;

fn atomic(name: &str, labels: &[&str]) -> PortGraph {
    let ports: Vec<(String, String)> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.to_string(), format!("p{i}")))
        .collect();
    PortGraph::atomic(name, &ports).unwrap()
}

#[test]
fn parallel_composition_unions_boxes_and_ports() {
    // two one-box graphs with free ports {1..5} and {A..E}
    let g1 = atomic("s1", &["1", "2", "3", "4", "5"]);
    let g2 = atomic("s2", &["A", "B", "C", "D", "E"]);
    let both = pg_parallel(&g1, &g2).unwrap();
    assert_eq!(both.box_count(), 2);
    assert_eq!(both.free_labels().len(), 10);
}

#[test]
fn empty_graph_is_a_parallel_unit() {
    let g = atomic("s1", &["1", "2"]);
    assert_eq!(pg_parallel(&g, &PortGraph::empty()).unwrap(), g);
    assert_eq!(pg_parallel(&PortGraph::empty(), &g).unwrap(), g);
}

#[test]
fn duplicate_box_names_and_labels_are_rejected() {
    let g1 = atomic("s1", &["1", "2"]);
    let g2 = atomic("s1", &["3", "4"]);
    assert!(matches!(
        pg_parallel(&g1, &g2),
        Err(crate::Error::BoxNameClash { .. })
    ));
    let g3 = atomic("s3", &["1", "9"]);
    assert!(matches!(
        pg_parallel(&g1, &g3),
        Err(crate::Error::LabelClash { .. })
    ));
}

#[test]
fn connect_wires_and_hides_the_pair() {
    let g = atomic("s1", &["1", "2", "3", "4", "5"]);
    let connected = pg_connect(&LabelPair::new("3", "4"), &g).unwrap();
    assert_eq!(
        connected.free_labels(),
        ["1", "2", "5"].iter().map(|l| Label::new(l)).collect()
    );
    assert_eq!(connected.wire_count(), 1);

    // determinism: the same connection on an identical copy is equal
    let copy = pg_connect(&LabelPair::new("3", "4"), &atomic("s1", &["1", "2", "3", "4", "5"]))
        .unwrap();
    assert_eq!(connected, copy);

    // connecting an already-hidden label fails
    assert!(matches!(
        pg_connect(&LabelPair::new("3", "5"), &connected),
        Err(crate::Error::NotConnectable { .. })
    ));
}

#[test]
fn expression_evaluation_matches_direct_calls() {
    let a = atomic("a", &["i", "x"]);
    let b = atomic("b", &["o", "y"]);
    let atoms = vec![a.clone(), b.clone()];
    let expr = CompositionExpr::connect(
        LabelPair::new("i", "o"),
        CompositionExpr::par(CompositionExpr::leaf(0), CompositionExpr::leaf(1)),
    );
    let evaluated = evaluate_expr(&PortGraphAlgebra, &atoms, &expr).unwrap();
    let direct = pg_connect(&LabelPair::new("i", "o"), &pg_parallel(&a, &b).unwrap()).unwrap();
    assert_eq!(evaluated, direct);

    // leaf evaluates to the atom itself
    let leaf = evaluate_expr(&PortGraphAlgebra, &atoms, &CompositionExpr::leaf(1)).unwrap();
    assert_eq!(leaf, b);
}

#[test]
fn evaluation_errors_carry_the_subterm_path() {
    let a = atomic("a", &["i"]);
    let expr = CompositionExpr::connect(
        LabelPair::new("i", "missing"),
        CompositionExpr::leaf(0),
    );
    let err = evaluate_expr(&PortGraphAlgebra, &[a], &expr).unwrap_err();
    match err {
        crate::Error::EvalFailed { path, source } => {
            assert_eq!(path, "root");
            assert!(matches!(*source, crate::Error::NotConnectable { .. }));
        }
        other => panic!("unexpected error {other}"),
    }
}

/// The four-subsystem diagram: s1 with {i1, i2}, s2 with {j1..j4}, s3 with
/// {k1..k3}, s4 with {l1}; connecting i1–j1, i2–k1, and j4–k2 leaves the
/// interfaces {j2, j3, k3, l1} free.
#[test]
fn four_subsystem_diagram_free_ports() {
    let atoms = vec![
        atomic("s1", &["i1", "i2"]),
        atomic("s2", &["j1", "j2", "j3", "j4"]),
        atomic("s3", &["k1", "k2", "k3"]),
        atomic("s4", &["l1"]),
    ];
    let par = CompositionExpr::par(
        CompositionExpr::par(
            CompositionExpr::par(CompositionExpr::leaf(0), CompositionExpr::leaf(1)),
            CompositionExpr::leaf(2),
        ),
        CompositionExpr::leaf(3),
    );
    let expr = CompositionExpr::connect(
        LabelPair::new("j4", "k2"),
        CompositionExpr::connect(
            LabelPair::new("i2", "k1"),
            CompositionExpr::connect(LabelPair::new("i1", "j1"), par),
        ),
    );
    let diagram = evaluate_expr(&PortGraphAlgebra, &atoms, &expr).unwrap();
    assert_eq!(
        diagram.free_labels(),
        ["j2", "j3", "k3", "l1"].iter().map(|l| Label::new(l)).collect()
    );
    assert_eq!(diagram.box_count(), 4);
    assert_eq!(diagram.wire_count(), 3);
}

#[test]
fn gamma_preservation_under_parallel_composition() {
    let algebra = PortGraphAlgebra;
    let g1 = atomic("a", &["x", "y"]);
    let g2 = atomic("b", &["u", "v"]);
    let both = pg_parallel(&g1, &g2).unwrap();
    // for labels within one operand, membership in Γ agrees
    for (graph, pair) in [
        (&g1, LabelPair::new("x", "y")),
        (&g2, LabelPair::new("u", "v")),
    ] {
        assert_eq!(
            algebra.is_connectable(graph, &pair),
            algebra.is_connectable(&both, &pair)
        );
    }
    // labels spanning the operands become connectable only in the whole
    assert!(algebra.is_connectable(&both, &LabelPair::new("x", "u")));
    assert!(!algebra.is_connectable(&g1, &LabelPair::new("x", "u")));
    // self-pairs are excluded
    assert!(!algebra.is_connectable(&both, &LabelPair::new("x", "x")));
}

/// Exhaustive associativity/commutativity of ∥ over three boxes.
#[test]
fn parallel_composition_is_associative_and_commutative() {
    let a = atomic("a", &["1"]);
    let b = atomic("b", &["2"]);
    let c = atomic("c", &["3"]);
    let ab_c = pg_parallel(&pg_parallel(&a, &b).unwrap(), &c).unwrap();
    let a_bc = pg_parallel(&a, &pg_parallel(&b, &c).unwrap()).unwrap();
    assert_eq!(ab_c, a_bc);
    let ba = pg_parallel(&b, &a).unwrap();
    assert_eq!(pg_parallel(&a, &b).unwrap(), ba);
    // every permutation flattens to the same graph
    let cab = pg_parallel(&c, &pg_parallel(&a, &b).unwrap()).unwrap();
    assert_eq!(ab_c, cab);
}

#[test]
fn connection_order_is_invariant_on_port_graphs() {
    let g = pg_parallel(
        &atomic("a", &["i", "j"]),
        &atomic("b", &["x", "y"]),
    )
    .unwrap();
    let p1 = LabelPair::new("i", "x");
    let p2 = LabelPair::new("j", "y");
    let one = pg_connect(&p2, &pg_connect(&p1, &g).unwrap()).unwrap();
    let two = pg_connect(&p1, &pg_connect(&p2, &g).unwrap()).unwrap();
    assert_eq!(one, two);
}

#[test]
fn coi_campaign_over_port_graphs_is_clean() {
    let config = CoiConfig {
        trials: 200,
        seed: 1,
        max_variants: 4,
    };
    let report = check_port_graph_invariance(&config);
    assert_eq!(report.trials_run, 200);
    assert!(report.holds(), "{}", report.to_lines());
    assert!(report.comparisons > 0);
}

#[test]
fn single_leaf_trials_are_trivially_clean() {
    let config = CoiConfig {
        trials: 5,
        seed: 0,
        max_variants: 3,
    };
    let report = check_composition_order_invariance(
        &PortGraphAlgebra,
        |_rng, _trial| {
            Ok(CoiTrial {
                atoms: vec![("solo".into(), atomic("solo", &["p"]))],
                variants: vec![CompositionExpr::leaf(0), CompositionExpr::leaf(0)],
            })
        },
        &config,
    );
    assert!(report.holds());
    assert_eq!(report.comparisons, 5);
}

#[test]
fn broadcast_witness_holds_and_reruns_under_relabeling() {
    let report = broadcast_impossibility_witness().unwrap();
    assert!(report.all_hold());
    assert_eq!(report.checks.len(), 3);

    // permuted labels leave the equalities intact
    let permuted = broadcast_witness_with(&PortGraphAlgebra, |name| {
        format!("ρ({name})")
    })
    .unwrap();
    assert!(permuted.all_hold());
}

#[test]
fn broadcast_witness_detects_injected_faults() {
    for fault in [faulty::Fault::DropWire, faulty::Fault::SwapLabel] {
        let algebra = faulty::FaultyPortGraphAlgebra { fault };
        let result = broadcast_witness_with(&algebra, |n| n.to_string());
        assert!(
            matches!(result, Err(crate::Error::WitnessFailed { .. })),
            "{fault:?} was not detected"
        );
    }
}

mod def31_properties {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph() -> impl Strategy<Value = (PortGraph, Vec<Label>)> {
        (1usize..4, 2usize..5, 0usize..1000).prop_map(|(boxes, ports, salt)| {
            let mut labels = Vec::new();
            let mut graph = PortGraph::empty();
            for b in 0..boxes {
                let port_list: Vec<(String, String)> = (0..ports)
                    .map(|p| (format!("s{salt}b{b}p{p}"), format!("p{p}")))
                    .collect();
                labels.extend(port_list.iter().map(|(l, _)| Label::new(l)));
                graph =
                    pg_parallel(&graph, &PortGraph::atomic(format!("s{salt}b{b}"), &port_list).unwrap())
                        .unwrap();
            }
            (graph, labels)
        })
    }

    proptest! {
        /// Def 3.1 label bookkeeping: par unions label sets, connect
        /// removes exactly the pair.
        #[test]
        fn label_bookkeeping((g, labels) in arb_graph()) {
            let algebra = PortGraphAlgebra;
            prop_assert_eq!(algebra.labels(&g).len(), labels.len());
            if labels.len() >= 2 {
                let pair = LabelPair::new(labels[0].clone(), labels[1].clone());
                let connected = pg_connect(&pair, &g).unwrap();
                let mut expected = algebra.labels(&g);
                expected.remove(pair.first());
                expected.remove(pair.second());
                prop_assert_eq!(algebra.labels(&connected), expected);
            }
        }

        /// par is defined exactly for disjoint label sets.
        #[test]
        fn par_defined_iff_disjoint((g, _labels) in arb_graph()) {
            // sharing any label with itself must fail
            prop_assert!(pg_parallel(&g, &g).is_err());
            let fresh = PortGraph::atomic("fresh", &[("zzz-unique", "p0")]).unwrap();
            prop_assert!(pg_parallel(&g, &fresh).is_ok());
        }
    }
}
