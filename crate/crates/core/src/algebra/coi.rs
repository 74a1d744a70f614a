//! Composition-order-invariance checking.
//!
//! A trial is a set of atomic systems plus several composition expressions
//! that all build the same diagram: same atom multiset, same connection
//! multiset, differing only in the order of `∥` and `γ` operations
//! (connect/connect swaps, connect/par interleavings, and par
//! reassociation/commutation). The checker evaluates every variant and
//! compares the results under the algebra's equality.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CompositionExpr, LabelPair, PortGraph, PortGraphAlgebra, SystemAlgebra};
use crate::order::Label;
use crate::Result;

#[derive(Clone, Copy, Debug)]
pub struct CoiConfig {
    pub trials: usize,
    pub seed: u64,
    /// Upper bound on expression variants evaluated per trial.
    pub max_variants: usize,
}

impl Default for CoiConfig {
    fn default() -> Self {
        CoiConfig {
            trials: 1_000,
            seed: 0,
            max_variants: 4,
        }
    }
}

/// One trial: named atoms plus expression variants over them.
#[derive(Clone, Debug)]
pub struct CoiTrial<S> {
    pub atoms: Vec<(String, S)>,
    pub variants: Vec<CompositionExpr>,
}

#[derive(Clone, Debug)]
pub struct CoiViolation {
    pub trial: usize,
    pub expr_a: String,
    pub expr_b: String,
    pub value_a: String,
    pub value_b: String,
}

#[derive(Clone, Debug, Default)]
pub struct CoiReport {
    pub trials_run: usize,
    pub comparisons: usize,
    pub skipped: usize,
    pub violations: Vec<CoiViolation>,
}

impl CoiReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_lines(&self) -> String {
        let mut out = format!(
            "trials={} comparisons={} skipped={} violations={}\n",
            self.trials_run,
            self.comparisons,
            self.skipped,
            self.violations.len()
        );
        for v in &self.violations {
            out.push_str(&format!(
                "violation trial={} {} = {} but {} = {}\n",
                v.trial, v.expr_a, v.value_a, v.expr_b, v.value_b
            ));
        }
        out
    }
}

/// Runs `config.trials` trials drawn from `source`, evaluating every
/// variant of each trial and recording a violation whenever two variants
/// disagree under the algebra's equality. Trial-source failures are skipped
/// and counted, and violations are sorted canonically.
pub fn check_composition_order_invariance<A, F>(
    algebra: &A,
    mut source: F,
    config: &CoiConfig,
) -> CoiReport
where
    A: SystemAlgebra,
    F: FnMut(&mut ChaCha8Rng, usize) -> Result<CoiTrial<A::System>>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = CoiReport::default();
    for trial_idx in 0..config.trials {
        let trial = match source(&mut rng, trial_idx) {
            Ok(trial) => trial,
            Err(_) => {
                report.skipped += 1;
                continue;
            }
        };
        report.trials_run += 1;
        let names: Vec<String> = trial.atoms.iter().map(|(n, _)| n.clone()).collect();
        let systems: Vec<A::System> =
            trial.atoms.iter().map(|(_, s)| s.clone()).collect();
        let variants: Vec<&CompositionExpr> =
            trial.variants.iter().take(config.max_variants.max(2)).collect();
        if variants.len() < 2 {
            continue;
        }
        let mut evaluated = Vec::with_capacity(variants.len());
        let mut failed = false;
        for expr in &variants {
            match super::evaluate_expr(algebra, &systems, expr) {
                Ok(sys) => evaluated.push(sys),
                Err(_) => {
                    report.skipped += 1;
                    failed = true;
                    break;
                }
            }
        }
        if failed {
            continue;
        }
        let reference = &evaluated[0];
        for (i, candidate) in evaluated.iter().enumerate().skip(1) {
            report.comparisons += 1;
            let equal = match algebra.systems_equal(reference, candidate) {
                Ok(eq) => eq,
                Err(_) => {
                    report.skipped += 1;
                    continue;
                }
            };
            if !equal {
                report.violations.push(CoiViolation {
                    trial: trial_idx,
                    expr_a: variants[0].render(&names),
                    expr_b: variants[i].render(&names),
                    value_a: algebra.render(reference),
                    value_b: algebra.render(candidate),
                });
            }
        }
    }
    report
        .violations
        .sort_by(|a, b| (a.trial, &a.expr_b).cmp(&(b.trial, &b.expr_b)));
    report
}

/// Random expression variants that all build the diagram "all atoms in
/// parallel, then every connection applied". Each variant uses a fresh
/// random parenthesization and atom order for `∥`, and pushes each
/// connection down to a random subtree that already contains both of its
/// labels, in random order. Connection pairs must be pairwise
/// label-disjoint.
pub fn random_diagram_exprs(
    atom_labels: &[BTreeSet<Label>],
    connects: &[LabelPair],
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Vec<CompositionExpr> {
    let mut variants = Vec::with_capacity(count);
    for _ in 0..count {
        let mut order: Vec<usize> = (0..atom_labels.len()).collect();
        order.shuffle(rng);
        let mut pending: Vec<LabelPair> = connects.to_vec();
        pending.shuffle(rng);
        let (expr, _) = build_subtree(&order, atom_labels, &mut pending, rng, true);
        variants.push(expr);
    }
    variants
}

fn build_subtree(
    atoms: &[usize],
    atom_labels: &[BTreeSet<Label>],
    pending: &mut Vec<LabelPair>,
    rng: &mut ChaCha8Rng,
    is_root: bool,
) -> (CompositionExpr, BTreeSet<Label>) {
    let (mut expr, mut labels) = if atoms.len() == 1 {
        (
            CompositionExpr::leaf(atoms[0]),
            atom_labels[atoms[0]].clone(),
        )
    } else {
        let split = rng.gen_range(1..atoms.len());
        let (left_atoms, right_atoms) = atoms.split_at(split);
        let (left, left_labels) = build_subtree(left_atoms, atom_labels, pending, rng, false);
        let (right, right_labels) = build_subtree(right_atoms, atom_labels, pending, rng, false);
        let labels: BTreeSet<Label> = left_labels.union(&right_labels).cloned().collect();
        (CompositionExpr::par(left, right), labels)
    };
    // wrap in connections whose labels are available here; inner nodes keep
    // each eligible connection with probability 1/2, the root takes all of
    // them (connection pairs are label-disjoint, so eligibility at the root
    // is unaffected by the pairs already placed)
    let eligible: Vec<usize> = pending
        .iter()
        .enumerate()
        .filter(|(_, p)| labels.contains(p.first()) && labels.contains(p.second()))
        .map(|(i, _)| i)
        .collect();
    for i in eligible.into_iter().rev() {
        if is_root || rng.gen_bool(0.5) {
            let pair = pending.remove(i);
            labels.remove(pair.first());
            labels.remove(pair.second());
            expr = CompositionExpr::connect(pair, expr);
        }
    }
    debug_assert!(!is_root || pending.is_empty());
    (expr, labels)
}

/// Trial source over the port-graph algebra: random boxes with 2–4 ports,
/// random pairwise-disjoint connection pairs, random variants.
pub fn port_graph_trials(
    variants: usize,
) -> impl FnMut(&mut ChaCha8Rng, usize) -> Result<CoiTrial<PortGraph>> {
    move |rng, _trial| {
        let n_atoms = rng.gen_range(2..=4usize);
        let mut atoms = Vec::with_capacity(n_atoms);
        let mut atom_labels: Vec<BTreeSet<Label>> = Vec::with_capacity(n_atoms);
        let mut all_labels: Vec<Label> = Vec::new();
        for b in 0..n_atoms {
            let n_ports = rng.gen_range(2..=4usize);
            let name = format!("b{b}");
            let ports: Vec<(String, String)> = (0..n_ports)
                .map(|p| (format!("b{b}p{p}"), format!("p{p}")))
                .collect();
            let graph = PortGraph::atomic(&name, &ports)?;
            let labels: BTreeSet<Label> =
                ports.iter().map(|(l, _)| Label::new(l)).collect();
            all_labels.extend(labels.iter().cloned());
            atom_labels.push(labels);
            atoms.push((name, graph));
        }
        all_labels.shuffle(rng);
        let max_pairs = all_labels.len() / 2;
        let n_pairs = rng.gen_range(0..=max_pairs.min(3));
        let connects: Vec<LabelPair> = (0..n_pairs)
            .map(|k| LabelPair::new(all_labels[2 * k].clone(), all_labels[2 * k + 1].clone()))
            .collect();
        let exprs = random_diagram_exprs(&atom_labels, &connects, rng, variants);
        Ok(CoiTrial {
            atoms,
            variants: exprs,
        })
    }
}

/// Convenience wrapper: run the checker over the port-graph algebra.
pub fn check_port_graph_invariance(config: &CoiConfig) -> CoiReport {
    check_composition_order_invariance(
        &PortGraphAlgebra,
        port_graph_trials(config.max_variants),
        config,
    )
}
