//! The abstract system-algebra contract, a concrete port-graph model in
//! which composition-order invariance holds structurally, a generic
//! composition-order-invariance checker, and the mechanized
//! broadcast-impossibility witness.

mod coi;
mod expr;
pub mod faulty;
mod port_graph;
#[cfg(test)]
mod tests;
mod witness;

pub use coi::{
    check_composition_order_invariance, check_port_graph_invariance, port_graph_trials,
    random_diagram_exprs, CoiConfig, CoiReport, CoiTrial, CoiViolation,
};
pub use expr::{evaluate_expr, CompositionExpr};
pub use port_graph::{pg_connect, pg_parallel, PortGraph, PortGraphAlgebra, PortRef};
pub use witness::{broadcast_impossibility_witness, broadcast_witness_with, WitnessReport};

use std::collections::BTreeSet;
use std::fmt;

use crate::order::Label;
use crate::Result;

/// Unordered pair of interface labels, stored in canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LabelPair(Label, Label);

impl LabelPair {
    pub fn new(a: impl Into<Label>, b: impl Into<Label>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            LabelPair(a, b)
        } else {
            LabelPair(b, a)
        }
    }

    pub fn first(&self) -> &Label {
        &self.0
    }

    pub fn second(&self) -> &Label {
        &self.1
    }

    pub fn is_self_pair(&self) -> bool {
        self.0 == self.1
    }

    pub fn contains(&self, label: &Label) -> bool {
        &self.0 == label || &self.1 == label
    }

    pub fn other(&self, label: &Label) -> Option<&Label> {
        if &self.0 == label {
            Some(&self.1)
        } else if &self.1 == label {
            Some(&self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for LabelPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.0, self.1)
    }
}

/// A Λ-system algebra: interface-label bookkeeping `λ`, the connectable
/// pairs `Γ`, parallel composition `∥`, interface connection `γ`, and an
/// equality notion. The contract clauses:
///
/// * `par(a, b)` is defined iff the label sets are disjoint, and then the
///   result's labels are their union;
/// * `connect(pair, s)` is defined iff `pair ∈ Γ(s)`, and then the result's
///   labels are `λ(s)` minus the pair;
/// * for labels within one operand, membership in `Γ(par(a, b))` agrees
///   with membership in the operand's `Γ`.
pub trait SystemAlgebra {
    type System: Clone;

    fn labels(&self, s: &Self::System) -> BTreeSet<Label>;

    fn connectable(&self, s: &Self::System) -> BTreeSet<LabelPair>;

    fn is_connectable(&self, s: &Self::System, pair: &LabelPair) -> bool {
        self.connectable(s).contains(pair)
    }

    fn par(&self, a: &Self::System, b: &Self::System) -> Result<Self::System>;

    fn connect(&self, pair: &LabelPair, s: &Self::System) -> Result<Self::System>;

    fn systems_equal(&self, a: &Self::System, b: &Self::System) -> Result<bool>;

    /// Human-readable rendering for reports.
    fn render(&self, _s: &Self::System) -> String {
        "<system>".into()
    }
}
