//! Fault-injected port-graph algebra variants. These exist to demonstrate
//! that the broadcast witness detects algebra-implementation bugs: each
//! fault makes at least one of the witness equalities fail.

use std::collections::BTreeSet;

use super::{pg_connect, pg_parallel, LabelPair, PortGraph, PortGraphAlgebra, SystemAlgebra};
use crate::order::Label;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// `connect` removes the labels but forgets to add the wire.
    DropWire,
    /// `connect` silently substitutes another free label for the second
    /// member of the pair when one is available.
    SwapLabel,
}

#[derive(Clone, Copy, Debug)]
pub struct FaultyPortGraphAlgebra {
    pub fault: Fault,
}

impl SystemAlgebra for FaultyPortGraphAlgebra {
    type System = PortGraph;

    fn labels(&self, s: &PortGraph) -> BTreeSet<Label> {
        PortGraphAlgebra.labels(s)
    }

    fn connectable(&self, s: &PortGraph) -> BTreeSet<LabelPair> {
        PortGraphAlgebra.connectable(s)
    }

    fn par(&self, a: &PortGraph, b: &PortGraph) -> Result<PortGraph> {
        pg_parallel(a, b)
    }

    fn connect(&self, pair: &LabelPair, s: &PortGraph) -> Result<PortGraph> {
        match self.fault {
            Fault::DropWire => {
                let ends = (
                    s.free_port(pair.first()).cloned(),
                    s.free_port(pair.second()).cloned(),
                );
                let connected = pg_connect(pair, s)?;
                match ends {
                    (Some(a), Some(b)) => Ok(connected.without_wire(&a, &b)),
                    _ => Ok(connected),
                }
            }
            Fault::SwapLabel => {
                // validate like the real operation, then wire the first
                // endpoint to the port of some unrelated free label while
                // keeping the label bookkeeping intact
                let correct = pg_connect(pair, s)?;
                let wrong = s
                    .free_labels()
                    .into_iter()
                    .find(|l| !pair.contains(l))
                    .and_then(|other| s.free_port(&other).cloned());
                match (s.free_port(pair.first()).cloned(), wrong) {
                    (Some(a), Some(w)) => {
                        let b = s
                            .free_port(pair.second())
                            .cloned()
                            .expect("validated by pg_connect");
                        Ok(correct
                            .without_wire(&a, &b)
                            .miswired([pair.first(), pair.second()], (a, w)))
                    }
                    _ => Ok(correct),
                }
            }
        }
    }

    fn systems_equal(&self, a: &PortGraph, b: &PortGraph) -> Result<bool> {
        Ok(a == b)
    }

    fn render(&self, s: &PortGraph) -> String {
        s.to_string()
    }
}
