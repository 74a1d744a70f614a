//! Flat port graphs: named atomic boxes, internal wires, and free labeled
//! ports. Composition never nests graphs, so two compositions of the same
//! diagram produce literally identical values and equality is structural.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{LabelPair, SystemAlgebra};
use crate::order::Label;
use crate::{Error, Result};

/// One endpoint: a named port on a named box.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PortRef {
    pub box_name: String,
    pub port: String,
}

impl PortRef {
    pub fn new(box_name: impl Into<String>, port: impl Into<String>) -> Self {
        PortRef {
            box_name: box_name.into(),
            port: port.into(),
        }
    }
}

impl fmt::Display for PortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.box_name, self.port)
    }
}

type Wire = (PortRef, PortRef);

fn wire(a: PortRef, b: PortRef) -> Wire {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PortGraph {
    boxes: BTreeMap<String, BTreeSet<String>>,
    wires: BTreeSet<Wire>,
    free_ports: BTreeMap<Label, PortRef>,
}

impl PortGraph {
    pub fn empty() -> Self {
        PortGraph::default()
    }

    /// A single box whose ports are all free, one label per port.
    pub fn atomic<L, P>(box_name: impl Into<String>, ports: &[(L, P)]) -> Result<Self>
    where
        L: AsRef<str>,
        P: AsRef<str>,
    {
        let box_name = box_name.into();
        let mut port_set = BTreeSet::new();
        let mut free_ports = BTreeMap::new();
        for (label, port) in ports {
            let label = Label::new(label.as_ref());
            let port = port.as_ref().to_string();
            if !port_set.insert(port.clone()) {
                return Err(Error::PortMismatch {
                    detail: format!("port `{port}` declared twice on box `{box_name}`"),
                });
            }
            if free_ports
                .insert(label.clone(), PortRef::new(&box_name, &port))
                .is_some()
            {
                return Err(Error::LabelClash {
                    labels: vec![label],
                });
            }
        }
        let mut boxes = BTreeMap::new();
        boxes.insert(box_name, port_set);
        Ok(PortGraph {
            boxes,
            wires: BTreeSet::new(),
            free_ports,
        })
    }

    pub fn free_labels(&self) -> BTreeSet<Label> {
        self.free_ports.keys().cloned().collect()
    }

    pub fn box_names(&self) -> impl Iterator<Item = &String> {
        self.boxes.keys()
    }

    pub fn box_count(&self) -> usize {
        self.boxes.len()
    }

    pub fn wire_count(&self) -> usize {
        self.wires.len()
    }

    pub fn wires(&self) -> impl Iterator<Item = &Wire> {
        self.wires.iter()
    }

    pub fn free_port(&self, label: &Label) -> Option<&PortRef> {
        self.free_ports.get(label)
    }

    // fault-injection support for the witness mutation tests
    pub(crate) fn without_wire(mut self, a: &PortRef, b: &PortRef) -> PortGraph {
        self.wires.remove(&wire(a.clone(), b.clone()));
        self
    }

    pub(crate) fn miswired(
        mut self,
        remove: [&Label; 2],
        ends: (PortRef, PortRef),
    ) -> PortGraph {
        for label in remove {
            self.free_ports.remove(label);
        }
        self.wires.insert(wire(ends.0, ends.1));
        self
    }
}

impl fmt::Display for PortGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "boxes[{}] wires[{}] free[{}]",
            self.boxes.keys().cloned().collect::<Vec<_>>().join(","),
            self.wires
                .iter()
                .map(|(a, b)| format!("{a}-{b}"))
                .collect::<Vec<_>>()
                .join(","),
            self.free_ports
                .keys()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Parallel composition: disjoint union of boxes, wires, and free ports.
pub fn pg_parallel(g1: &PortGraph, g2: &PortGraph) -> Result<PortGraph> {
    if let Some(name) = g1.boxes.keys().find(|n| g2.boxes.contains_key(*n)) {
        return Err(Error::BoxNameClash { name: name.clone() });
    }
    let clashing: Vec<Label> = g1
        .free_ports
        .keys()
        .filter(|l| g2.free_ports.contains_key(*l))
        .cloned()
        .collect();
    if !clashing.is_empty() {
        return Err(Error::LabelClash { labels: clashing });
    }
    let mut out = g1.clone();
    out.boxes.extend(g2.boxes.clone());
    out.wires.extend(g2.wires.iter().cloned());
    out.free_ports.extend(g2.free_ports.clone());
    Ok(out)
}

/// Interface connection: wires the two free ports together and removes both
/// labels from the interface.
pub fn pg_connect(pair: &LabelPair, g: &PortGraph) -> Result<PortGraph> {
    if pair.is_self_pair() {
        return Err(Error::NotConnectable {
            pair: pair.clone(),
            reason: "self-pairs are not connectable".into(),
        });
    }
    let a = g.free_ports.get(pair.first()).cloned();
    let b = g.free_ports.get(pair.second()).cloned();
    let (a, b) = match (a, b) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            let missing: Vec<String> = [pair.first(), pair.second()]
                .iter()
                .filter(|l| !g.free_ports.contains_key(*l))
                .map(|l| l.to_string())
                .collect();
            return Err(Error::NotConnectable {
                pair: pair.clone(),
                reason: format!("labels not free: {}", missing.join(", ")),
            });
        }
    };
    let mut out = g.clone();
    out.free_ports.remove(pair.first());
    out.free_ports.remove(pair.second());
    out.wires.insert(wire(a, b));
    Ok(out)
}

/// The port-graph system algebra. `Γ` admits every pair of distinct free
/// labels and equality is structural.
#[derive(Clone, Copy, Debug, Default)]
pub struct PortGraphAlgebra;

impl SystemAlgebra for PortGraphAlgebra {
    type System = PortGraph;

    fn labels(&self, s: &PortGraph) -> BTreeSet<Label> {
        s.free_labels()
    }

    fn connectable(&self, s: &PortGraph) -> BTreeSet<LabelPair> {
        let labels: Vec<Label> = s.free_labels().into_iter().collect();
        let mut pairs = BTreeSet::new();
        for (i, a) in labels.iter().enumerate() {
            for b in &labels[i + 1..] {
                pairs.insert(LabelPair::new(a.clone(), b.clone()));
            }
        }
        pairs
    }

    fn is_connectable(&self, s: &PortGraph, pair: &LabelPair) -> bool {
        !pair.is_self_pair()
            && s.free_ports.contains_key(pair.first())
            && s.free_ports.contains_key(pair.second())
    }

    fn par(&self, a: &PortGraph, b: &PortGraph) -> Result<PortGraph> {
        pg_parallel(a, b)
    }

    fn connect(&self, pair: &LabelPair, s: &PortGraph) -> Result<PortGraph> {
        pg_connect(pair, s)
    }

    fn systems_equal(&self, a: &PortGraph, b: &PortGraph) -> Result<bool> {
        Ok(a == b)
    }

    fn render(&self, s: &PortGraph) -> String {
        s.to_string()
    }
}
