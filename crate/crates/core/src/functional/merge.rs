//! Merged (undirected) interfaces: each interface of a merged system is a
//! pair of one input and one output of the underlying functional system,
//! and connecting two merged interfaces performs both directed connections.

use std::collections::BTreeSet;

use super::{fconnect, fpar, Chooser, FunctionalSystem};
use crate::order::Label;
use crate::{Error, Result};

/// Directed input half of a merged interface.
pub fn input_label(interface: &Label) -> Label {
    Label::new(format!("{interface}.in"))
}

/// Directed output half of a merged interface.
pub fn output_label(interface: &Label) -> Label {
    Label::new(format!("{interface}.out"))
}

/// A system whose interfaces are undirected: interface `l` stands for the
/// input `l.in` and the output `l.out` of the underlying system.
#[derive(Clone, Debug)]
pub struct MergedSystem {
    system: FunctionalSystem,
    interfaces: BTreeSet<Label>,
    chooser: Chooser,
}

/// Wraps a functional system whose inputs are exactly `{l.in}` and outputs
/// exactly `{l.out}` for some interface set `{l}`.
pub fn merge_interfaces(system: FunctionalSystem, chooser: Chooser) -> Result<MergedSystem> {
    let mut interfaces = BTreeSet::new();
    for input in system.signature().inputs() {
        let base = input
            .as_str()
            .strip_suffix(".in")
            .ok_or_else(|| Error::MalformedPairing {
                detail: format!("input {input} is not of the form `<interface>.in`"),
            })?;
        interfaces.insert(Label::new(base));
    }
    let mut paired_outputs = BTreeSet::new();
    for output in system.signature().outputs() {
        let base = output
            .as_str()
            .strip_suffix(".out")
            .ok_or_else(|| Error::MalformedPairing {
                detail: format!("output {output} is not of the form `<interface>.out`"),
            })?;
        paired_outputs.insert(Label::new(base));
    }
    if interfaces != paired_outputs {
        return Err(Error::MalformedPairing {
            detail: format!(
                "input interfaces {{{}}} and output interfaces {{{}}} do not pair up",
                interfaces
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                paired_outputs
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        });
    }
    Ok(MergedSystem {
        system,
        interfaces,
        chooser,
    })
}

impl MergedSystem {
    pub fn interfaces(&self) -> &BTreeSet<Label> {
        &self.interfaces
    }

    pub fn inner(&self) -> &FunctionalSystem {
        &self.system
    }

    /// Parallel composition of merged systems.
    pub fn par(&self, other: &MergedSystem) -> Result<MergedSystem> {
        merge_interfaces(fpar(&self.system, &other.system)?, self.chooser.clone())
    }

    /// Undirected connection of interfaces `a` and `b`: connects input
    /// `a.in` to output `b.out`, then input `b.in` to output `a.out`.
    /// Self-pairs are rejected.
    pub fn connect(&self, a: &Label, b: &Label) -> Result<MergedSystem> {
        if a == b {
            return Err(Error::MalformedPairing {
                detail: format!("self-pair {a} is not connectable"),
            });
        }
        for l in [a, b] {
            if !self.interfaces.contains(l) {
                return Err(Error::MalformedPairing {
                    detail: format!("no interface {l}"),
                });
            }
        }
        let first = fconnect(
            &input_label(a),
            &output_label(b),
            &self.system,
            &self.chooser,
        )?;
        let second = fconnect(&input_label(b), &output_label(a), &first, &self.chooser)?;
        merge_interfaces(second, self.chooser.clone())
    }
}
