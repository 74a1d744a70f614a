use std::collections::{BTreeMap, BTreeSet};

use super::{ProcessBlock, SeqDomain};
use crate::fixpoint::{FixpointStatus, Fuel};
use crate::order::Label;
use crate::{Error, Result};

/// A directed channel from an output port to an input port.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Channel {
    pub from_block: String,
    pub from_port: String,
    pub to_block: String,
    pub to_port: String,
}

impl Channel {
    pub fn label(&self) -> String {
        format!(
            "{}.{}->{}.{}",
            self.from_block, self.from_port, self.to_block, self.to_port
        )
    }
}

/// Named process blocks wired by channels. Input ports not driven by a
/// channel are external inputs (labeled `block.port`); output ports not
/// feeding a channel are external outputs.
#[derive(Clone, Debug)]
pub struct Network {
    pub domain: SeqDomain,
    pub blocks: BTreeMap<String, ProcessBlock>,
    pub channels: Vec<Channel>,
}

impl Network {
    pub fn new(domain: SeqDomain) -> Self {
        Network {
            domain,
            blocks: BTreeMap::new(),
            channels: Vec::new(),
        }
    }

    pub fn add_block(&mut self, instance: impl Into<String>, block: ProcessBlock) -> Result<()> {
        let instance = instance.into();
        if self.blocks.contains_key(&instance) {
            return Err(Error::BoxNameClash { name: instance });
        }
        self.blocks.insert(instance, block);
        Ok(())
    }

    pub fn add_channel(&mut self, channel: Channel) -> Result<()> {
        self.validate_endpoint(&channel.from_block, &channel.from_port, false)?;
        self.validate_endpoint(&channel.to_block, &channel.to_port, true)?;
        for existing in &self.channels {
            if existing.to_block == channel.to_block && existing.to_port == channel.to_port {
                return Err(Error::MalformedNetwork {
                    detail: format!(
                        "input {}.{} is driven twice",
                        channel.to_block, channel.to_port
                    ),
                });
            }
            if existing.from_block == channel.from_block
                && existing.from_port == channel.from_port
            {
                return Err(Error::MalformedNetwork {
                    detail: format!(
                        "output {}.{} feeds two channels; insert a duplicator block",
                        channel.from_block, channel.from_port
                    ),
                });
            }
        }
        self.channels.push(channel);
        Ok(())
    }

    fn validate_endpoint(&self, block: &str, port: &str, input: bool) -> Result<()> {
        let b = self.blocks.get(block).ok_or_else(|| Error::MalformedNetwork {
            detail: format!("unknown block `{block}`"),
        })?;
        let ports = if input { &b.inputs } else { &b.outputs };
        if !ports.iter().any(|p| p == port) {
            return Err(Error::MalformedNetwork {
                detail: format!(
                    "block `{block}` has no {} port `{port}`",
                    if input { "input" } else { "output" }
                ),
            });
        }
        Ok(())
    }

    fn channel_into(&self, block: &str, port: &str) -> Option<usize> {
        self.channels
            .iter()
            .position(|c| c.to_block == block && c.to_port == port)
    }

    fn channel_out_of(&self, block: &str, port: &str) -> Option<usize> {
        self.channels
            .iter()
            .position(|c| c.from_block == block && c.from_port == port)
    }

    /// External input labels, `block.port` for every undriven input port.
    pub fn external_inputs(&self) -> Vec<Label> {
        let mut out = Vec::new();
        for (name, block) in &self.blocks {
            for port in &block.inputs {
                if self.channel_into(name, port).is_none() {
                    out.push(Label::new(format!("{name}.{port}")));
                }
            }
        }
        out
    }

    /// External output labels, `block.port` for every unwired output port.
    pub fn external_outputs(&self) -> Vec<Label> {
        let mut out = Vec::new();
        for (name, block) in &self.blocks {
            for port in &block.outputs {
                if self.channel_out_of(name, port).is_none() {
                    out.push(Label::new(format!("{name}.{port}")));
                }
            }
        }
        out
    }
}

/// One channel or external-output record: the computed history and whether
/// it was cut at the domain's length bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelRecord {
    pub history: Vec<i64>,
    pub truncated: bool,
}

#[derive(Clone, Debug)]
pub struct NetworkRun {
    pub status: FixpointStatus,
    pub rounds: u64,
    /// Keyed by the canonical channel label `from.port->to.port`.
    pub channels: BTreeMap<String, ChannelRecord>,
    /// External outputs keyed by `block.port`.
    pub outputs: BTreeMap<Label, ChannelRecord>,
    /// Channel-state snapshot after every round, for chain diagnostics.
    pub round_states: Vec<Vec<Vec<i64>>>,
}

/// Computes the joint least fixed point of all channel histories by Kleene
/// iteration over the product domain: every round reruns each block on the
/// current channel state (blocks are scheduled in name order, which the
/// determinism of the least fixed point makes unobservable), until the
/// state repeats or `fuel.max_steps` rounds have run.
pub fn run_network(
    net: &Network,
    ext_inputs: &BTreeMap<Label, Vec<i64>>,
    fuel: &Fuel,
) -> Result<NetworkRun> {
    let externals: BTreeSet<Label> = net.external_inputs().into_iter().collect();
    for label in ext_inputs.keys() {
        if !externals.contains(label) {
            return Err(Error::MalformedNetwork {
                detail: format!("input binding {label} does not name an undriven input port"),
            });
        }
    }
    for (label, seq) in ext_inputs {
        if !net.domain.contains_seq(seq) {
            return Err(Error::NotInDomain {
                domain: net.domain.order().id().clone(),
                value: format!("external input {label}"),
            });
        }
    }

    let mut state: Vec<Vec<i64>> = vec![Vec::new(); net.channels.len()];
    let mut truncated: Vec<bool> = vec![false; net.channels.len()];
    let mut round_states = vec![state.clone()];
    let mut rounds = 0u64;
    let mut converged = false;

    let run_blocks = |state: &Vec<Vec<i64>>| -> Result<BTreeMap<String, super::BlockRun>> {
        let mut runs = BTreeMap::new();
        for (name, block) in &net.blocks {
            let mut inputs: BTreeMap<String, Vec<i64>> = BTreeMap::new();
            for port in &block.inputs {
                let history = match net.channel_into(name, port) {
                    Some(idx) => state[idx].clone(),
                    None => ext_inputs
                        .get(&Label::new(format!("{name}.{port}")))
                        .cloned()
                        .unwrap_or_default(),
                };
                inputs.insert(port.clone(), history);
            }
            runs.insert(name.clone(), block.run(&inputs, &net.domain)?);
        }
        Ok(runs)
    };

    let mut runs = run_blocks(&state)?;
    while rounds < fuel.max_steps {
        rounds += 1;
        let mut next = state.clone();
        let mut next_truncated = truncated.clone();
        for (idx, channel) in net.channels.iter().enumerate() {
            let run = &runs[&channel.from_block];
            let produced = run
                .outputs
                .get(&channel.from_port)
                .cloned()
                .unwrap_or_default();
            let (cut, was_cut) = net.domain.truncate(produced);
            next[idx] = cut;
            next_truncated[idx] =
                was_cut || run.truncated.contains(&channel.from_port);
        }
        let stable = next == state;
        state = next;
        truncated = next_truncated;
        round_states.push(state.clone());
        runs = run_blocks(&state)?;
        if stable {
            converged = true;
            break;
        }
    }

    let mut channels = BTreeMap::new();
    for (idx, channel) in net.channels.iter().enumerate() {
        channels.insert(
            channel.label(),
            ChannelRecord {
                history: state[idx].clone(),
                truncated: truncated[idx],
            },
        );
    }
    let mut outputs = BTreeMap::new();
    for (name, block) in &net.blocks {
        let run = &runs[name];
        for port in &block.outputs {
            if net.channel_out_of(name, port).is_none() {
                let produced = run.outputs.get(port).cloned().unwrap_or_default();
                let (cut, was_cut) = net.domain.truncate(produced);
                outputs.insert(
                    Label::new(format!("{name}.{port}")),
                    ChannelRecord {
                        history: cut,
                        truncated: was_cut || run.truncated.contains(port),
                    },
                );
            }
        }
    }
    Ok(NetworkRun {
        status: if converged {
            FixpointStatus::Converged
        } else {
            FixpointStatus::FuelExhausted
        },
        rounds,
        channels,
        outputs,
        round_states,
    })
}
