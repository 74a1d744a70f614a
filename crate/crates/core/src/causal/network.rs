//! Joint min-extension execution of a causal network: all channel
//! histories are computed together, one least new event at a time, then the
//! result is re-checked to be a fixed point of every channel equation.

use std::collections::BTreeMap;

use super::blocks::CausalBlock;
use crate::fixpoint::{FixpointStatus, Fuel};
use crate::kahn::Channel;
use crate::order::{Assignment, EventHistory, Label, Rat, TimedValue, Value};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct CausalNetwork {
    pub blocks: BTreeMap<String, CausalBlock>,
    pub channels: Vec<Channel>,
}

impl CausalNetwork {
    pub fn new() -> Self {
        CausalNetwork {
            blocks: BTreeMap::new(),
            channels: Vec::new(),
        }
    }

    pub fn add_block(&mut self, block: CausalBlock) -> Result<()> {
        if self.blocks.contains_key(&block.name) {
            return Err(Error::BoxNameClash {
                name: block.name.clone(),
            });
        }
        self.blocks.insert(block.name.clone(), block);
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
                        "output {}.{} feeds two channels",
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

impl Default for CausalNetwork {
    fn default() -> Self {
        CausalNetwork::new()
    }
}

#[derive(Clone, Debug)]
pub struct CausalNetworkRun {
    pub status: FixpointStatus,
    pub steps: u64,
    /// Channel histories keyed by the canonical channel label.
    pub channels: BTreeMap<String, EventHistory>,
    pub outputs: BTreeMap<Label, EventHistory>,
}

/// Computes the joint fixed point of all channel histories. Each step
/// recomputes every block on the current state and appends, per channel,
/// the least new event among that channel's pending outputs — but only for
/// channels whose least new event has the globally minimal time, so the
/// extension is least overall. Equal times on different channels are
/// incomparable and extend together. On convergence the state is verified
/// to reproduce itself.
pub fn run_causal_network(
    net: &CausalNetwork,
    ext_inputs: &BTreeMap<Label, EventHistory>,
    fuel: &Fuel,
) -> Result<CausalNetworkRun> {
    let externals = net.external_inputs();
    for label in ext_inputs.keys() {
        if !externals.contains(label) {
            return Err(Error::MalformedNetwork {
                detail: format!("input binding {label} does not name an undriven input port"),
            });
        }
    }

    let eval_blocks = |state: &Vec<EventHistory>| -> Result<BTreeMap<String, Assignment>> {
        let mut outs = BTreeMap::new();
        for (name, block) in &net.blocks {
            let mut x = Assignment::new();
            for port in &block.inputs {
                let label = Label::new(format!("{name}.{port}"));
                let history = match net.channel_into(name, port) {
                    Some(idx) => state[idx].clone(),
                    None => ext_inputs.get(&label).cloned().unwrap_or_default(),
                };
                x.insert(label, Value::Events(history));
            }
            outs.insert(name.clone(), block.system.evaluate(&x)?);
        }
        Ok(outs)
    };

    let produced = |outs: &BTreeMap<String, Assignment>, idx: usize| -> Result<EventHistory> {
        let channel = &net.channels[idx];
        let label = Label::new(format!("{}.{}", channel.from_block, channel.from_port));
        outs[&channel.from_block]
            .get(&label)
            .and_then(|v| v.as_events())
            .cloned()
            .ok_or_else(|| Error::TransferFailed {
                detail: format!("block {} produced no history at {label}", channel.from_block),
            })
    };

    let mut state: Vec<EventHistory> = vec![EventHistory::empty(); net.channels.len()];
    let mut steps = 0u64;
    let mut converged = false;
    let mut outs = eval_blocks(&state)?;
    while steps < fuel.max_steps {
        steps += 1;
        // least new event per channel
        let mut pending: Vec<(usize, TimedValue)> = Vec::new();
        for idx in 0..net.channels.len() {
            let image = produced(&outs, idx)?;
            let new: Vec<TimedValue> = image
                .events()
                .filter(|e| !state[idx].contains(e))
                .cloned()
                .collect();
            if let Some(least) = least_event(&new)? {
                pending.push((idx, least));
            }
        }
        let global_min: Option<Rat> = pending.iter().map(|(_, e)| e.time.clone()).min();
        let min_time = match global_min {
            None => {
                converged = true;
                break;
            }
            Some(t) => t,
        };
        for (idx, event) in pending {
            if event.time == min_time {
                state[idx] = state[idx].extended(event)?;
            }
        }
        outs = eval_blocks(&state)?;
    }

    if converged {
        // convergence means no channel gained events; re-check fixedness
        for idx in 0..net.channels.len() {
            let image = produced(&outs, idx)?;
            if image != state[idx] {
                return Err(Error::NotWellOrdered {
                    detail: format!(
                        "channel {} stabilized at {} but the blocks produce {}",
                        net.channels[idx].label(),
                        state[idx],
                        image
                    ),
                });
            }
        }
    }

    let mut channels = BTreeMap::new();
    for (idx, channel) in net.channels.iter().enumerate() {
        channels.insert(channel.label(), state[idx].clone());
    }
    let mut outputs = BTreeMap::new();
    for (name, block) in &net.blocks {
        for port in &block.outputs {
            if net.channel_out_of(name, port).is_none() {
                let label = Label::new(format!("{name}.{port}"));
                let history = outs[name]
                    .get(&label)
                    .and_then(|v| v.as_events())
                    .cloned()
                    .unwrap_or_default();
                outputs.insert(label, history);
            }
        }
    }
    Ok(CausalNetworkRun {
        status: if converged {
            FixpointStatus::Converged
        } else {
            FixpointStatus::FuelExhausted
        },
        steps,
        channels,
        outputs,
    })
}

fn least_event(events: &[TimedValue]) -> Result<Option<TimedValue>> {
    let least = match events.iter().min_by(|a, b| a.time.cmp(&b.time)) {
        None => return Ok(None),
        Some(e) => e,
    };
    if events
        .iter()
        .any(|e| e.time == least.time && e != least)
    {
        return Err(Error::NotWellOrdered {
            detail: format!("two new channel events share time {}", least.time),
        });
    }
    Ok(Some(least.clone()))
}
