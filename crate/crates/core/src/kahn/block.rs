use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::SeqDomain;
use crate::functional::{FunctionalSystem, Signature};
use crate::order::{Label, Value};
use crate::{Error, Result};

/// Why a process run stopped early.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stop {
    /// A read requested a token past the end of the available input; the
    /// process blocks and the run ends. This is the normal way a process
    /// quiesces on finite inputs.
    Blocked,
    /// The per-run operation budget was exceeded.
    OverBudget,
}

pub const DEFAULT_STEP_BUDGET: u64 = 100_000;

/// The capability object a process program runs against: cursor-ordered
/// reads per input port and append-only emission per output port. Reads
/// consume tokens in order and emitted tokens are never retracted, which is
/// what makes the induced history function monotone.
pub struct ProcessIo<'a> {
    inputs: &'a BTreeMap<String, Vec<i64>>,
    cursors: BTreeMap<String, usize>,
    outputs: BTreeMap<String, Vec<i64>>,
    truncated: BTreeSet<String>,
    max_len: Option<usize>,
    ops: u64,
    budget: u64,
}

impl<'a> ProcessIo<'a> {
    fn charge(&mut self) -> std::result::Result<(), Stop> {
        self.ops += 1;
        if self.ops > self.budget {
            Err(Stop::OverBudget)
        } else {
            Ok(())
        }
    }

    /// Next token on `port`, blocking (ending the run) when the input
    /// history is exhausted.
    pub fn read(&mut self, port: &str) -> std::result::Result<i64, Stop> {
        self.charge()?;
        let cursor = self.cursors.entry(port.to_string()).or_insert(0);
        let history = self
            .inputs
            .get(port)
            .unwrap_or_else(|| panic!("process read from undeclared port `{port}`"));
        match history.get(*cursor) {
            Some(tok) => {
                *cursor += 1;
                Ok(*tok)
            }
            None => Err(Stop::Blocked),
        }
    }

    /// Appends a token to `port`. Tokens beyond the domain's length bound
    /// are dropped and the port is flagged as truncated.
    pub fn emit(&mut self, port: &str, token: i64) -> std::result::Result<(), Stop> {
        self.charge()?;
        let out = self.outputs.entry(port.to_string()).or_default();
        if self.max_len.map_or(false, |l| out.len() >= l) {
            self.truncated.insert(port.to_string());
        } else {
            out.push(token);
        }
        Ok(())
    }
}

type Program = dyn Fn(&mut ProcessIo) -> std::result::Result<(), Stop> + Send + Sync;

/// A deterministic sequential process with blocking reads.
#[derive(Clone)]
pub struct ProcessBlock {
    pub name: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub initial_outputs: BTreeMap<String, Vec<i64>>,
    program: Arc<Program>,
}

impl fmt::Debug for ProcessBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ProcessBlock({} : {:?} -> {:?})",
            self.name, self.inputs, self.outputs
        )
    }
}

/// Result of running a block to quiescence on finite inputs.
#[derive(Clone, Debug)]
pub struct BlockRun {
    pub outputs: BTreeMap<String, Vec<i64>>,
    pub truncated: BTreeSet<String>,
    pub ops: u64,
}

impl ProcessBlock {
    pub fn new(
        name: impl Into<String>,
        inputs: &[&str],
        outputs: &[&str],
        program: impl Fn(&mut ProcessIo) -> std::result::Result<(), Stop> + Send + Sync + 'static,
    ) -> Self {
        ProcessBlock {
            name: name.into(),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            outputs: outputs.iter().map(|s| s.to_string()).collect(),
            initial_outputs: BTreeMap::new(),
            program: Arc::new(program),
        }
    }

    pub fn with_initial_outputs(mut self, port: &str, seed: Vec<i64>) -> Self {
        self.initial_outputs.insert(port.to_string(), seed);
        self
    }

    /// Runs the program from scratch against the given finite input
    /// histories: seeds initial outputs, then executes until the program
    /// halts or blocks. Replaying on extended inputs reproduces the same
    /// output prefix and possibly more.
    pub fn run(&self, inputs: &BTreeMap<String, Vec<i64>>, domain: &SeqDomain) -> Result<BlockRun> {
        let mut io = ProcessIo {
            inputs,
            cursors: BTreeMap::new(),
            outputs: self
                .outputs
                .iter()
                .map(|p| (p.clone(), Vec::new()))
                .collect(),
            truncated: BTreeSet::new(),
            max_len: domain.max_len(),
            ops: 0,
            budget: DEFAULT_STEP_BUDGET,
        };
        for (port, seed) in &self.initial_outputs {
            for tok in seed {
                match io.emit(port, *tok) {
                    Ok(()) => {}
                    Err(Stop::Blocked) => unreachable!("emit never blocks"),
                    Err(Stop::OverBudget) => {
                        return Err(Error::StepDivergence {
                            block: self.name.clone(),
                            budget: DEFAULT_STEP_BUDGET,
                        })
                    }
                }
            }
        }
        match (self.program)(&mut io) {
            Ok(()) | Err(Stop::Blocked) => Ok(BlockRun {
                outputs: io.outputs,
                truncated: io.truncated,
                ops: io.ops,
            }),
            Err(Stop::OverBudget) => Err(Error::StepDivergence {
                block: self.name.clone(),
                budget: DEFAULT_STEP_BUDGET,
            }),
        }
    }
}

/// Lifts a block to a functional system: the k-th input/output label names
/// the k-th declared port. The induced transfer is monotone by the blocking
/// read discipline; tests sample-check it in addition.
pub fn lift_process(
    block: &ProcessBlock,
    input_labels: &[Label],
    output_labels: &[Label],
    domain: &SeqDomain,
) -> Result<FunctionalSystem> {
    if input_labels.len() != block.inputs.len() || output_labels.len() != block.outputs.len() {
        return Err(Error::PortMismatch {
            detail: format!(
                "block `{}` has {} inputs and {} outputs, got {} and {} labels",
                block.name,
                block.inputs.len(),
                block.outputs.len(),
                input_labels.len(),
                output_labels.len()
            ),
        });
    }
    let signature = Signature::new(input_labels.to_vec(), output_labels.to_vec())?;
    let in_ports: Vec<(Label, String)> = input_labels
        .iter()
        .cloned()
        .zip(block.inputs.iter().cloned())
        .collect();
    let out_ports: Vec<(Label, String)> = output_labels
        .iter()
        .cloned()
        .zip(block.outputs.iter().cloned())
        .collect();
    let block = block.clone();
    let domain_handle = domain.clone();
    Ok(FunctionalSystem::new(
        signature,
        domain.order(),
        move |x| {
            let mut port_inputs: BTreeMap<String, Vec<i64>> = BTreeMap::new();
            for (label, port) in &in_ports {
                let seq = x
                    .get(label)
                    .and_then(|v| v.as_seq())
                    .ok_or_else(|| Error::TransferFailed {
                        detail: format!("input {label} is not a token sequence"),
                    })?;
                port_inputs.insert(port.clone(), seq.to_vec());
            }
            let run = block.run(&port_inputs, &domain_handle)?;
            let mut out = std::collections::BTreeMap::new();
            for (label, port) in &out_ports {
                let history = run.outputs.get(port).cloned().unwrap_or_default();
                out.insert(label.clone(), Value::Seq(history));
            }
            Ok(out)
        },
    ))
}

// ---- stdlib blocks ----

/// Copies its input to its output.
pub fn id_block(name: &str) -> ProcessBlock {
    ProcessBlock::new(name, &["in"], &["out"], |io| loop {
        let t = io.read("in")?;
        io.emit("out", t)?;
    })
}

/// Copies every input token to both outputs.
pub fn dup_block(name: &str) -> ProcessBlock {
    ProcessBlock::new(name, &["in"], &["out1", "out2"], |io| loop {
        let t = io.read("in")?;
        io.emit("out1", t)?;
        io.emit("out2", t)?;
    })
}

/// Adds `delta` to every token, modulo `modulus` (keeps tokens inside
/// alphabets of the form `0..modulus`).
pub fn inc_block(name: &str, delta: i64, modulus: i64) -> ProcessBlock {
    assert!(modulus > 0);
    ProcessBlock::new(name, &["in"], &["out"], move |io| loop {
        let t = io.read("in")?;
        io.emit("out", (t + delta).rem_euclid(modulus))?;
    })
}

/// Emits the pointwise sum (mod `modulus`) of its two inputs.
pub fn add_block(name: &str, modulus: i64) -> ProcessBlock {
    assert!(modulus > 0);
    ProcessBlock::new(name, &["in1", "in2"], &["out"], move |io| loop {
        let a = io.read("in1")?;
        let b = io.read("in2")?;
        io.emit("out", (a + b).rem_euclid(modulus))?;
    })
}

/// Emits the seed tokens first, then copies its input.
pub fn delay_block(name: &str, seed: Vec<i64>) -> ProcessBlock {
    ProcessBlock::new(name, &["in"], &["out"], |io| loop {
        let t = io.read("in")?;
        io.emit("out", t)?;
    })
    .with_initial_outputs("out", seed)
}

/// Lifts a stdlib block with labels `<name>.<port>`.
pub fn lift_named(block: &ProcessBlock, domain: &SeqDomain) -> Result<FunctionalSystem> {
    let input_labels: Vec<Label> = block
        .inputs
        .iter()
        .map(|p| Label::new(format!("{}.{}", block.name, p)))
        .collect();
    let output_labels: Vec<Label> = block
        .outputs
        .iter()
        .map(|p| Label::new(format!("{}.{}", block.name, p)))
        .collect();
    lift_process(block, &input_labels, &output_labels, domain)
}
