//! Kahn networks over prefix-ordered token sequences.
//!
//! Processes are deterministic sequential programs with blocking reads, so
//! the history functions they induce are monotone (and, reading finitely
//! much input before each output, continuous) by construction. A network
//! runs to the least fixed point of all channel histories by Kleene
//! iteration over the product domain.

mod algebra;
mod block;
mod domain;
mod network;

pub use algebra::{kahn_algebra, kahn_trials, KahnFlavor};
pub use block::{
    add_block, delay_block, dup_block, id_block, inc_block, lift_named, lift_process, BlockRun,
    ProcessBlock, ProcessIo, Stop, DEFAULT_STEP_BUDGET,
};
pub use domain::{make_seq_domain, SeqDomain};
pub use network::{run_network, Channel, ChannelRecord, Network, NetworkRun};
