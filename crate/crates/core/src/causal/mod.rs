//! Causal timed-event systems: histories are finite well-ordered sets of
//! `(value, time)` events with exact rational timestamps, a system is
//! causal when every change in an output history is strictly preceded by a
//! change in an input history, and interface connection selects the unique
//! fixed point of the feedback by min-extension iteration.

mod blocks;
mod network;
mod order;
mod signal;
mod system;

pub use blocks::{
    adder_system, clock_system, constant_system, delay_system, harmonic_outputs,
    harmonic_system, seeded_echo_system, zero_delay_identity, CausalBlock,
};
pub use network::{run_causal_network, CausalNetwork, CausalNetworkRun};
pub use order::{event_atom_order, event_order, event_order_over};
pub use signal::{strictly_causal_check, to_signal, Signal, StrictCausalReport};
pub use system::{
    causal_algebra, causal_trials, cconnect, check_causal, CausalOrigin, CausalReport,
    CausalSystem, CausalViolation,
};

pub use crate::order::{EventHistory, TimedValue};
