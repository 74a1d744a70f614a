//! Composable system algebras.
//!
//! The crate is organized around a small hierarchy:
//!
//! * [`order`] — partial orders, chains, suprema/infima and sampled
//!   monotonicity checking; the substrate everything else instantiates.
//! * [`fixpoint`] — fuel-bounded fixed-point engines (Kleene iteration,
//!   iteration with limit jumps, min-extension for causal feedback) plus a
//!   brute-force oracle over enumerable domains.
//! * [`algebra`] — the abstract system-algebra contract, a concrete
//!   port-graph model, a composition-order-invariance checker, and the
//!   broadcast-impossibility witness.
//! * [`functional`] — functional systems (signatures plus transfer
//!   functions), parallel composition, interface connection by fixed-point
//!   selection, and interface merging.
//! * [`kahn`] — prefix-ordered token sequences, deterministic process
//!   blocks with blocking reads, and network execution to the least fixed
//!   point.
//! * [`causal`] — timed-event histories with exact rational timestamps,
//!   causality checking, and unique-fixed-point connection.
//!
//! All values are immutable and all operations are deterministic; every
//! public type is `Send + Sync`.

pub mod algebra;
pub mod campaigns;
pub mod causal;
mod error;
pub mod fixpoint;
pub mod functional;
pub mod kahn;
pub mod order;

pub use error::{Error, Result};
