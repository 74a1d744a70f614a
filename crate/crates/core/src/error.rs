use crate::algebra::LabelPair;
use crate::order::{DomainId, Element, Label};

/// Crate-wide error type. Variants mirror the failure modes of the
/// individual modules; `FuelExhausted` doubles as a propagated engine
/// status when a caller needed convergence.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain mismatch: expected `{expected}`, found `{found}`")]
    DomainMismatch { expected: DomainId, found: DomainId },

    #[error("value {value} is not an element of domain `{domain}`")]
    NotInDomain { domain: DomainId, value: String },

    #[error("not a chain: {left} and {right} are incomparable")]
    NotAChain { left: String, right: String },

    #[error("empty chain has no infimum")]
    EmptyChain,

    #[error("no supremum in `{domain}`: {reason}")]
    NoSupremum { domain: DomainId, reason: String },

    #[error("no infimum in `{domain}`: {reason}")]
    NoInfimum { domain: DomainId, reason: String },

    #[error("domain `{domain}` has no least element")]
    NoLeastElement { domain: DomainId },

    #[error("domain `{domain}` has no enumeration")]
    EnumerationUnavailable { domain: DomainId },

    #[error("enumeration of `{domain}` has {size} elements, above the bound of {bound}")]
    EnumerationTooLarge {
        domain: DomainId,
        size: u128,
        bound: u128,
    },

    #[error("fuel exhausted after {steps} steps; last iterate {last}")]
    FuelExhausted { last: Box<Element>, steps: u64 },

    #[error("set is not well-ordered: {detail}")]
    NotWellOrdered { detail: String },

    #[error("interface labels clash: {labels:?}")]
    LabelClash { labels: Vec<Label> },

    #[error("box name `{name}` already present")]
    BoxNameClash { name: String },

    #[error("cannot connect {pair}: {reason}")]
    NotConnectable { pair: LabelPair, reason: String },

    #[error("evaluation failed at {path}: {source}")]
    EvalFailed {
        path: String,
        #[source]
        source: Box<Error>,
    },

    #[error("witness failed; checks that did not hold: {failed:?}")]
    WitnessFailed { failed: Vec<String> },

    #[error("no fixed point for connecting {pair} under context {context}")]
    NoFixedPoint { pair: LabelPair, context: String },

    #[error("chooser returned {chosen}, which is not a fixed point for {pair}")]
    ChooserUnsound { pair: LabelPair, chosen: String },

    #[error("fixed-point set for {pair} has no least element (minimal: {minimal:?})")]
    NoLeastFixedPoint { pair: LabelPair, minimal: Vec<String> },

    #[error("signature mismatch: {detail}")]
    SignatureMismatch { detail: String },

    #[error("malformed interface pairing: {detail}")]
    MalformedPairing { detail: String },

    #[error("process `{block}` exceeded the step budget of {budget}")]
    StepDivergence { block: String, budget: u64 },

    #[error("port mismatch: {detail}")]
    PortMismatch { detail: String },

    #[error("not a function: two events share {at}")]
    NotAFunction { at: String },

    #[error("network is malformed: {detail}")]
    MalformedNetwork { detail: String },

    #[error("transfer function failed: {detail}")]
    TransferFailed { detail: String },

    #[error("invalid order relation: {detail}")]
    InvalidOrder { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
