//! Shipped causal blocks. Every constructor that introduces a strictly
//! positive delay yields a causal system by construction; the zero-delay
//! identity is the deliberate counterexample.

use super::order::event_order;
use super::system::{CausalOrigin, CausalSystem};
use crate::functional::{FunctionalSystem, Signature};
use crate::order::{EventHistory, Label, Rat, TimedValue, Value};
use crate::{Error, Result};

/// A causal system together with its port names; interface labels are
/// `<instance>.<port>`.
#[derive(Clone, Debug)]
pub struct CausalBlock {
    pub name: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub system: CausalSystem,
}

fn label(name: &str, port: &str) -> Label {
    Label::new(format!("{name}.{port}"))
}

fn history_arg(x: &crate::order::Assignment, l: &Label) -> Result<EventHistory> {
    x.get(l)
        .and_then(|v| v.as_events())
        .cloned()
        .ok_or_else(|| Error::TransferFailed {
            detail: format!("input {l} is not an event history"),
        })
}

fn make_block(
    name: &str,
    inputs: &[&str],
    outputs: &[&str],
    origin: CausalOrigin,
    transfer: impl Fn(&crate::order::Assignment) -> Result<crate::order::Assignment>
        + Send
        + Sync
        + 'static,
) -> CausalBlock {
    let signature = Signature::new(
        inputs.iter().map(|p| label(name, p)),
        outputs.iter().map(|p| label(name, p)),
    )
    .expect("block ports are distinct");
    let system = FunctionalSystem::new(signature, event_order(), transfer);
    CausalBlock {
        name: name.to_string(),
        inputs: inputs.iter().map(|s| s.to_string()).collect(),
        outputs: outputs.iter().map(|s| s.to_string()).collect(),
        system: CausalSystem::new(system, origin),
    }
}

/// Shifts every input event by `delta > 0`; events at or past `horizon`
/// are dropped.
pub fn delay_system(name: &str, delta: Rat, horizon: Rat) -> CausalBlock {
    assert!(!delta.is_negative() && delta != Rat::zero(), "delay must be positive");
    let in_label = label(name, "in");
    let out_label = label(name, "out");
    make_block(name, &["in"], &["out"], CausalOrigin::ByConstruction, move |x| {
        let input = history_arg(x, &in_label)?;
        let shifted = EventHistory::new(
            input
                .events()
                .map(|e| TimedValue::new(e.value, &e.time + &delta))
                .filter(|e| e.time < horizon),
        )?;
        Ok([(out_label.clone(), Value::Events(shifted))].into())
    })
}

/// Emits the value `1` at times `0, period, 2·period, …` below `horizon`,
/// ignoring its input.
pub fn clock_system(name: &str, period: Rat, horizon: Rat) -> CausalBlock {
    assert!(!period.is_negative() && period != Rat::zero(), "period must be positive");
    let in_label = label(name, "in");
    let out_label = label(name, "out");
    make_block(name, &["in"], &["out"], CausalOrigin::ByConstruction, move |x| {
        history_arg(x, &in_label)?;
        let mut ticks = Vec::new();
        let mut t = Rat::zero();
        while t < horizon {
            ticks.push(TimedValue::new(1, t.clone()));
            t = &t + &period;
        }
        Ok([(out_label.clone(), Value::Events(EventHistory::new(ticks)?))].into())
    })
}

/// At every input event time `t` (on either input), emits at `t + delta`
/// the sum of all input values received up to and including `t`.
pub fn adder_system(name: &str, delta: Rat, horizon: Rat) -> CausalBlock {
    assert!(!delta.is_negative() && delta != Rat::zero(), "delay must be positive");
    let in1 = label(name, "in1");
    let in2 = label(name, "in2");
    let out_label = label(name, "out");
    make_block(
        name,
        &["in1", "in2"],
        &["out"],
        CausalOrigin::ByConstruction,
        move |x| {
            let a = history_arg(x, &in1)?;
            let b = history_arg(x, &in2)?;
            let mut times: Vec<Rat> = a.times();
            times.extend(b.times());
            times.sort();
            times.dedup();
            let mut events = Vec::new();
            for t in times {
                let sum: i64 = a
                    .events()
                    .chain(b.events())
                    .filter(|e| e.time <= t)
                    .map(|e| e.value)
                    .sum();
                let at = &t + &delta;
                if at < horizon {
                    events.push(TimedValue::new(sum, at));
                }
            }
            Ok([(out_label.clone(), Value::Events(EventHistory::new(events)?))].into())
        },
    )
}

/// Emits `seed`, plus every input event echoed `delta` later, below
/// `horizon`. With its output fed back to its input this is the tick
/// generator.
pub fn seeded_echo_system(name: &str, seed: TimedValue, delta: Rat, horizon: Rat) -> CausalBlock {
    assert!(!delta.is_negative() && delta != Rat::zero(), "delay must be positive");
    let in_label = label(name, "in");
    let out_label = label(name, "out");
    make_block(name, &["in"], &["out"], CausalOrigin::ByConstruction, move |x| {
        let input = history_arg(x, &in_label)?;
        let mut events = vec![seed.clone()];
        events.extend(
            input
                .events()
                .map(|e| TimedValue::new(e.value, &e.time + &delta)),
        );
        let history = EventHistory::new(events.into_iter().filter(|e| e.time < horizon))?;
        Ok([(out_label.clone(), Value::Events(history))].into())
    })
}

/// Ignores its input and always emits the given history.
pub fn constant_system(name: &str, output: EventHistory) -> CausalBlock {
    let in_label = label(name, "in");
    let out_label = label(name, "out");
    make_block(name, &["in"], &["out"], CausalOrigin::ByConstruction, move |x| {
        history_arg(x, &in_label)?;
        Ok([(out_label.clone(), Value::Events(output.clone()))].into())
    })
}

/// Copies `(v, t)` to `(v, t)` — not causal: an output change is never
/// strictly preceded by the input change producing it.
pub fn zero_delay_identity(name: &str) -> CausalBlock {
    let in_label = label(name, "in");
    let out_label = label(name, "out");
    make_block(name, &["in"], &["out"], CausalOrigin::Unchecked, move |x| {
        let input = history_arg(x, &in_label)?;
        Ok([(out_label.clone(), Value::Events(input))].into())
    })
}

/// The truncated harmonic output set `{(1, 1/n) | 1 ≤ n ≤ depth}`.
///
/// The full system of the motivating rejection — outputs at every `1/n`
/// unless an earlier input arrived — has no well-ordered output on empty
/// input: its least element would have to come after infinitely many
/// others. Only truncations are materializable, and their minima
/// `1/depth` keep strictly decreasing as `depth` grows, which is exactly
/// the failure of well-ordering in the limit.
pub fn harmonic_outputs(depth: u32) -> EventHistory {
    EventHistory::new(
        (1..=depth.max(1)).map(|n| TimedValue::new(1, Rat::new(1, n as i64))),
    )
    .expect("harmonic times are distinct")
}

/// Depth-truncated version of the rejected harmonic system: outputs at
/// `1/n` (n ≤ depth) unless an input arrived strictly before `1/n`.
pub fn harmonic_system(name: &str, depth: u32) -> CausalBlock {
    let in_label = label(name, "in");
    let out_label = label(name, "out");
    make_block(name, &["in"], &["out"], CausalOrigin::Unchecked, move |x| {
        let input = history_arg(x, &in_label)?;
        let events = (1..=depth.max(1)).filter_map(|n| {
            let t = Rat::new(1, n as i64);
            if input.events().any(|e| e.time < t) {
                None
            } else {
                Some(TimedValue::new(1, t))
            }
        });
        Ok([(out_label.clone(), Value::Events(EventHistory::new(events)?))].into())
    })
}
