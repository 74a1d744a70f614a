use std::sync::Arc;

use crate::order::{
    Comparison, Enumeration, EventHistory, PartialOrderSpec, TimedValue, Value,
    ENUMERATION_BOUND,
};

pub const EVENT_DOMAIN_ID: &str = "events";

fn compare_histories(a: &EventHistory, b: &EventHistory) -> Comparison {
    if a == b {
        return Comparison::Equal;
    }
    if a.is_initial_segment_of(b) {
        return Comparison::LessEq;
    }
    if b.is_initial_segment_of(a) {
        return Comparison::GreaterEq;
    }
    Comparison::Incomparable
}

/// The initial-segment order on event histories; least element is the empty
/// history.
pub fn event_order() -> PartialOrderSpec {
    PartialOrderSpec::new(EVENT_DOMAIN_ID, |a, b| match (a, b) {
        (Value::Events(x), Value::Events(y)) => compare_histories(x, y),
        _ => Comparison::Incomparable,
    })
    .with_contains(|v| matches!(v, Value::Events(_)))
    .with_least(Value::Events(EventHistory::empty()))
}

/// The order on single timed events, `(v1,t1) ⪯ (v2,t2)` iff `t1 < t2` or
/// the events coincide; events at equal times with different values are
/// incomparable. Atoms are represented as singleton histories.
pub fn event_atom_order() -> PartialOrderSpec {
    PartialOrderSpec::new("event-atom", |a, b| {
        let (x, y) = match (a, b) {
            (Value::Events(x), Value::Events(y)) => (x, y),
            _ => return Comparison::Incomparable,
        };
        match (x.events().next(), y.events().next()) {
            (Some(ex), Some(ey)) => {
                if ex == ey {
                    Comparison::Equal
                } else if ex.precedes(ey) {
                    Comparison::LessEq
                } else if ey.precedes(ex) {
                    Comparison::GreaterEq
                } else {
                    Comparison::Incomparable
                }
            }
            _ => Comparison::Incomparable,
        }
    })
    .with_contains(|v| matches!(v, Value::Events(h) if h.len() == 1))
}

/// The same order, enumerated over the well-ordered subsets of a finite
/// event universe (for brute-force oracles). The domain id is shared with
/// [`event_order`]: this is the same domain, with an enumeration attached.
pub fn event_order_over(universe: &[TimedValue]) -> PartialOrderSpec {
    let n = universe.len();
    assert!(n < 64, "event universe too large to enumerate");
    let size = 1u128 << n;
    let enumeration = if size > ENUMERATION_BOUND {
        Enumeration::TooLarge(size)
    } else {
        let mut subsets = Vec::new();
        for mask in 0..(1u64 << n) {
            let events: Vec<TimedValue> = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, e)| e.clone())
                .collect();
            // skip subsets that are not well-ordered (two events at one time)
            if let Ok(history) = EventHistory::new(events) {
                subsets.push(Value::Events(history));
            }
        }
        subsets.sort();
        subsets.dedup();
        Enumeration::Elements(Arc::new(subsets))
    };
    event_order().with_enumeration(enumeration)
}
