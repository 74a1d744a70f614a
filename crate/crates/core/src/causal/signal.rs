//! Translation to the signal view and the strict-causality check it
//! supports: a signal is a partial function from `(interface, time)` points
//! to values, and a system is strictly causal when its output at a point
//! depends only on the signal restricted strictly below that point.

use std::collections::BTreeMap;

use crate::functional::FunctionalSystem;
use crate::order::{Assignment, Label, Rat, TimedValue};
use crate::{Error, Result};

/// A partial function `(interface, time) → value`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Signal {
    points: BTreeMap<(Label, Rat), i64>,
}

impl Signal {
    pub fn points(&self) -> impl Iterator<Item = (&(Label, Rat), &i64)> {
        self.points.iter()
    }

    pub fn at(&self, interface: &Label, time: &Rat) -> Option<i64> {
        self.points.get(&(interface.clone(), time.clone())).copied()
    }

    /// Restriction to the points strictly before `time` (the interface
    /// component of a point never orders points; only time does).
    pub fn strictly_before(&self, time: &Rat) -> Signal {
        Signal {
            points: self
                .points
                .iter()
                .filter(|((_, t), _)| t < time)
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        }
    }
}

/// Views a tuple of event histories as a signal. Fails with `NotAFunction`
/// if two events on one interface share a time (well-ordered histories
/// cannot, so this only triggers on malformed input).
pub fn to_signal(x: &Assignment) -> Result<Signal> {
    let mut points = BTreeMap::new();
    for (interface, value) in x {
        let history = value.as_events().ok_or_else(|| Error::TransferFailed {
            detail: format!("value at {interface} is not an event history"),
        })?;
        for TimedValue { time, value } in history.events() {
            if points
                .insert((interface.clone(), time.clone()), *value)
                .is_some()
            {
                return Err(Error::NotAFunction {
                    at: format!("({interface}, {time})"),
                });
            }
        }
    }
    Ok(Signal { points })
}

#[derive(Clone, Debug)]
pub struct StrictCausalViolation {
    pub pair_index: usize,
    pub output: Label,
    pub time: Rat,
}

/// Sampled evidence for strict causality; verdicts agree with the causal
/// check on the same sample pairs.
#[derive(Clone, Debug, Default)]
pub struct StrictCausalReport {
    pub checked_pairs: usize,
    pub checked_points: usize,
    pub violations: Vec<StrictCausalViolation>,
}

impl StrictCausalReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks on each sampled pair that the translated system's output at
/// every point `(o, t)` depends only on the input signal strictly below
/// `t`: whenever the two input signals agree below `t`, the outputs at
/// `(o, t)` must agree.
pub fn strictly_causal_check(
    s: &FunctionalSystem,
    pairs: &[(Assignment, Assignment)],
) -> Result<StrictCausalReport> {
    let mut report = StrictCausalReport::default();
    for (pair_index, (x, x_prime)) in pairs.iter().enumerate() {
        let sigma = to_signal(x)?;
        let sigma_prime = to_signal(x_prime)?;
        let out = to_signal(&s.evaluate(x)?)?;
        let out_prime = to_signal(&s.evaluate(x_prime)?)?;
        report.checked_pairs += 1;

        // candidate points: every (o, t) where either output is defined
        let mut candidates: Vec<(Label, Rat)> = out
            .points()
            .chain(out_prime.points())
            .map(|(k, _)| k.clone())
            .collect();
        candidates.sort();
        candidates.dedup();
        for (o, t) in candidates {
            report.checked_points += 1;
            if sigma.strictly_before(&t) == sigma_prime.strictly_before(&t)
                && out.at(&o, &t) != out_prime.at(&o, &t)
            {
                report.violations.push(StrictCausalViolation {
                    pair_index,
                    output: o,
                    time: t,
                });
            }
        }
    }
    Ok(report)
}
