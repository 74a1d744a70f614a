//! Fuel-bounded fixed-point engines.
//!
//! [`kleene_lfp`] iterates `x_{n+1} = f(x_n)` from the least element and
//! stops at the first repeat. [`monotone_lfp`] does the same but may take
//! "limit jumps" — replacing the iterate with the domain's supremum of the
//! computed chain — when a round of fuel runs out, the finite stand-in for
//! iteration through limit ordinals. [`causal_unique_fp`] performs
//! min-extension iteration on well-ordered event histories, adding only the
//! least new output event per step. [`brute_force_fixed_points`] is the
//! independent oracle over enumerable domains.

use crate::order::{Element, EventHistory, PartialOrderSpec, TimedValue, Value};
use crate::{Error, Result};

/// Iteration budget. `max_steps` bounds function applications per round;
/// `max_limit_jumps` bounds sup-of-chain steps between rounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fuel {
    pub max_steps: u64,
    pub max_limit_jumps: u32,
}

impl Fuel {
    pub fn new(max_steps: u64) -> Self {
        assert!(max_steps >= 1, "fuel must allow at least one step");
        Fuel {
            max_steps,
            max_limit_jumps: 0,
        }
    }

    pub fn with_limit_jumps(mut self, jumps: u32) -> Self {
        self.max_limit_jumps = jumps;
        self
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel::new(10_000)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixpointStatus {
    Converged,
    FuelExhausted,
}

/// Result of an engine run. On `Converged`, `value` satisfies
/// `f(value) = value` (re-checkable by one extra application); on
/// `FuelExhausted` it is the last iterate, reported rather than silently
/// truncated into a result.
#[derive(Clone, Debug)]
pub struct FixpointOutcome {
    pub status: FixpointStatus,
    pub value: Element,
    pub steps: u64,
    pub limit_jumps: u32,
    /// Every iterate the engine visited, in order; they form a chain.
    pub iterates: Vec<Element>,
}

impl FixpointOutcome {
    pub fn converged(&self) -> bool {
        self.status == FixpointStatus::Converged
    }

    /// Converged value, or a `FuelExhausted` error carrying the last
    /// iterate.
    pub fn into_converged(self) -> Result<Element> {
        match self.status {
            FixpointStatus::Converged => Ok(self.value),
            FixpointStatus::FuelExhausted => Err(Error::FuelExhausted {
                last: Box::new(self.value),
                steps: self.steps,
            }),
        }
    }
}

/// Kleene iteration from the least element of `order`. Converges exactly
/// when two consecutive iterates are equal; no limit jumps are taken even
/// if the fuel allows them.
pub fn kleene_lfp(
    f: impl Fn(&Element) -> Result<Element>,
    order: &PartialOrderSpec,
    fuel: &Fuel,
) -> Result<FixpointOutcome> {
    iterate(f, order, fuel, 0)
}

/// Kleene iteration with up to `fuel.max_limit_jumps` limit jumps: when a
/// round of `max_steps` applications ends without convergence, the iterate
/// is replaced by the domain's supremum of the computed chain and iteration
/// resumes.
pub fn monotone_lfp(
    f: impl Fn(&Element) -> Result<Element>,
    order: &PartialOrderSpec,
    fuel: &Fuel,
) -> Result<FixpointOutcome> {
    iterate(f, order, fuel, fuel.max_limit_jumps)
}

fn iterate(
    f: impl Fn(&Element) -> Result<Element>,
    order: &PartialOrderSpec,
    fuel: &Fuel,
    max_jumps: u32,
) -> Result<FixpointOutcome> {
    let mut current = order.least()?;
    let mut iterates = vec![current.clone()];
    let mut steps = 0u64;
    let mut limit_jumps = 0u32;
    loop {
        let mut round_steps = 0u64;
        while round_steps < fuel.max_steps {
            let next = f(&current)?;
            if next.domain != current.domain {
                return Err(Error::DomainMismatch {
                    expected: current.domain.clone(),
                    found: next.domain.clone(),
                });
            }
            steps += 1;
            round_steps += 1;
            iterates.push(next.clone());
            if next == current {
                return Ok(FixpointOutcome {
                    status: FixpointStatus::Converged,
                    value: next,
                    steps,
                    limit_jumps,
                    iterates,
                });
            }
            current = next;
        }
        if limit_jumps >= max_jumps {
            return Ok(FixpointOutcome {
                status: FixpointStatus::FuelExhausted,
                value: current,
                steps,
                limit_jumps,
                iterates,
            });
        }
        limit_jumps += 1;
        current = order.omega_sup(&iterates)?;
        iterates.push(current.clone());
    }
}

/// Min-extension iteration for causal feedback (the caller asserts that
/// `f` moves any output difference strictly after some input difference).
/// Starting from the empty history, each step adds only the least event of
/// `f(X) \ X`; the run converges when that difference is empty.
pub fn causal_unique_fp(
    f: impl Fn(&EventHistory) -> Result<EventHistory>,
    order: &PartialOrderSpec,
    fuel: &Fuel,
) -> Result<FixpointOutcome> {
    let wrap = |h: &EventHistory| -> Result<Element> {
        order.element(Value::Events(h.clone()))
    };
    let mut current = EventHistory::empty();
    let mut iterates = vec![wrap(&current)?];
    let mut steps = 0u64;
    while steps < fuel.max_steps {
        let image = f(&current)?;
        steps += 1;
        let new_events: Vec<TimedValue> = image
            .events()
            .filter(|e| !current.contains(e))
            .cloned()
            .collect();
        let least = match minimum_event(&new_events)? {
            None => {
                return Ok(FixpointOutcome {
                    status: FixpointStatus::Converged,
                    value: wrap(&current)?,
                    steps,
                    limit_jumps: 0,
                    iterates,
                });
            }
            Some(least) => least,
        };
        current = current.extended(least).map_err(|e| match e {
            Error::NotWellOrdered { detail } => Error::NotWellOrdered {
                detail: format!("min-extension broke the iterate order: {detail}"),
            },
            other => other,
        })?;
        iterates.push(wrap(&current)?);
    }
    Ok(FixpointOutcome {
        status: FixpointStatus::FuelExhausted,
        value: wrap(&current)?,
        steps,
        limit_jumps: 0,
        iterates,
    })
}

/// Least event of a set of timed events; `NotWellOrdered` if two candidate
/// minima share a time (they would be incomparable).
fn minimum_event(events: &[TimedValue]) -> Result<Option<TimedValue>> {
    let least = match events.iter().min_by(|a, b| a.time.cmp(&b.time)) {
        None => return Ok(None),
        Some(least) => least,
    };
    let clashing: Vec<&TimedValue> = events
        .iter()
        .filter(|e| e.time == least.time && *e != least)
        .collect();
    if !clashing.is_empty() {
        return Err(Error::NotWellOrdered {
            detail: format!(
                "new events {least} and {} are incomparable (equal times)",
                clashing[0]
            ),
        });
    }
    Ok(Some(least.clone()))
}

/// Exhaustive fixed-point oracle: every `x` in the domain enumeration with
/// `f(x) = x`, in canonical order.
pub fn brute_force_fixed_points(
    f: impl Fn(&Element) -> Result<Element>,
    order: &PartialOrderSpec,
) -> Result<Vec<Element>> {
    let mut fixed = Vec::new();
    for x in order.enumerated()? {
        if f(&x)? == x {
            fixed.push(x);
        }
    }
    Ok(fixed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{
        int_chain_with_limit, int_range_poset, powerset_domain, Rat, INT_CHAIN_LIMIT,
    };

    fn seq_unbounded() -> PartialOrderSpec {
        crate::kahn::make_seq_domain(&[0, 1], None)
    }

    #[test]
    fn identity_converges_at_bottom_in_one_step() {
        let order = seq_unbounded();
        let out = kleene_lfp(|x| Ok(x.clone()), &order, &Fuel::default()).unwrap();
        assert!(out.converged());
        assert_eq!(out.value.value, Value::seq([]));
        assert_eq!(out.steps, 1);
    }

    /// f(X) = X ∪ {min({0..3} \ X)} on subsets of {0..3}. Oracle: of all 16
    /// subsets only {0,1,2,3} is fixed, confirmed by brute force below.
    fn fill_min(order: &PartialOrderSpec) -> impl Fn(&Element) -> Result<Element> + '_ {
        move |x: &Element| {
            let s = match &x.value {
                Value::Set(s) => s.clone(),
                other => panic!("unexpected value {other}"),
            };
            let missing = (0..4).find(|n| !s.contains(n));
            let mut s = s;
            if let Some(m) = missing {
                s.insert(m);
            }
            order.element(Value::Set(s))
        }
    }

    #[test]
    fn fill_min_reaches_full_subset_in_five_steps() {
        let order = powerset_domain("subsets4", &[0, 1, 2, 3]);
        let out = kleene_lfp(fill_min(&order), &order, &Fuel::default()).unwrap();
        assert!(out.converged());
        assert_eq!(out.value.value, Value::set([0, 1, 2, 3]));
        assert_eq!(out.steps, 5);

        let fixed = brute_force_fixed_points(fill_min(&order), &order).unwrap();
        assert_eq!(fixed.len(), 1);
        assert_eq!(fixed[0].value, Value::set([0, 1, 2, 3]));
        assert!(order.leq(&out.value, &fixed[0]).unwrap());
    }

    #[test]
    fn inflationary_function_exhausts_fuel() {
        let order = seq_unbounded();
        let grow = |x: &Element| {
            let mut s = x.value.as_seq().unwrap().to_vec();
            s.push(0);
            order.element(Value::Seq(s))
        };
        let out = kleene_lfp(grow, &order, &Fuel::new(100)).unwrap();
        assert_eq!(out.status, FixpointStatus::FuelExhausted);
        assert_eq!(out.value.value.as_seq().unwrap().len(), 100);
        assert_eq!(out.steps, 100);
    }

    #[test]
    fn constant_function_converges_quickly() {
        let order = int_range_poset("c10", 0, 9);
        let c = order.element(Value::Int(7)).unwrap();
        let out = monotone_lfp(|_| Ok(c.clone()), &order, &Fuel::default()).unwrap();
        assert!(out.converged());
        assert_eq!(out.value, c);
        assert!(out.steps <= 2);
    }

    /// Hand iteration: 0,1,…,9 then 9 repeats; brute force confirms 9 is
    /// the unique fixed point.
    #[test]
    fn saturating_increment_climbs_the_chain() {
        let order = int_range_poset("chain10", 0, 9);
        let f = |x: &Element| {
            let n = x.value.as_int().unwrap();
            order.element(Value::Int((n + 1).min(9)))
        };
        let out = monotone_lfp(f, &order, &Fuel::default()).unwrap();
        assert!(out.converged());
        assert_eq!(out.value.value, Value::Int(9));
        assert_eq!(out.steps, 10);

        let fixed = brute_force_fixed_points(f, &order).unwrap();
        assert_eq!(fixed.len(), 1);
        assert_eq!(fixed[0].value, Value::Int(9));
    }

    #[test]
    fn limit_jump_closes_an_inflationary_chain() {
        let order = int_chain_with_limit("omega-chain");
        let f = |x: &Element| {
            let n = x.value.as_int().unwrap();
            let next = if n == INT_CHAIN_LIMIT {
                INT_CHAIN_LIMIT
            } else {
                n + 1
            };
            order.element(Value::Int(next))
        };
        let fuel = Fuel::new(50).with_limit_jumps(1);
        let out = monotone_lfp(f, &order, &fuel).unwrap();
        assert!(out.converged());
        assert_eq!(out.value.value, Value::Int(INT_CHAIN_LIMIT));
        assert_eq!(out.limit_jumps, 1);

        // kleene_lfp never jumps even with the same fuel
        let out = kleene_lfp(f, &order, &fuel).unwrap();
        assert_eq!(out.status, FixpointStatus::FuelExhausted);
        assert_eq!(out.limit_jumps, 0);
    }

    #[test]
    fn min_extension_reaches_the_skipped_fixed_point() {
        // f(∅) = {x0, x1}, f({x0}) = {x0}: plain iteration would overshoot,
        // min-extension reaches {x0}.
        let order = crate::causal::event_order();
        let x0 = TimedValue::new(1, Rat::int(1));
        let x1 = TimedValue::new(1, Rat::int(2));
        let f = |h: &EventHistory| {
            if h.is_empty() {
                EventHistory::new([x0.clone(), x1.clone()])
            } else if h.len() == 1 && h.contains(&x0) {
                EventHistory::new([x0.clone()])
            } else {
                Ok(h.clone())
            }
        };
        let out = causal_unique_fp(f, &order, &Fuel::default()).unwrap();
        assert!(out.converged());
        assert_eq!(
            out.value.value,
            Value::Events(EventHistory::new([x0.clone()]).unwrap())
        );
        assert_eq!(out.steps, 2);
    }

    #[test]
    fn constant_empty_feedback_converges_immediately() {
        let order = crate::causal::event_order();
        let out =
            causal_unique_fp(|_| Ok(EventHistory::empty()), &order, &Fuel::default()).unwrap();
        assert!(out.converged());
        assert_eq!(out.steps, 1);
        assert_eq!(out.value.value, Value::Events(EventHistory::empty()));
    }

    /// The Zeno feedback: f(X) = ℕ ∪ {(x+⌊x+1⌋)/2 | x ∈ X} over rational
    /// times (values are a unit marker). The displayed iterates are
    /// X₂ = {0, 1/2} and X₃ = {0, 1/2, 3/4}.
    pub(crate) fn zeno_function(h: &EventHistory) -> Result<EventHistory> {
        let mut events: Vec<TimedValue> =
            (0..16).map(|n| TimedValue::new(1, Rat::int(n))).collect();
        for ev in h.events() {
            let t = &ev.time;
            let shifted = &(t + &(t + &Rat::int(1)).floor()) / &Rat::int(2);
            events.push(TimedValue::new(1, shifted));
        }
        EventHistory::new(events)
    }

    #[test]
    fn zeno_iterates_match_the_dyadic_formula() {
        let order = crate::causal::event_order();
        for fuel in 1..=8u64 {
            let out = causal_unique_fp(zeno_function, &order, &Fuel::new(fuel)).unwrap();
            assert_eq!(out.status, FixpointStatus::FuelExhausted);
            let expected: Vec<Rat> = (0..fuel)
                .map(|k| {
                    let den = 1i64 << k;
                    Rat::new(den - 1, den)
                })
                .collect();
            let times = out.value.value.as_events().unwrap().times();
            assert_eq!(times, expected, "fuel {fuel}");
        }
    }

    #[test]
    fn brute_force_on_identity_and_negation() {
        let order = int_range_poset("bits2", 0, 1);
        let id = |x: &Element| Ok(x.clone());
        let all = brute_force_fixed_points(id, &order).unwrap();
        assert_eq!(all.len(), 2);

        let neg = |x: &Element| {
            let n = x.value.as_int().unwrap();
            order.element(Value::Int(1 - n))
        };
        assert!(brute_force_fixed_points(neg, &order).unwrap().is_empty());
    }

    #[test]
    fn iterates_form_a_chain() {
        let order = powerset_domain("subsets4b", &[0, 1, 2, 3]);
        let out = kleene_lfp(fill_min(&order), &order, &Fuel::default()).unwrap();
        for pair in out.iterates.windows(2) {
            assert!(order.leq(&pair[0], &pair[1]).unwrap());
        }
    }
}
