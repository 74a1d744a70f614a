use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::blocks::{adder_system, clock_system, delay_system, CausalBlock};
use super::order::event_order;
use crate::algebra::{random_diagram_exprs, CoiTrial, LabelPair};
use crate::fixpoint::Fuel;
use crate::functional::{
    fconnect, Chooser, EqualityProbe, FunctionalAlgebra, FunctionalSystem, GammaPolicy,
};
use crate::order::{Assignment, EventHistory, Label, Rat, TimedValue, Value};
use crate::Result;

/// Whether the causality of a system is guaranteed by its constructor or
/// merely claimed by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CausalOrigin {
    ByConstruction,
    Unchecked,
}

/// A functional system over event histories together with causality
/// provenance.
#[derive(Clone, Debug)]
pub struct CausalSystem {
    system: FunctionalSystem,
    origin: CausalOrigin,
}

impl CausalSystem {
    pub fn new(system: FunctionalSystem, origin: CausalOrigin) -> Self {
        CausalSystem { system, origin }
    }

    pub fn origin(&self) -> CausalOrigin {
        self.origin
    }

    pub fn inner(&self) -> &FunctionalSystem {
        &self.system
    }

    pub fn evaluate(&self, x: &Assignment) -> Result<Assignment> {
        self.system.evaluate(x)
    }
}

#[derive(Clone, Debug)]
pub struct CausalViolation {
    pub pair_index: usize,
    pub output: Label,
    pub event: TimedValue,
}

/// Sampled evidence for the causality condition; empty violations mean "no
/// counterexample found".
#[derive(Clone, Debug, Default)]
pub struct CausalReport {
    pub checked_pairs: usize,
    pub violations: Vec<CausalViolation>,
}

impl CausalReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for each sampled input pair `(X, X')` and every output label,
/// that each event in the output symmetric difference is strictly preceded
/// by some event in the input symmetric difference.
pub fn check_causal(
    s: &FunctionalSystem,
    pairs: &[(Assignment, Assignment)],
) -> Result<CausalReport> {
    let mut report = CausalReport::default();
    for (index, (x, x_prime)) in pairs.iter().enumerate() {
        let y = s.evaluate(x)?;
        let y_prime = s.evaluate(x_prime)?;
        report.checked_pairs += 1;

        let mut input_diff: Vec<TimedValue> = Vec::new();
        for label in s.signature().inputs() {
            let (a, b) = (history_at(x, label), history_at(x_prime, label));
            input_diff.extend(a.symmetric_difference(&b));
        }
        for label in s.signature().outputs() {
            let (a, b) = (history_at(&y, label), history_at(&y_prime, label));
            for event in a.symmetric_difference(&b) {
                if !input_diff.iter().any(|x| x.precedes(&event)) {
                    report.violations.push(CausalViolation {
                        pair_index: index,
                        output: label.clone(),
                        event,
                    });
                }
            }
        }
    }
    Ok(report)
}

fn history_at(x: &Assignment, label: &Label) -> EventHistory {
    x.get(label)
        .and_then(|v| v.as_events())
        .cloned()
        .unwrap_or_default()
}

/// Interface connection via the unique fixed point of the causal feedback,
/// computed by min-extension iteration. Zeno feedback surfaces as a
/// `FuelExhausted` error carrying the last iterate.
pub fn cconnect(i: &Label, o: &Label, s: &CausalSystem, fuel: &Fuel) -> Result<CausalSystem> {
    let connected = fconnect(i, o, s.inner(), &Chooser::UniqueViaCausal(*fuel))?;
    Ok(CausalSystem::new(connected, s.origin))
}

/// Seeded random event history: a few events at strictly increasing
/// half-integer times with small integer values.
pub fn sample_history(rng: &mut ChaCha8Rng, max_events: usize, horizon: i64) -> EventHistory {
    let count = rng.gen_range(0..=max_events);
    let mut ticks: Vec<i64> = (0..horizon * 2).collect();
    ticks.shuffle(rng);
    let mut chosen: Vec<i64> = ticks.into_iter().take(count).collect();
    chosen.sort_unstable();
    EventHistory::new(
        chosen
            .into_iter()
            .map(|half| TimedValue::new(rng.gen_range(0..3), Rat::new(half, 2))),
    )
    .expect("distinct times by construction")
}

/// The causal instantiation packaged for the invariance checker: `fpar`
/// plus min-extension `fconnect`, `Γ` admitting all (input, output) pairs,
/// equality sampled on random event histories.
pub fn causal_algebra() -> FunctionalAlgebra {
    let equality = EqualityProbe::Sampled {
        count: 6,
        seed: 0xca15a1,
        sample: Arc::new(|rng: &mut ChaCha8Rng| {
            Value::Events(sample_history(rng, 3, 6))
        }),
    };
    FunctionalAlgebra::new(event_order(), Chooser::UniqueViaCausal(Fuel::default()))
        .with_gamma(GammaPolicy::AllInputOutputPairs)
        .with_equality(equality)
}

/// Composition-order-invariance trial source over delay/clock/adder
/// networks.
pub fn causal_trials(
    variants: usize,
) -> impl FnMut(&mut ChaCha8Rng, usize) -> Result<CoiTrial<FunctionalSystem>> {
    move |rng, trial| {
        let horizon = Rat::int(6);
        let n_blocks = rng.gen_range(2..=3usize);
        let mut atoms = Vec::new();
        let mut atom_labels = Vec::new();
        let mut free_inputs: Vec<Label> = Vec::new();
        let mut free_outputs: Vec<Label> = Vec::new();
        for b in 0..n_blocks {
            let name = format!("t{trial}c{b}");
            let block: CausalBlock = match rng.gen_range(0..3) {
                0 => delay_system(&name, Rat::int(1), horizon.clone()),
                1 => clock_system(&name, Rat::int(2), horizon.clone()),
                _ => adder_system(&name, Rat::int(1), horizon.clone()),
            };
            let system = block.system.inner().clone();
            free_inputs.extend(system.signature().inputs().iter().cloned());
            free_outputs.extend(system.signature().outputs().iter().cloned());
            atom_labels.push(system.signature().labels());
            atoms.push((name, system));
        }
        free_inputs.shuffle(rng);
        free_outputs.shuffle(rng);
        let max_pairs = free_inputs.len().min(free_outputs.len()).min(2);
        let n_pairs = rng.gen_range(0..=max_pairs);
        let connects: Vec<LabelPair> = (0..n_pairs)
            .map(|k| LabelPair::new(free_inputs[k].clone(), free_outputs[k].clone()))
            .collect();
        let exprs = random_diagram_exprs(&atom_labels, &connects, rng, variants);
        Ok(CoiTrial {
            atoms,
            variants: exprs,
        })
    }
}
