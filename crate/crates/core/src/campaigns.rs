//! Property campaigns: randomized end-to-end checks of the fixed-point
//! theory against brute-force oracles. Each campaign is deterministic for a
//! given seed and returns a report listing every failing trial.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::causal::{
    check_causal, delay_system, strictly_causal_check, zero_delay_identity,
};
use crate::fixpoint::{brute_force_fixed_points, causal_unique_fp, kleene_lfp, Fuel};
use crate::functional::{FunctionalSystem, Signature};
use crate::order::{
    finite_poset, Assignment, Element, EventHistory, Label, PartialOrderSpec, Rat, TimedValue,
    Value,
};
use crate::Result;

#[derive(Clone, Debug, Default)]
pub struct CampaignReport {
    pub trials: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_lines(&self) -> String {
        let mut out = format!(
            "trials={} checks={} failures={}\n",
            self.trials,
            self.checks,
            self.failures.len()
        );
        for f in &self.failures {
            out.push_str(&format!("failure {f}\n"));
        }
        out
    }
}

// ---- random finite posets and monotone functions ----

/// A random finite poset with a least element: a chain, a Boolean-subset
/// lattice, a grid (product of two chains), or the transitive closure of a
/// random DAG with a bottom adjoined. At most 64 elements.
pub fn random_poset(rng: &mut ChaCha8Rng, tag: &str) -> PartialOrderSpec {
    let shape = rng.gen_range(0..4);
    let id = format!("poset-{tag}-{shape}");
    match shape {
        0 => {
            let n = rng.gen_range(2..=24i64);
            finite_poset(&id, (0..n).map(Value::Int).collect(), |a, b| {
                a.as_int() <= b.as_int()
            })
        }
        1 => {
            let bits = rng.gen_range(2..=5u32);
            let n = 1i64 << bits;
            finite_poset(&id, (0..n).map(Value::Int).collect(), |a, b| {
                let (x, y) = (a.as_int().unwrap(), b.as_int().unwrap());
                x & y == x
            })
        }
        2 => {
            let rows = rng.gen_range(2..=6i64);
            let cols = rng.gen_range(2..=6i64);
            finite_poset(
                &id,
                (0..rows * cols).map(Value::Int).collect(),
                move |a, b| {
                    let (x, y) = (a.as_int().unwrap(), b.as_int().unwrap());
                    let (xr, xc) = (x / cols, x % cols);
                    let (yr, yc) = (y / cols, y % cols);
                    xr <= yr && xc <= yc
                },
            )
        }
        _ => {
            let n = rng.gen_range(3..=12usize);
            // random DAG on 1..n over the index order, element 0 below all
            let mut reach = vec![vec![false; n]; n];
            for (i, row) in reach.iter_mut().enumerate() {
                row[i] = true;
            }
            for i in 1..n {
                reach[0][i] = true;
                for j in (i + 1)..n {
                    if rng.gen_bool(0.3) {
                        reach[i][j] = true;
                    }
                }
            }
            // transitive closure
            for k in 0..n {
                for i in 0..n {
                    if reach[i][k] {
                        for j in 0..n {
                            if reach[k][j] {
                                reach[i][j] = true;
                            }
                        }
                    }
                }
            }
            finite_poset(&id, (0..n as i64).map(Value::Int).collect(), move |a, b| {
                reach[a.as_int().unwrap() as usize][b.as_int().unwrap() as usize]
            })
        }
    }
    .expect("generated relations are valid partial orders")
}

/// A random monotone endofunction: a composition of one to three upset step
/// functions `x ↦ if x ⪰ some member of U then hi else lo` with `lo ⪯ hi`.
pub fn random_monotone_fn(
    order: &PartialOrderSpec,
    rng: &mut ChaCha8Rng,
) -> Arc<dyn Fn(&Element) -> Result<Element> + Send + Sync> {
    let elements = order.enumerated().expect("campaign posets are enumerable");
    let mut ordered_pairs = Vec::new();
    for a in &elements {
        for b in &elements {
            if order.leq(a, b).unwrap() {
                ordered_pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let steps = rng.gen_range(1..=3);
    let mut stages: Vec<(Vec<Element>, Element, Element)> = Vec::new();
    for _ in 0..steps {
        let (lo, hi) = ordered_pairs
            .choose(rng)
            .expect("a poset has reflexive pairs")
            .clone();
        let seeds: Vec<Element> = (0..rng.gen_range(1..=3))
            .map(|_| elements.choose(rng).unwrap().clone())
            .collect();
        stages.push((seeds, lo, hi));
    }
    let order = order.clone();
    Arc::new(move |x: &Element| {
        let mut current = x.clone();
        for (seeds, lo, hi) in &stages {
            let in_upset = seeds.iter().any(|s| order.leq(s, &current).unwrap_or(false));
            current = if in_upset { hi.clone() } else { lo.clone() };
        }
        Ok(current)
    })
}

/// Least-fixed-point minimality and descent campaign: on random enumerated
/// posets with random monotone functions, the engine's converged value is
/// `⪯` every brute-force fixed point, and for every `x` with `f(x) ⪯ x`
/// some brute-force fixed point sits below `x`.
pub fn lfp_minimality_campaign(trials: usize, seed: u64) -> Result<CampaignReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CampaignReport::default();
    for trial in 0..trials {
        report.trials += 1;
        let order = random_poset(&mut rng, &trial.to_string());
        let f = random_monotone_fn(&order, &mut rng);
        let outcome = kleene_lfp(|x| f(x), &order, &Fuel::default())?;
        if !outcome.converged() {
            report
                .failures
                .push(format!("trial {trial}: engine did not converge on a finite poset"));
            continue;
        }
        let fixed = brute_force_fixed_points(|x| f(x), &order)?;
        if fixed.is_empty() {
            report
                .failures
                .push(format!("trial {trial}: no fixed point found by brute force"));
            continue;
        }
        for candidate in &fixed {
            report.checks += 1;
            if !order.leq(&outcome.value, candidate)? {
                report.failures.push(format!(
                    "trial {trial}: converged {} not below fixed point {}",
                    outcome.value, candidate
                ));
            }
        }
        // descent: every pre-fixed point dominates some fixed point
        for x in order.enumerated()? {
            if order.leq(&f(&x)?, &x)? {
                report.checks += 1;
                let dominated = fixed
                    .iter()
                    .any(|fp| order.leq(fp, &x).unwrap_or(false));
                if !dominated {
                    report.failures.push(format!(
                        "trial {trial}: f({x}) ⪯ {x} but no fixed point below it"
                    ));
                }
            }
        }
    }
    Ok(report)
}

// ---- random causal truth-table systems ----

/// A universe of up to `max_events` events at distinct integer times.
pub fn random_event_universe(rng: &mut ChaCha8Rng, max_events: usize) -> Vec<TimedValue> {
    let count = rng.gen_range(1..=max_events);
    let mut times: Vec<i64> = (0..(max_events as i64 * 2)).collect();
    times.shuffle(rng);
    let mut chosen: Vec<i64> = times.into_iter().take(count).collect();
    chosen.sort_unstable();
    chosen
        .into_iter()
        .map(|t| TimedValue::new(rng.gen_range(0..3), Rat::int(t)))
        .collect()
}

/// A random causal function on the subsets of `universe`: event `u` is
/// emitted according to a random truth table over the input events strictly
/// before `u`. Any two inputs differing in the output must then differ
/// strictly before it, which is exactly the causality condition.
pub fn random_causal_fn(
    universe: &[TimedValue],
    rng: &mut ChaCha8Rng,
) -> Arc<dyn Fn(&EventHistory) -> Result<EventHistory> + Send + Sync> {
    let universe: Vec<TimedValue> = universe.to_vec();
    let tables: Vec<u64> = universe.iter().map(|_| rng.gen()).collect();
    Arc::new(move |x: &EventHistory| {
        let mut out = Vec::new();
        for (k, u) in universe.iter().enumerate() {
            let mut index = 0usize;
            for (bit, earlier) in universe.iter().take(k).enumerate() {
                if x.contains(earlier) {
                    index |= 1 << bit;
                }
            }
            if tables[k] >> index & 1 == 1 {
                out.push(u.clone());
            }
        }
        EventHistory::new(out)
    })
}

/// Uniqueness campaign: for random causal truth-table systems on small
/// event universes, brute force finds exactly one fixed point and it equals
/// the min-extension engine's converged value.
pub fn causal_uniqueness_campaign(trials: usize, seed: u64) -> Result<CampaignReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CampaignReport::default();
    for trial in 0..trials {
        report.trials += 1;
        let universe = random_event_universe(&mut rng, 6);
        let f = random_causal_fn(&universe, &mut rng);
        let order = crate::causal::event_order_over(&universe);
        let fixed = brute_force_fixed_points(
            |e| {
                let h = e.value.as_events().expect("event element");
                Ok(Element::new(e.domain.clone(), Value::Events(f(h)?)))
            },
            &order,
        )?;
        report.checks += 1;
        if fixed.len() != 1 {
            report.failures.push(format!(
                "trial {trial}: expected exactly one fixed point, found {}",
                fixed.len()
            ));
            continue;
        }
        let outcome = causal_unique_fp(|h| f(h), &order, &Fuel::default())?;
        report.checks += 1;
        if !outcome.converged() || outcome.value != fixed[0] {
            report.failures.push(format!(
                "trial {trial}: engine value {} differs from oracle {}",
                outcome.value, fixed[0]
            ));
        }
    }
    Ok(report)
}

// ---- causality / strict-causality equivalence ----

fn random_history_over(
    universe: &[TimedValue],
    rng: &mut ChaCha8Rng,
) -> EventHistory {
    EventHistory::new(
        universe
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .cloned(),
    )
    .expect("universe times are distinct")
}

/// A random single-input single-output event system. Half the time the
/// output tables may read events at or after the output time, producing
/// systems that genuinely violate causality.
fn random_event_system(
    universe: &[TimedValue],
    rng: &mut ChaCha8Rng,
    allow_broken: bool,
) -> FunctionalSystem {
    let in_label = Label::new("sys.in");
    let out_label = Label::new("sys.out");
    let signature = Signature::new([in_label.clone()], [out_label.clone()]).unwrap();
    let universe: Vec<TimedValue> = universe.to_vec();
    let tables: Vec<u64> = universe.iter().map(|_| rng.gen()).collect();
    let broken = allow_broken && rng.gen_bool(0.5);
    FunctionalSystem::new(signature, crate::causal::event_order(), move |x| {
        let input = x[&in_label].as_events().expect("event input");
        let mut out = Vec::new();
        for (k, u) in universe.iter().enumerate() {
            // the universe is time-sorted: the first k events are exactly
            // those strictly before u; a broken system reads all of them
            let visible = if broken { universe.len() } else { k };
            let mut index = 0usize;
            for (bit, e) in universe.iter().take(visible).enumerate() {
                if input.contains(e) {
                    index |= 1 << bit;
                }
            }
            if tables[k] >> index & 1 == 1 {
                out.push(u.clone());
            }
        }
        Ok([(out_label.clone(), Value::Events(EventHistory::new(out)?))].into())
    })
}

fn sample_pairs(
    universe: &[TimedValue],
    labels: &[Label],
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Vec<(Assignment, Assignment)> {
    (0..count)
        .map(|_| {
            let mk = |rng: &mut ChaCha8Rng| -> Assignment {
                labels
                    .iter()
                    .map(|l| {
                        (
                            l.clone(),
                            Value::Events(random_history_over(universe, rng)),
                        )
                    })
                    .collect()
            };
            (mk(rng), mk(rng))
        })
        .collect()
}

/// Equivalence campaign: on every trial, the causal check and the
/// strict-causality check (through the signal translation) must return the
/// same verdict on the same sample pairs. Trials include causal-by-
/// construction systems, deliberately broken ones, shipped blocks, and the
/// zero-delay identity.
pub fn causality_equivalence_campaign(trials: usize, seed: u64) -> Result<CampaignReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CampaignReport::default();

    fn check_one(
        name: &str,
        system: &FunctionalSystem,
        pairs: &[(Assignment, Assignment)],
        report: &mut CampaignReport,
    ) -> Result<()> {
        let causal_verdict = check_causal(system, pairs)?.is_clean();
        let strict_verdict = strictly_causal_check(system, pairs)?.is_clean();
        report.checks += 1;
        if causal_verdict != strict_verdict {
            report.failures.push(format!(
                "{name}: causal verdict {causal_verdict} but strictly-causal verdict {strict_verdict}"
            ));
        }
        Ok(())
    }

    // shipped blocks: delay (causal) and zero-delay identity (not causal)
    {
        let universe = random_event_universe(&mut rng, 5);
        let delay = delay_system("d", Rat::int(1), Rat::int(100));
        let labels = [Label::new("d.in")];
        let pairs = sample_pairs(&universe, &labels, &mut rng, 12);
        report.trials += 1;
        check_one("delay block", delay.system.inner(), &pairs, &mut report)?;

        let zero = zero_delay_identity("z");
        let labels = [Label::new("z.in")];
        let pairs = sample_pairs(&universe, &labels, &mut rng, 12);
        report.trials += 1;
        let causal_verdict = check_causal(zero.system.inner(), &pairs)?.is_clean();
        let strict_verdict = strictly_causal_check(zero.system.inner(), &pairs)?.is_clean();
        report.checks += 1;
        if causal_verdict != strict_verdict {
            report.failures.push(format!(
                "zero-delay identity: verdicts disagree ({causal_verdict} vs {strict_verdict})"
            ));
        }
        // with a nonempty universe the negative case must actually trigger
        if !universe.is_empty() && causal_verdict {
            let x = Assignment::from([(
                Label::new("z.in"),
                Value::Events(EventHistory::empty()),
            )]);
            let x_prime = Assignment::from([(
                Label::new("z.in"),
                Value::Events(EventHistory::new([universe[0].clone()]).unwrap()),
            )]);
            let forced = [(x, x_prime)];
            let causal_verdict = check_causal(zero.system.inner(), &forced)?.is_clean();
            let strict_verdict =
                strictly_causal_check(zero.system.inner(), &forced)?.is_clean();
            report.checks += 1;
            if causal_verdict || strict_verdict {
                report
                    .failures
                    .push("zero-delay identity passed a forced negative sample".into());
            }
        }
    }

    for trial in 0..trials {
        report.trials += 1;
        let universe = random_event_universe(&mut rng, 5);
        let system = random_event_system(&universe, &mut rng, true);
        let pairs = sample_pairs(&universe, &[Label::new("sys.in")], &mut rng, 10);
        check_one(&format!("random system {trial}"), &system, &pairs, &mut report)?;
    }
    Ok(report)
}
