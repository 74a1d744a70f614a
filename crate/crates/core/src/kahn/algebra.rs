use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::block::lift_named;
use super::{add_block, delay_block, dup_block, id_block, inc_block, SeqDomain};
use crate::algebra::{random_diagram_exprs, CoiTrial, LabelPair};
use crate::fixpoint::Fuel;
use crate::functional::{Chooser, EqualityProbe, FunctionalAlgebra, FunctionalSystem, GammaPolicy};
use crate::order::{Label, Value};
use crate::Result;

/// Which fixed-point engine backs interface connection. Process blocks are
/// continuous by construction, so both flavors agree on them; the Monotone
/// flavor differs only in allowing limit jumps for raw transfer functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KahnFlavor {
    Monotone,
    Continuous,
}

/// Packages the Kahn instantiation as a functional system algebra: lifted
/// systems under `fpar`, `fconnect` with the least-fixed-point chooser, `Γ`
/// admitting every (input, output) pair, and sampled extensional equality.
pub fn kahn_algebra(domain: &SeqDomain, flavor: KahnFlavor) -> FunctionalAlgebra {
    let chooser = match flavor {
        KahnFlavor::Continuous => Chooser::LeastViaKleene(Fuel::default()),
        KahnFlavor::Monotone => Chooser::LeastViaMonotone(Fuel::default().with_limit_jumps(1)),
    };
    let sample_domain = domain.clone();
    let sample_len = domain.max_len().unwrap_or(8).min(8);
    let equality = EqualityProbe::Sampled {
        count: 6,
        seed: 0x5e90,
        sample: Arc::new(move |rng: &mut ChaCha8Rng| {
            let tokens: Vec<i64> = sample_domain.alphabet().iter().copied().collect();
            let len = rng.gen_range(0..=sample_len);
            Value::Seq(
                (0..len)
                    .map(|_| *tokens.choose(rng).expect("nonempty alphabet"))
                    .collect(),
            )
        }),
    };
    FunctionalAlgebra::new(domain.order(), chooser)
        .with_gamma(GammaPolicy::AllInputOutputPairs)
        .with_equality(equality)
}

/// Composition-order-invariance trial source over stdlib blocks: 2–3
/// random blocks lifted with instance-unique labels, up to two random
/// feedback channels, and random expression variants.
pub fn kahn_trials(
    domain: &SeqDomain,
    variants: usize,
) -> impl FnMut(&mut ChaCha8Rng, usize) -> Result<CoiTrial<FunctionalSystem>> + '_ {
    move |rng, trial| {
        let modulus = *domain.alphabet().iter().max().unwrap_or(&1) + 1;
        let n_blocks = rng.gen_range(2..=3usize);
        let mut atoms = Vec::new();
        let mut atom_labels = Vec::new();
        let mut free_inputs: Vec<Label> = Vec::new();
        let mut free_outputs: Vec<Label> = Vec::new();
        for b in 0..n_blocks {
            let name = format!("t{trial}b{b}");
            let block = match rng.gen_range(0..5) {
                0 => id_block(&name),
                1 => dup_block(&name),
                2 => inc_block(&name, 1, modulus),
                3 => add_block(&name, modulus),
                _ => delay_block(&name, vec![0]),
            };
            let system = lift_named(&block, domain)?;
            let labels = system.signature().labels();
            free_inputs.extend(system.signature().inputs().iter().cloned());
            free_outputs.extend(system.signature().outputs().iter().cloned());
            atom_labels.push(labels);
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
