//! Functional system algebras: systems are functions from input-interface
//! tuples to output-interface tuples over a shared domain, parallel
//! composition evaluates components independently, and interface connection
//! selects a fixed point of the feedback function through a pluggable
//! [`Chooser`].

mod chooser;
mod merge;

pub use chooser::Chooser;
pub use merge::{input_label, merge_interfaces, output_label, MergedSystem};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{LabelPair, SystemAlgebra};
use crate::order::{Assignment, Label, PartialOrderSpec, Value, ENUMERATION_BOUND};
use crate::{Error, Result};

/// Input and output interface label sets; the two sets are disjoint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Signature {
    inputs: BTreeSet<Label>,
    outputs: BTreeSet<Label>,
}

impl Signature {
    pub fn new(
        inputs: impl IntoIterator<Item = Label>,
        outputs: impl IntoIterator<Item = Label>,
    ) -> Result<Self> {
        let inputs: BTreeSet<Label> = inputs.into_iter().collect();
        let outputs: BTreeSet<Label> = outputs.into_iter().collect();
        let clashing: Vec<Label> = inputs.intersection(&outputs).cloned().collect();
        if !clashing.is_empty() {
            return Err(Error::LabelClash { labels: clashing });
        }
        Ok(Signature { inputs, outputs })
    }

    pub fn inputs(&self) -> &BTreeSet<Label> {
        &self.inputs
    }

    pub fn outputs(&self) -> &BTreeSet<Label> {
        &self.outputs
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.inputs.union(&self.outputs).cloned().collect()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<Label>| {
            s.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
        };
        write!(f, "({}) -> ({})", list(&self.inputs), list(&self.outputs))
    }
}

type TransferFn = dyn Fn(&Assignment) -> Result<Assignment> + Send + Sync;

/// A functional system: a signature, a domain handle, and a total transfer
/// function from input tuples to output tuples. Evaluation validates that
/// inputs and outputs carry exactly the declared labels with values inside
/// the domain.
#[derive(Clone)]
pub struct FunctionalSystem {
    signature: Signature,
    domain: PartialOrderSpec,
    transfer: Arc<TransferFn>,
}

impl fmt::Debug for FunctionalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FunctionalSystem{} over {}", self.signature, self.domain.id())
    }
}

impl FunctionalSystem {
    pub fn new(
        signature: Signature,
        domain: PartialOrderSpec,
        transfer: impl Fn(&Assignment) -> Result<Assignment> + Send + Sync + 'static,
    ) -> Self {
        FunctionalSystem {
            signature,
            domain,
            transfer: Arc::new(transfer),
        }
    }

    /// A system backed by a finite truth table. When the input space is
    /// enumerable within bounds, coverage is validated eagerly.
    pub fn from_table(
        signature: Signature,
        domain: PartialOrderSpec,
        table: BTreeMap<Assignment, Assignment>,
    ) -> Result<Self> {
        if let Ok(inputs) = enumerate_inputs(&domain, &signature.inputs) {
            for x in &inputs {
                if !table.contains_key(x) {
                    return Err(Error::TransferFailed {
                        detail: format!("truth table misses entry for {}", Value::Tuple(x.clone())),
                    });
                }
            }
        }
        let table = Arc::new(table);
        let lookup = Arc::clone(&table);
        Ok(FunctionalSystem::new(signature, domain, move |x| {
            lookup.get(x).cloned().ok_or_else(|| Error::TransferFailed {
                detail: format!("truth table has no entry for {}", Value::Tuple(x.clone())),
            })
        }))
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn domain(&self) -> &PartialOrderSpec {
        &self.domain
    }

    fn check_assignment(
        &self,
        x: &Assignment,
        expected: &BTreeSet<Label>,
        role: &str,
    ) -> Result<()> {
        let keys: BTreeSet<Label> = x.keys().cloned().collect();
        if &keys != expected {
            return Err(Error::SignatureMismatch {
                detail: format!(
                    "{role} labels {{{}}} do not match {{{}}}",
                    keys.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","),
                    expected
                        .iter()
                        .map(|l| l.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
            });
        }
        for (label, v) in x {
            if !self.domain.contains(v) {
                return Err(Error::NotInDomain {
                    domain: self.domain.id().clone(),
                    value: format!("{v} at {label}"),
                });
            }
        }
        Ok(())
    }

    /// Applies the transfer function, validating both sides.
    pub fn evaluate(&self, x: &Assignment) -> Result<Assignment> {
        self.check_assignment(x, &self.signature.inputs, "input")?;
        let out = (self.transfer)(x)?;
        self.check_assignment(&out, &self.signature.outputs, "output")?;
        Ok(out)
    }

    /// Output at a single label.
    pub fn evaluate_at(&self, x: &Assignment, o: &Label) -> Result<Value> {
        let out = self.evaluate(x)?;
        out.get(o).cloned().ok_or_else(|| Error::SignatureMismatch {
            detail: format!("no output at {o}"),
        })
    }
}

/// All assignments of enumerated domain values to the given labels.
pub fn enumerate_inputs(
    domain: &PartialOrderSpec,
    labels: &BTreeSet<Label>,
) -> Result<Vec<Assignment>> {
    let values = domain.enumerated()?;
    let size = (values.len() as u128)
        .checked_pow(labels.len() as u32)
        .unwrap_or(u128::MAX);
    if size > ENUMERATION_BOUND {
        return Err(Error::EnumerationTooLarge {
            domain: domain.id().clone(),
            size,
            bound: ENUMERATION_BOUND,
        });
    }
    let mut tuples: Vec<Assignment> = vec![Assignment::new()];
    for label in labels {
        let mut next = Vec::with_capacity(tuples.len() * values.len());
        for t in &tuples {
            for v in &values {
                let mut t = t.clone();
                t.insert(label.clone(), v.value.clone());
                next.push(t);
            }
        }
        tuples = next;
    }
    Ok(tuples)
}

/// Parallel composition: each component is evaluated on its own restricted
/// inputs with no cross-influence.
pub fn fpar(s1: &FunctionalSystem, s2: &FunctionalSystem) -> Result<FunctionalSystem> {
    if !s1.domain.same_domain(&s2.domain) {
        return Err(Error::DomainMismatch {
            expected: s1.domain.id().clone(),
            found: s2.domain.id().clone(),
        });
    }
    let l1 = s1.signature.labels();
    let clashing: Vec<Label> = s2
        .signature
        .labels()
        .intersection(&l1)
        .cloned()
        .collect();
    if !clashing.is_empty() {
        return Err(Error::LabelClash { labels: clashing });
    }
    let signature = Signature::new(
        s1.signature.inputs.union(&s2.signature.inputs).cloned(),
        s1.signature.outputs.union(&s2.signature.outputs).cloned(),
    )?;
    let left = s1.clone();
    let right = s2.clone();
    Ok(FunctionalSystem::new(
        signature,
        s1.domain.clone(),
        move |x| {
            let restrict = |labels: &BTreeSet<Label>| -> Assignment {
                x.iter()
                    .filter(|(l, _)| labels.contains(*l))
                    .map(|(l, v)| (l.clone(), v.clone()))
                    .collect()
            };
            let mut out = left.evaluate(&restrict(&left.signature.inputs))?;
            out.extend(right.evaluate(&restrict(&right.signature.inputs))?);
            Ok(out)
        },
    ))
}

/// The fixed-point set Φ for connecting input `i` to output `o` in context
/// `x`: every domain value `v` with `s(x ∪ {i: v})(o) = v`, by brute force
/// over the domain enumeration.
pub fn fixed_point_set(
    s: &FunctionalSystem,
    i: &Label,
    o: &Label,
    context: &Assignment,
) -> Result<Vec<Value>> {
    let mut fixed = Vec::new();
    for v in s.domain.enumerated()? {
        let mut x = context.clone();
        x.insert(i.clone(), v.value.clone());
        if s.evaluate_at(&x, o)? == v.value {
            fixed.push(v.value);
        }
    }
    Ok(fixed)
}

/// Interface connection by fixed-point selection. For every evaluated
/// context the selected value is re-checked to be a fixed point before
/// outputs are returned, and selections are memoized per context.
pub fn fconnect(
    i: &Label,
    o: &Label,
    s: &FunctionalSystem,
    chooser: &Chooser,
) -> Result<FunctionalSystem> {
    if !s.signature.inputs.contains(i) || !s.signature.outputs.contains(o) {
        return Err(Error::NotConnectable {
            pair: LabelPair::new(i.clone(), o.clone()),
            reason: format!("pair is not an (input, output) pair of {}", s.signature),
        });
    }
    let signature = Signature::new(
        s.signature.inputs.iter().filter(|l| *l != i).cloned(),
        s.signature.outputs.iter().filter(|l| *l != o).cloned(),
    )?;
    let inner = s.clone();
    let i = i.clone();
    let o = o.clone();
    let chooser = chooser.clone();
    let memo: Arc<Mutex<HashMap<Assignment, Value>>> = Arc::new(Mutex::new(HashMap::new()));
    Ok(FunctionalSystem::new(
        signature,
        s.domain.clone(),
        move |x| {
            let cached = memo.lock().expect("memo poisoned").get(x).cloned();
            let v = match cached {
                Some(v) => v,
                None => {
                    let v = chooser.choose(&inner, &i, &o, x)?;
                    let mut probe = x.clone();
                    probe.insert(i.clone(), v.clone());
                    if inner.evaluate_at(&probe, &o)? != v {
                        return Err(Error::ChooserUnsound {
                            pair: LabelPair::new(i.clone(), o.clone()),
                            chosen: v.to_string(),
                        });
                    }
                    memo.lock()
                        .expect("memo poisoned")
                        .insert(x.clone(), v.clone());
                    v
                }
            };
            let mut full = x.clone();
            full.insert(i.clone(), v);
            let mut out = inner.evaluate(&full)?;
            out.remove(&o);
            Ok(out)
        },
    ))
}

/// Bounded extensional equality: the transfers agree on every given input.
/// This is evidence over the supplied inputs, not a proof.
pub fn observational_eq(
    s1: &FunctionalSystem,
    s2: &FunctionalSystem,
    inputs: &[Assignment],
) -> Result<bool> {
    if s1.signature != s2.signature {
        return Err(Error::SignatureMismatch {
            detail: format!("{} vs {}", s1.signature, s2.signature),
        });
    }
    if !s1.domain.same_domain(&s2.domain) {
        return Err(Error::DomainMismatch {
            expected: s1.domain.id().clone(),
            found: s2.domain.id().clone(),
        });
    }
    for x in inputs {
        if s1.evaluate(x)? != s2.evaluate(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rule deciding which label pairs `Γ` admits for connection.
#[derive(Clone)]
pub enum GammaPolicy {
    /// Every (input, output) pair.
    AllInputOutputPairs,
    Custom(Arc<dyn Fn(&FunctionalSystem, &Label, &Label) -> bool + Send + Sync>),
}

impl GammaPolicy {
    pub fn admits(&self, s: &FunctionalSystem, i: &Label, o: &Label) -> bool {
        let directed =
            s.signature.inputs.contains(i) && s.signature.outputs.contains(o);
        match self {
            GammaPolicy::AllInputOutputPairs => directed,
            GammaPolicy::Custom(rule) => directed && rule(s, i, o),
        }
    }
}

/// How a [`FunctionalAlgebra`] decides extensional equality.
#[derive(Clone)]
pub enum EqualityProbe {
    /// Compare on every enumerable input assignment.
    Exhaustive,
    /// Compare on `count` seeded random assignments per call.
    Sampled {
        count: usize,
        seed: u64,
        sample: Arc<dyn Fn(&mut ChaCha8Rng) -> Value + Send + Sync>,
    },
}

/// A functional system algebra packaged for the generic contract: `λ` from
/// signatures, `Γ` from a policy, `∥` by [`fpar`], `γ` by [`fconnect`] with
/// a fixed chooser, and equality by an [`EqualityProbe`].
#[derive(Clone)]
pub struct FunctionalAlgebra {
    pub domain: PartialOrderSpec,
    pub chooser: Chooser,
    pub gamma: GammaPolicy,
    pub equality: EqualityProbe,
}

impl FunctionalAlgebra {
    pub fn new(domain: PartialOrderSpec, chooser: Chooser) -> Self {
        FunctionalAlgebra {
            domain,
            chooser,
            gamma: GammaPolicy::AllInputOutputPairs,
            equality: EqualityProbe::Exhaustive,
        }
    }

    pub fn with_gamma(mut self, gamma: GammaPolicy) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_equality(mut self, equality: EqualityProbe) -> Self {
        self.equality = equality;
        self
    }

    fn equality_inputs(&self, s: &FunctionalSystem) -> Result<Vec<Assignment>> {
        match &self.equality {
            EqualityProbe::Exhaustive => {
                enumerate_inputs(&self.domain, s.signature().inputs())
            }
            EqualityProbe::Sampled {
                count,
                seed,
                sample,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Ok((0..*count)
                    .map(|_| {
                        s.signature()
                            .inputs()
                            .iter()
                            .map(|l| (l.clone(), sample(&mut rng)))
                            .collect()
                    })
                    .collect())
            }
        }
    }
}

impl SystemAlgebra for FunctionalAlgebra {
    type System = FunctionalSystem;

    fn labels(&self, s: &FunctionalSystem) -> BTreeSet<Label> {
        s.signature().labels()
    }

    fn connectable(&self, s: &FunctionalSystem) -> BTreeSet<LabelPair> {
        let mut pairs = BTreeSet::new();
        for i in s.signature().inputs() {
            for o in s.signature().outputs() {
                if self.gamma.admits(s, i, o) {
                    pairs.insert(LabelPair::new(i.clone(), o.clone()));
                }
            }
        }
        pairs
    }

    fn par(&self, a: &FunctionalSystem, b: &FunctionalSystem) -> Result<FunctionalSystem> {
        fpar(a, b)
    }

    fn connect(&self, pair: &LabelPair, s: &FunctionalSystem) -> Result<FunctionalSystem> {
        let (i, o) = if s.signature().inputs().contains(pair.first())
            && s.signature().outputs().contains(pair.second())
        {
            (pair.first().clone(), pair.second().clone())
        } else if s.signature().inputs().contains(pair.second())
            && s.signature().outputs().contains(pair.first())
        {
            (pair.second().clone(), pair.first().clone())
        } else {
            return Err(Error::NotConnectable {
                pair: pair.clone(),
                reason: format!("not an (input, output) pair of {}", s.signature()),
            });
        };
        if !self.gamma.admits(s, &i, &o) {
            return Err(Error::NotConnectable {
                pair: pair.clone(),
                reason: "pair not admitted by the Γ policy".into(),
            });
        }
        fconnect(&i, &o, s, &self.chooser)
    }

    fn systems_equal(&self, a: &FunctionalSystem, b: &FunctionalSystem) -> Result<bool> {
        if a.signature() != b.signature() {
            return Ok(false);
        }
        let inputs = self.equality_inputs(a)?;
        observational_eq(a, b, &inputs)
    }

    fn render(&self, s: &FunctionalSystem) -> String {
        if s.signature().inputs().is_empty() {
            match s.evaluate(&Assignment::new()) {
                Ok(out) => format!("{}", Value::Tuple(out)),
                Err(e) => format!("<evaluation failed: {e}>"),
            }
        } else {
            format!("{}", s.signature())
        }
    }
}

/// The inverter-pair example showing that consistently chosen fixed points
/// do not imply connection-order invariance: over bits with the
/// prefer-zero chooser, closing the two loops of
/// `s({i1: x1, i2: x2}) = {o1: 1-x1, o2: 1-x2, o3: x1}` in the two orders
/// yields `{o3: 0}` and `{o3: 1}`.
pub mod prefer_zero {
    use std::sync::Arc;

    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    use super::{
        Chooser, EqualityProbe, FunctionalAlgebra, FunctionalSystem, GammaPolicy, Signature,
    };
    use crate::algebra::{random_diagram_exprs, CoiTrial, LabelPair};
    use crate::order::{bit_domain, Label, Value};
    use crate::Result;

    pub fn chooser() -> Chooser {
        Chooser::PreferListed(vec![Value::Int(0), Value::Int(1)])
    }

    /// The inverter-pair system itself.
    pub fn example_system() -> FunctionalSystem {
        let l = Label::new;
        let signature =
            Signature::new([l("i1"), l("i2")], [l("o1"), l("o2"), l("o3")]).unwrap();
        FunctionalSystem::new(signature, bit_domain(), |x| {
            let x1 = x[&Label::new("i1")].as_int().expect("bit input");
            let x2 = x[&Label::new("i2")].as_int().expect("bit input");
            Ok([
                (Label::new("o1"), Value::Int(1 - x1)),
                (Label::new("o2"), Value::Int(1 - x2)),
                (Label::new("o3"), Value::Int(x1)),
            ]
            .into())
        })
    }

    /// Bit-domain functional algebra with the prefer-zero chooser and
    /// exhaustive equality.
    pub fn algebra() -> FunctionalAlgebra {
        FunctionalAlgebra::new(bit_domain(), chooser())
            .with_gamma(GammaPolicy::AllInputOutputPairs)
            .with_equality(EqualityProbe::Exhaustive)
    }

    /// Trial source seeded with the counterexample: the first trial is the
    /// inverter-pair system with its two connection orders, later trials
    /// are random bit truth-table systems.
    pub fn trials(
        variants: usize,
    ) -> impl FnMut(&mut ChaCha8Rng, usize) -> Result<CoiTrial<FunctionalSystem>> {
        move |rng, trial| {
            if trial == 0 {
                let s = example_system();
                let pair_a = LabelPair::new("i2", "o1");
                let pair_b = LabelPair::new("i1", "o2");
                use crate::algebra::CompositionExpr as E;
                let one = E::connect(pair_b.clone(), E::connect(pair_a.clone(), E::leaf(0)));
                let two = E::connect(pair_a, E::connect(pair_b, E::leaf(0)));
                return Ok(CoiTrial {
                    atoms: vec![("inverter-pair".into(), s)],
                    variants: vec![one, two],
                });
            }
            // random truth tables over two inputs and two outputs
            let name = format!("tbl{trial}");
            let in_a = Label::new(format!("{name}.a"));
            let in_b = Label::new(format!("{name}.b"));
            let out_label_y = Label::new(format!("{name}.y"));
            let out_label_z = Label::new(format!("{name}.z"));
            let signature = Signature::new(
                [in_a.clone(), in_b.clone()],
                [out_label_y.clone(), out_label_z.clone()],
            )?;
            let mask: u8 = rng.gen();
            let table = Arc::new(move |a: i64, b: i64| {
                let idx = (a * 2 + b) as u8;
                (
                    i64::from(mask >> idx & 1),
                    i64::from(mask >> (idx + 4) & 1),
                )
            });
            let system = FunctionalSystem::new(signature, bit_domain(), move |x| {
                let a = x[&in_a].as_int().expect("bit input");
                let b = x[&in_b].as_int().expect("bit input");
                let (y, z) = table(a, b);
                Ok([
                    (out_label_y.clone(), Value::Int(y)),
                    (out_label_z.clone(), Value::Int(z)),
                ]
                .into())
            });
            let labels = system.signature().labels();
            let connects = if rng.gen_bool(0.7) {
                vec![LabelPair::new(
                    format!("{name}.a"),
                    format!("{name}.y"),
                )]
            } else {
                vec![]
            };
            let exprs = random_diagram_exprs(&[labels], &connects, rng, variants);
            Ok(CoiTrial {
                atoms: vec![(name, system)],
                variants: exprs,
            })
        }
    }
}

#[cfg(test)]
mod tests;
