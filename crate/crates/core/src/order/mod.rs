//! Partial orders, chains, suprema/infima, well-ordering checks, and
//! sampled monotonicity checking.
//!
//! A [`PartialOrderSpec`] bundles a comparison operation with a domain id,
//! an optional least element, an optional bounded enumeration (for
//! brute-force oracles), and an optional rule for the supremum of a
//! non-stabilized iterate chain (the desk-scale stand-in for limits of
//! ω-chains). Elements are immutable [`Value`]s tagged with the domain id;
//! cross-domain comparison is a hard error.

mod domains;
mod rat;
mod value;

pub use domains::{
    bit_domain, finite_poset, int_chain_with_limit, int_range_poset, powerset_domain, tuple_order,
    INT_CHAIN_LIMIT,
};
pub use rat::Rat;
pub use value::{Assignment, DomainId, Element, EventHistory, Label, TimedValue, Value};

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Outcome of comparing two elements of one domain.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Comparison {
    LessEq,
    GreaterEq,
    Equal,
    Incomparable,
}

type CompareFn = dyn Fn(&Value, &Value) -> Comparison + Send + Sync;
type ContainsFn = dyn Fn(&Value) -> bool + Send + Sync;
type OmegaSupFn = dyn Fn(&[Value]) -> Result<Value> + Send + Sync;

/// Default bound on brute-force enumerations.
pub const ENUMERATION_BOUND: u128 = 10_000;

/// How (and whether) a domain can be exhaustively enumerated.
#[derive(Clone)]
pub enum Enumeration {
    /// No enumeration rule is known for the domain.
    Unavailable,
    /// The domain is finite but its size exceeds [`ENUMERATION_BOUND`].
    TooLarge(u128),
    Elements(Arc<Vec<Value>>),
}

/// A partial order with the hooks the rest of the crate needs.
///
/// Cloning is cheap; clones are handles onto the same domain.
#[derive(Clone)]
pub struct PartialOrderSpec {
    id: DomainId,
    compare_fn: Arc<CompareFn>,
    contains_fn: Arc<ContainsFn>,
    least: Option<Value>,
    enumeration: Enumeration,
    omega_sup_fn: Option<Arc<OmegaSupFn>>,
}

impl fmt::Debug for PartialOrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialOrderSpec({})", self.id)
    }
}

impl PartialOrderSpec {
    pub fn new(
        id: impl AsRef<str>,
        compare: impl Fn(&Value, &Value) -> Comparison + Send + Sync + 'static,
    ) -> Self {
        PartialOrderSpec {
            id: DomainId::new(id),
            compare_fn: Arc::new(compare),
            contains_fn: Arc::new(|_| true),
            least: None,
            enumeration: Enumeration::Unavailable,
            omega_sup_fn: None,
        }
    }

    pub fn with_least(mut self, least: Value) -> Self {
        self.least = Some(least);
        self
    }

    pub fn with_contains(
        mut self,
        contains: impl Fn(&Value) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.contains_fn = Arc::new(contains);
        self
    }

    pub fn with_enumeration(mut self, enumeration: Enumeration) -> Self {
        self.enumeration = enumeration;
        self
    }

    /// Installs the rule for the supremum of an ω-chain whose computed
    /// prefix has not stabilized. Without a rule such a request fails with
    /// `NoSupremum`.
    pub fn with_omega_sup(
        mut self,
        omega_sup: impl Fn(&[Value]) -> Result<Value> + Send + Sync + 'static,
    ) -> Self {
        self.omega_sup_fn = Some(Arc::new(omega_sup));
        self
    }

    pub fn id(&self) -> &DomainId {
        &self.id
    }

    pub fn same_domain(&self, other: &PartialOrderSpec) -> bool {
        self.id == other.id
    }

    pub fn contains(&self, value: &Value) -> bool {
        (self.contains_fn)(value)
    }

    /// Tags a value as an element of this domain, validating membership.
    pub fn element(&self, value: Value) -> Result<Element> {
        if !self.contains(&value) {
            return Err(Error::NotInDomain {
                domain: self.id.clone(),
                value: value.to_string(),
            });
        }
        Ok(Element::new(self.id.clone(), value))
    }

    pub fn least(&self) -> Result<Element> {
        match &self.least {
            Some(v) => Ok(Element::new(self.id.clone(), v.clone())),
            None => Err(Error::NoLeastElement {
                domain: self.id.clone(),
            }),
        }
    }

    fn check_tag(&self, e: &Element) -> Result<()> {
        if e.domain != self.id {
            return Err(Error::DomainMismatch {
                expected: self.id.clone(),
                found: e.domain.clone(),
            });
        }
        Ok(())
    }

    pub fn compare(&self, a: &Element, b: &Element) -> Result<Comparison> {
        self.check_tag(a)?;
        self.check_tag(b)?;
        Ok((self.compare_fn)(&a.value, &b.value))
    }

    /// Raw comparison on untagged values; used by derived domains that
    /// embed base-domain values (tuples, process histories).
    pub fn compare_values(&self, a: &Value, b: &Value) -> Comparison {
        (self.compare_fn)(a, b)
    }

    pub fn leq_values(&self, a: &Value, b: &Value) -> bool {
        matches!(
            self.compare_values(a, b),
            Comparison::LessEq | Comparison::Equal
        )
    }

    /// `a ⪯ b`.
    pub fn leq(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(matches!(
            self.compare(a, b)?,
            Comparison::LessEq | Comparison::Equal
        ))
    }

    /// Builds a chain from the given elements, sorting them nondecreasingly
    /// under this order; fails if two elements are incomparable.
    pub fn chain(&self, elements: Vec<Element>) -> Result<Chain> {
        let mut sorted: Vec<Element> = Vec::with_capacity(elements.len());
        for e in elements {
            self.check_tag(&e)?;
            let mut at = sorted.len();
            for (i, existing) in sorted.iter().enumerate() {
                match self.compare(&e, existing)? {
                    Comparison::LessEq => {
                        at = i;
                        break;
                    }
                    Comparison::Equal | Comparison::GreaterEq => continue,
                    Comparison::Incomparable => {
                        return Err(Error::NotAChain {
                            left: e.to_string(),
                            right: existing.to_string(),
                        })
                    }
                }
            }
            // the insertion point keeps the list sorted, but incomparability
            // with later elements must still be ruled out
            for existing in &sorted[at..] {
                if self.compare(&e, existing)? == Comparison::Incomparable {
                    return Err(Error::NotAChain {
                        left: e.to_string(),
                        right: existing.to_string(),
                    });
                }
            }
            sorted.insert(at, e);
        }
        Ok(Chain { elements: sorted })
    }

    /// Least upper bound of a finite chain. The empty chain yields the
    /// least element of the domain.
    pub fn sup_chain(&self, chain: &Chain) -> Result<Element> {
        match chain.elements.last() {
            None => self.least().map_err(|_| Error::NoSupremum {
                domain: self.id.clone(),
                reason: "empty chain in a domain without a least element".into(),
            }),
            Some(top) => {
                for e in &chain.elements {
                    self.check_tag(e)?;
                    if !self.contains(&e.value) {
                        return Err(Error::NoSupremum {
                            domain: self.id.clone(),
                            reason: format!("chain member {e} lies outside the domain"),
                        });
                    }
                }
                Ok(top.clone())
            }
        }
    }

    /// Greatest lower bound of a nonempty finite chain.
    pub fn inf_chain(&self, chain: &Chain) -> Result<Element> {
        match chain.elements.first() {
            None => Err(Error::EmptyChain),
            Some(bottom) => {
                for e in &chain.elements {
                    self.check_tag(e)?;
                    if !self.contains(&e.value) {
                        return Err(Error::NoInfimum {
                            domain: self.id.clone(),
                            reason: format!("chain member {e} lies outside the domain"),
                        });
                    }
                }
                Ok(bottom.clone())
            }
        }
    }

    /// Supremum of the ω-chain a fuel-bounded iteration began to compute.
    /// If the recorded iterates have stabilized the answer is their last
    /// member; otherwise the domain's ω-rule decides, and domains without
    /// one report `NoSupremum`.
    pub fn omega_sup(&self, iterates: &[Element]) -> Result<Element> {
        for e in iterates {
            self.check_tag(e)?;
        }
        match iterates {
            [] => self.least(),
            [.., a, b] if a == b => Ok(b.clone()),
            [single] => Ok(single.clone()),
            _ => match &self.omega_sup_fn {
                Some(rule) => {
                    let values: Vec<Value> =
                        iterates.iter().map(|e| e.value.clone()).collect();
                    rule(&values).map(|v| Element::new(self.id.clone(), v))
                }
                None => Err(Error::NoSupremum {
                    domain: self.id.clone(),
                    reason: "iterate chain did not stabilize and the domain has no \
                             rule for ω-chain suprema"
                        .into(),
                }),
            },
        }
    }

    /// True iff every nonempty subset of the finite set has a least
    /// element; for finite sets this is equivalent to being totally
    /// ordered.
    pub fn is_well_ordered(&self, atoms: &[Element]) -> Result<bool> {
        for (i, a) in atoms.iter().enumerate() {
            for b in &atoms[i + 1..] {
                if self.compare(a, b)? == Comparison::Incomparable {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn enumeration(&self) -> &Enumeration {
        &self.enumeration
    }

    /// The full element listing of an enumerable domain, or an error
    /// explaining why brute force is refused.
    pub fn enumerated(&self) -> Result<Vec<Element>> {
        match &self.enumeration {
            Enumeration::Unavailable => Err(Error::EnumerationUnavailable {
                domain: self.id.clone(),
            }),
            Enumeration::TooLarge(size) => Err(Error::EnumerationTooLarge {
                domain: self.id.clone(),
                size: *size,
                bound: ENUMERATION_BOUND,
            }),
            Enumeration::Elements(values) => Ok(values
                .iter()
                .map(|v| Element::new(self.id.clone(), v.clone()))
                .collect()),
        }
    }
}

/// A finite nondecreasing list of pairwise-comparable elements.
#[derive(Clone, Debug)]
pub struct Chain {
    elements: Vec<Element>,
}

impl Chain {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// One monotonicity violation: `input_low ⪯ input_high` but the outputs do
/// not compare.
#[derive(Clone, Debug)]
pub struct MonotoneViolation {
    pub input_low: Element,
    pub input_high: Element,
    pub output_low: Element,
    pub output_high: Element,
}

/// Result of sampling a function for monotonicity. An empty violation list
/// means "no counterexample found", never a proof.
#[derive(Clone, Debug, Default)]
pub struct MonotoneReport {
    pub checked: usize,
    pub skipped_unordered: usize,
    pub violations: Vec<MonotoneViolation>,
}

impl MonotoneReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `f` on sample pairs `(x, y)` with `x ⪯ y`, reporting every pair
/// whose images fail `f(x) ⪯ f(y)`. Pairs that are not actually ordered
/// are skipped and counted.
pub fn check_monotone(
    input_order: &PartialOrderSpec,
    output_order: &PartialOrderSpec,
    f: impl Fn(&Element) -> Result<Element>,
    samples: &[(Element, Element)],
) -> Result<MonotoneReport> {
    let mut report = MonotoneReport::default();
    for (low, high) in samples {
        if !input_order.leq(low, high)? {
            report.skipped_unordered += 1;
            continue;
        }
        let out_low = f(low)?;
        let out_high = f(high)?;
        report.checked += 1;
        if !output_order.leq(&out_low, &out_high)? {
            report.violations.push(MonotoneViolation {
                input_low: low.clone(),
                input_high: high.clone(),
                output_low: out_low,
                output_high: out_high,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
