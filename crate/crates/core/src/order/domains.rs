//! Shipped domain constructors. Each returns a [`PartialOrderSpec`] whose
//! order axioms are validated eagerly where the domain is small enough and
//! exercised by randomized tests otherwise.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{
    Comparison, DomainId, Enumeration, Label, PartialOrderSpec, Value, ENUMERATION_BOUND,
};
use crate::{Error, Result};

/// Builds a finite poset from an explicit element listing and a `leq`
/// predicate. Reflexivity, antisymmetry, and transitivity are checked
/// exhaustively over the listing.
pub fn finite_poset(
    id: impl AsRef<str>,
    elements: Vec<Value>,
    leq: impl Fn(&Value, &Value) -> bool,
) -> Result<PartialOrderSpec> {
    let id = DomainId::new(&id);
    let n = elements.len();
    let mut matrix = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            matrix[i][j] = leq(&elements[i], &elements[j]);
        }
    }
    for i in 0..n {
        if !matrix[i][i] {
            return Err(Error::InvalidOrder {
                detail: format!("{id}: relation is not reflexive at {}", elements[i]),
            });
        }
        for j in 0..n {
            if i != j && matrix[i][j] && matrix[j][i] {
                return Err(Error::InvalidOrder {
                    detail: format!(
                        "{id}: antisymmetry fails for {} and {}",
                        elements[i], elements[j]
                    ),
                });
            }
            for k in 0..n {
                if matrix[i][j] && matrix[j][k] && !matrix[i][k] {
                    return Err(Error::InvalidOrder {
                        detail: format!(
                            "{id}: transitivity fails through {}",
                            elements[j]
                        ),
                    });
                }
            }
        }
    }
    let least = (0..n)
        .find(|&i| (0..n).all(|j| matrix[i][j]))
        .map(|i| elements[i].clone());

    let index: HashMap<Value, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    if index.len() != n {
        return Err(Error::InvalidOrder {
            detail: format!("{id}: element listing contains duplicates"),
        });
    }
    let elements = Arc::new(elements);
    let matrix = Arc::new(matrix);

    let cmp_index = index.clone();
    let cmp_matrix = Arc::clone(&matrix);
    let contains_index = index;
    let mut spec = PartialOrderSpec::new(id.as_str(), move |a, b| {
        let (i, j) = match (cmp_index.get(a), cmp_index.get(b)) {
            (Some(i), Some(j)) => (*i, *j),
            _ => return Comparison::Incomparable,
        };
        match (cmp_matrix[i][j], cmp_matrix[j][i]) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::LessEq,
            (false, true) => Comparison::GreaterEq,
            (false, false) => Comparison::Incomparable,
        }
    })
    .with_contains(move |v| contains_index.contains_key(v))
    .with_enumeration(Enumeration::Elements(Arc::new(elements.to_vec())));
    if let Some(least) = least {
        spec = spec.with_least(least);
    }
    Ok(spec)
}

/// Totally ordered integer range `lo..=hi` under the usual order.
pub fn int_range_poset(id: impl AsRef<str>, lo: i64, hi: i64) -> PartialOrderSpec {
    assert!(lo <= hi, "empty integer range");
    let size = (hi - lo + 1) as u128;
    let enumeration = if size <= ENUMERATION_BOUND {
        Enumeration::Elements(Arc::new((lo..=hi).map(Value::Int).collect()))
    } else {
        Enumeration::TooLarge(size)
    };
    PartialOrderSpec::new(id, move |a, b| match (a, b) {
        (Value::Int(x), Value::Int(y)) => {
            if x == y {
                Comparison::Equal
            } else if x < y {
                Comparison::LessEq
            } else {
                Comparison::GreaterEq
            }
        }
        _ => Comparison::Incomparable,
    })
    .with_contains(move |v| matches!(v, Value::Int(n) if (lo..=hi).contains(n)))
    .with_least(Value::Int(lo))
    .with_enumeration(enumeration)
}

/// The two-point domain `0 ⪯ 1`.
pub fn bit_domain() -> PartialOrderSpec {
    int_range_poset("bits", 0, 1)
}

/// Subsets of the given universe ordered by inclusion; least element is the
/// empty set.
pub fn powerset_domain(id: impl AsRef<str>, universe: &[i64]) -> PartialOrderSpec {
    let universe: BTreeSet<i64> = universe.iter().copied().collect();
    let n = universe.len();
    assert!(n < 128, "powerset universe too large");
    let size = 1u128 << n;
    let enumeration = if size <= ENUMERATION_BOUND {
        let items: Vec<i64> = universe.iter().copied().collect();
        let mut subsets = Vec::with_capacity(size as usize);
        for mask in 0..(1u128 << n) {
            let subset: BTreeSet<i64> = items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, v)| *v)
                .collect();
            subsets.push(Value::Set(subset));
        }
        subsets.sort();
        Enumeration::Elements(Arc::new(subsets))
    } else {
        Enumeration::TooLarge(size)
    };
    let contains_universe = universe.clone();
    PartialOrderSpec::new(id, |a, b| match (a, b) {
        (Value::Set(x), Value::Set(y)) => match (x.is_subset(y), y.is_subset(x)) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::LessEq,
            (false, true) => Comparison::GreaterEq,
            (false, false) => Comparison::Incomparable,
        },
        _ => Comparison::Incomparable,
    })
    .with_contains(move |v| matches!(v, Value::Set(s) if s.is_subset(&contains_universe)))
    .with_least(Value::set([]))
    .with_enumeration(enumeration)
}

/// Sentinel for the greatest element of [`int_chain_with_limit`].
pub const INT_CHAIN_LIMIT: i64 = i64::MAX;

/// The chain `0 < 1 < 2 < …` extended with a greatest element
/// [`INT_CHAIN_LIMIT`], which is also the supremum of every ω-chain that
/// does not stabilize. This is the smallest domain on which a limit jump
/// makes progress.
pub fn int_chain_with_limit(id: impl AsRef<str>) -> PartialOrderSpec {
    PartialOrderSpec::new(id, |a, b| match (a, b) {
        (Value::Int(x), Value::Int(y)) => {
            if x == y {
                Comparison::Equal
            } else if x < y {
                Comparison::LessEq
            } else {
                Comparison::GreaterEq
            }
        }
        _ => Comparison::Incomparable,
    })
    .with_contains(|v| matches!(v, Value::Int(n) if *n >= 0))
    .with_least(Value::Int(0))
    .with_omega_sup(|_| Ok(Value::Int(INT_CHAIN_LIMIT)))
}

/// Componentwise order on tuples over `labels`, all components drawn from
/// `base`. The least element, enumeration, and ω-chain rule lift from the
/// base domain componentwise.
pub fn tuple_order(base: &PartialOrderSpec, labels: &BTreeSet<Label>) -> PartialOrderSpec {
    let label_list: Vec<Label> = labels.iter().cloned().collect();
    let id = format!(
        "tuple({} over {})",
        label_list
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(","),
        base.id()
    );

    let enumeration = match base.enumeration() {
        Enumeration::Elements(values) => {
            let per = values.len() as u128;
            let size = per.checked_pow(label_list.len() as u32);
            match size {
                Some(size) if size <= ENUMERATION_BOUND => {
                    let mut tuples: Vec<Value> = vec![Value::tuple([])];
                    for label in &label_list {
                        let mut next = Vec::with_capacity(tuples.len() * values.len());
                        for t in &tuples {
                            let map = t.as_tuple().expect("tuple under construction");
                            for v in values.iter() {
                                let mut map = map.clone();
                                map.insert(label.clone(), v.clone());
                                next.push(Value::Tuple(map));
                            }
                        }
                        tuples = next;
                    }
                    tuples.sort();
                    Enumeration::Elements(Arc::new(tuples))
                }
                Some(size) => Enumeration::TooLarge(size),
                None => Enumeration::TooLarge(u128::MAX),
            }
        }
        Enumeration::TooLarge(per) => Enumeration::TooLarge(*per),
        Enumeration::Unavailable => Enumeration::Unavailable,
    };

    let cmp_base = base.clone();
    let cmp_labels = label_list.clone();
    let contains_base = base.clone();
    let contains_labels: BTreeSet<Label> = labels.clone();
    let omega_base = base.clone();
    let omega_labels = label_list.clone();

    let mut spec = PartialOrderSpec::new(&id, move |a, b| {
        let (x, y) = match (a.as_tuple(), b.as_tuple()) {
            (Some(x), Some(y)) => (x, y),
            _ => return Comparison::Incomparable,
        };
        let mut all_le = true;
        let mut all_ge = true;
        for label in &cmp_labels {
            let (xv, yv) = match (x.get(label), y.get(label)) {
                (Some(xv), Some(yv)) => (xv, yv),
                _ => return Comparison::Incomparable,
            };
            match cmp_base.compare_values(xv, yv) {
                Comparison::Equal => {}
                Comparison::LessEq => all_ge = false,
                Comparison::GreaterEq => all_le = false,
                Comparison::Incomparable => return Comparison::Incomparable,
            }
        }
        match (all_le, all_ge) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::LessEq,
            (false, true) => Comparison::GreaterEq,
            (false, false) => Comparison::Incomparable,
        }
    })
    .with_contains(move |v| match v.as_tuple() {
        Some(map) => {
            map.keys().cloned().collect::<BTreeSet<_>>() == contains_labels
                && map.values().all(|v| contains_base.contains(v))
        }
        None => false,
    })
    .with_enumeration(enumeration)
    .with_omega_sup(move |iterates| {
        let mut sup = std::collections::BTreeMap::new();
        for label in &omega_labels {
            let component: Vec<Value> = iterates
                .iter()
                .map(|t| {
                    t.as_tuple()
                        .and_then(|m| m.get(label))
                        .cloned()
                        .ok_or_else(|| Error::InvalidOrder {
                            detail: format!("iterate misses component {label}"),
                        })
                })
                .collect::<Result<_>>()?;
            let stabilized = component.len() >= 2
                && component[component.len() - 1] == component[component.len() - 2];
            let value = if stabilized || component.len() == 1 {
                component.last().cloned().expect("nonempty component chain")
            } else {
                let elems: Vec<_> = component
                    .into_iter()
                    .map(|v| omega_base.element(v))
                    .collect::<Result<_>>()?;
                omega_base.omega_sup(&elems)?.value
            };
            sup.insert(label.clone(), value);
        }
        Ok(Value::Tuple(sup))
    });

    if let Ok(base_least) = base.least() {
        let least = Value::tuple(
            label_list
                .iter()
                .map(|l| (l.clone(), base_least.value.clone())),
        );
        spec = spec.with_least(least);
    }
    spec
}

