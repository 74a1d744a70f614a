use std::collections::BTreeSet;
use std::sync::Arc;

use crate::order::{Comparison, Enumeration, PartialOrderSpec, Value, ENUMERATION_BOUND};
use crate::Error;

/// Token sequences over a finite alphabet under the prefix order, with an
/// optional length bound. With a bound `L`, every chain has length at most
/// `L + 1`; without one the domain is the "finite but unbounded" sequence
/// space, which is not an ω-CPO — the supremum of a strictly growing
/// ω-chain would be infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqDomain {
    alphabet: BTreeSet<i64>,
    max_len: Option<usize>,
}

impl SeqDomain {
    pub fn bounded(alphabet: &[i64], max_len: usize) -> Self {
        assert!(!alphabet.is_empty(), "alphabet must be nonempty");
        SeqDomain {
            alphabet: alphabet.iter().copied().collect(),
            max_len: Some(max_len),
        }
    }

    pub fn unbounded(alphabet: &[i64]) -> Self {
        assert!(!alphabet.is_empty(), "alphabet must be nonempty");
        SeqDomain {
            alphabet: alphabet.iter().copied().collect(),
            max_len: None,
        }
    }

    pub fn alphabet(&self) -> &BTreeSet<i64> {
        &self.alphabet
    }

    pub fn max_len(&self) -> Option<usize> {
        self.max_len
    }

    pub fn id_string(&self) -> String {
        let alphabet = self
            .alphabet
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(",");
        match self.max_len {
            Some(l) => format!("seq{{{alphabet}}}<={l}"),
            None => format!("seq{{{alphabet}}}"),
        }
    }

    pub fn contains_seq(&self, tokens: &[i64]) -> bool {
        tokens.iter().all(|t| self.alphabet.contains(t))
            && self.max_len.map_or(true, |l| tokens.len() <= l)
    }

    /// Cuts a sequence at the length bound; the flag records whether
    /// anything was dropped.
    pub fn truncate(&self, mut tokens: Vec<i64>) -> (Vec<i64>, bool) {
        match self.max_len {
            Some(l) if tokens.len() > l => {
                tokens.truncate(l);
                (tokens, true)
            }
            _ => (tokens, false),
        }
    }

    /// The order-theoretic view of this domain.
    pub fn order(&self) -> PartialOrderSpec {
        make_seq_domain_from(self.clone())
    }
}

fn prefix_compare(a: &[i64], b: &[i64]) -> Comparison {
    let common = a.len().min(b.len());
    if a[..common] != b[..common] {
        return Comparison::Incomparable;
    }
    match a.len().cmp(&b.len()) {
        std::cmp::Ordering::Equal => Comparison::Equal,
        std::cmp::Ordering::Less => Comparison::LessEq,
        std::cmp::Ordering::Greater => Comparison::GreaterEq,
    }
}

/// Prefix-ordered sequence domain as a [`PartialOrderSpec`]: least element
/// `[]`, supremum/infimum of chains by prefix maximum/minimum, enumeration
/// when the bounded domain is small enough.
pub fn make_seq_domain(alphabet: &[i64], max_len: Option<usize>) -> PartialOrderSpec {
    let domain = match max_len {
        Some(l) => SeqDomain::bounded(alphabet, l),
        None => SeqDomain::unbounded(alphabet),
    };
    make_seq_domain_from(domain)
}

fn make_seq_domain_from(domain: SeqDomain) -> PartialOrderSpec {
    let id = domain.id_string();
    let enumeration = match domain.max_len {
        None => Enumeration::Unavailable,
        Some(l) => {
            let base = domain.alphabet.len() as u128;
            let mut size: u128 = 0;
            let mut power: u128 = 1;
            let mut overflow = false;
            for _ in 0..=l {
                size = match size.checked_add(power) {
                    Some(s) => s,
                    None => {
                        overflow = true;
                        break;
                    }
                };
                power = match power.checked_mul(base) {
                    Some(p) => p,
                    None => {
                        overflow = true;
                        break;
                    }
                };
            }
            if overflow || size > ENUMERATION_BOUND {
                Enumeration::TooLarge(if overflow { u128::MAX } else { size })
            } else {
                let tokens: Vec<i64> = domain.alphabet.iter().copied().collect();
                let mut all: Vec<Value> = vec![Value::seq([])];
                let mut frontier: Vec<Vec<i64>> = vec![vec![]];
                for _ in 0..l {
                    let mut next = Vec::new();
                    for seq in &frontier {
                        for t in &tokens {
                            let mut s = seq.clone();
                            s.push(*t);
                            all.push(Value::Seq(s.clone()));
                            next.push(s);
                        }
                    }
                    frontier = next;
                }
                all.sort();
                Enumeration::Elements(Arc::new(all))
            }
        }
    };

    let contains_domain = domain.clone();
    let omega_id = id.clone();
    let omega_reason = match domain.max_len {
        Some(_) => "iterates keep growing below the length bound; the ω-limit is not \
                    determined by a finite prefix of the chain",
        None => "the unbounded sequence domain is not an ω-CPO: the supremum of a \
                 strictly growing chain would be an infinite sequence",
    };
    PartialOrderSpec::new(&id, |a, b| match (a, b) {
        (Value::Seq(x), Value::Seq(y)) => prefix_compare(x, y),
        _ => Comparison::Incomparable,
    })
    .with_contains(move |v| match v {
        Value::Seq(s) => contains_domain.contains_seq(s),
        _ => false,
    })
    .with_least(Value::seq([]))
    .with_enumeration(enumeration)
    .with_omega_sup(move |_| {
        Err(Error::NoSupremum {
            domain: crate::order::DomainId::new(&omega_id),
            reason: omega_reason.to_string(),
        })
    })
}
