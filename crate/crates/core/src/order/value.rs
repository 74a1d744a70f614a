use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::Rat;
use crate::{Error, Result};

/// Interface label. Globally comparable for equality and ordering.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(name: impl AsRef<str>) -> Self {
        Label(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label::new(s)
    }
}

/// Identifier of a partial-order domain. Every element carries the id of
/// the domain it belongs to; comparing elements of different domains is a
/// hard error rather than `Incomparable`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DomainId(Arc<str>);

impl DomainId {
    pub fn new(name: impl AsRef<str>) -> Self {
        DomainId(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for DomainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for DomainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A single timed event: a value carried at an exact rational time.
///
/// The event order is `(v1, t1) ⪯ (v2, t2)` iff `t1 < t2` or the events are
/// identical; events at equal times with different values are incomparable.
/// The derived `Ord` (time-major) is only used for canonical storage.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TimedValue {
    pub time: Rat,
    pub value: i64,
}

impl TimedValue {
    pub fn new(value: i64, time: Rat) -> Self {
        TimedValue { time, value }
    }

    /// Strict event order: strictly earlier in time.
    pub fn precedes(&self, other: &TimedValue) -> bool {
        self.time < other.time
    }
}

impl fmt::Display for TimedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}@{})", self.value, self.time)
    }
}

/// A finite, well-ordered history of timed events: times are strictly
/// increasing, so every nonempty subset has a least element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct EventHistory {
    events: BTreeSet<TimedValue>,
}

impl EventHistory {
    pub fn empty() -> Self {
        EventHistory::default()
    }

    /// Builds a history, rejecting two events at the same time (such a set
    /// would contain an incomparable pair and not be well-ordered).
    pub fn new(events: impl IntoIterator<Item = TimedValue>) -> Result<Self> {
        let mut set: BTreeSet<TimedValue> = BTreeSet::new();
        for ev in events {
            if let Some(prev) = set.iter().find(|e| e.time == ev.time) {
                if *prev != ev {
                    return Err(Error::NotWellOrdered {
                        detail: format!("events {prev} and {ev} share time {}", ev.time),
                    });
                }
            }
            set.insert(ev);
        }
        Ok(EventHistory { events: set })
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> impl Iterator<Item = &TimedValue> {
        self.events.iter()
    }

    pub fn contains(&self, ev: &TimedValue) -> bool {
        self.events.contains(ev)
    }

    pub fn times(&self) -> Vec<Rat> {
        self.events.iter().map(|e| e.time.clone()).collect()
    }

    /// Extends the history by one event; the new event must be strictly
    /// later than everything present.
    pub fn extended(&self, ev: TimedValue) -> Result<Self> {
        if let Some(last) = self.events.iter().next_back() {
            if ev.time <= last.time {
                return Err(Error::NotWellOrdered {
                    detail: format!("extension {ev} is not after {last}"),
                });
            }
        }
        let mut events = self.events.clone();
        events.insert(ev);
        Ok(EventHistory { events })
    }

    /// Keeps only events strictly before `horizon`.
    pub fn truncated_before(&self, horizon: &Rat) -> Self {
        EventHistory {
            events: self
                .events
                .iter()
                .filter(|e| e.time < *horizon)
                .cloned()
                .collect(),
        }
    }

    /// Initial-segment order: `self ⊑ other` iff `other` contains all of
    /// `self` and every additional event is strictly later than all of
    /// `self`.
    pub fn is_initial_segment_of(&self, other: &EventHistory) -> bool {
        if !self.events.is_subset(&other.events) {
            return false;
        }
        let last = match self.events.iter().next_back() {
            Some(last) => last,
            None => return true,
        };
        other
            .events
            .iter()
            .filter(|e| !self.events.contains(e))
            .all(|extra| last.precedes(extra))
    }

    pub fn symmetric_difference(&self, other: &EventHistory) -> Vec<TimedValue> {
        self.events
            .symmetric_difference(&other.events)
            .cloned()
            .collect()
    }

    /// Merges two histories into one set; fails if the union has two
    /// distinct events at the same time.
    pub fn union(&self, other: &EventHistory) -> Result<Self> {
        EventHistory::new(self.events.iter().chain(other.events.iter()).cloned())
    }
}

impl fmt::Display for EventHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, ev) in self.events.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{ev}")?;
        }
        write!(f, "}}")
    }
}

/// Assignment of domain values to interface labels; tuples are ordered
/// componentwise.
pub type Assignment = BTreeMap<Label, Value>;

/// Universal carrier for the shipped domains. The derived `Ord` is a
/// canonical structural order used for sorting and map keys; the semantic
/// order of a domain lives in its [`super::PartialOrderSpec`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Value {
    Int(i64),
    Rat(Rat),
    Seq(Vec<i64>),
    Set(BTreeSet<i64>),
    Events(EventHistory),
    Tuple(Assignment),
}

impl Value {
    pub fn seq(tokens: impl IntoIterator<Item = i64>) -> Self {
        Value::Seq(tokens.into_iter().collect())
    }

    pub fn set(items: impl IntoIterator<Item = i64>) -> Self {
        Value::Set(items.into_iter().collect())
    }

    pub fn tuple(entries: impl IntoIterator<Item = (Label, Value)>) -> Self {
        Value::Tuple(entries.into_iter().collect())
    }

    pub fn as_seq(&self) -> Option<&[i64]> {
        match self {
            Value::Seq(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_events(&self) -> Option<&EventHistory> {
        match self {
            Value::Events(h) => Some(h),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&Assignment> {
        match self {
            Value::Tuple(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Rat(r) => write!(f, "{r}"),
            Value::Seq(s) => {
                write!(f, "[")?;
                for (i, t) in s.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "]")
            }
            Value::Set(s) => {
                write!(f, "{{")?;
                for (i, t) in s.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "}}")
            }
            Value::Events(h) => write!(f, "{h}"),
            Value::Tuple(t) => {
                write!(f, "(")?;
                for (i, (label, v)) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{label}: {v}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A domain value tagged with the id of the domain it lives in.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Element {
    pub domain: DomainId,
    pub value: Value,
}

impl Element {
    pub fn new(domain: DomainId, value: Value) -> Self {
        Element { domain, value }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
