//! Fixed-point selection policies.

use std::fmt;

use super::{fixed_point_set, FunctionalSystem};
use crate::algebra::LabelPair;
use crate::fixpoint::{causal_unique_fp, kleene_lfp, monotone_lfp, Fuel};
use crate::order::{Assignment, Comparison, Label, Value};
use crate::{Error, Result};

/// Policy selecting one member of the fixed-point set Φ for a connection.
/// Every chosen value is re-checked by the connection machinery, so an
/// unsound policy surfaces as an error rather than a wrong output.
#[derive(Clone)]
pub enum Chooser {
    /// Least fixed point via Kleene iteration from the domain's least
    /// element (no limit jumps).
    LeastViaKleene(Fuel),
    /// Least fixed point via iteration with limit jumps as permitted by the
    /// fuel.
    LeastViaMonotone(Fuel),
    /// The unique fixed point of a causal feedback, via min-extension
    /// iteration on event histories.
    UniqueViaCausal(Fuel),
    /// First listed value that is a fixed point. Implements preference
    /// orders such as "0 is preferred to 1".
    PreferListed(Vec<Value>),
    /// Least element of the brute-force fixed-point set.
    BruteForceLeast,
}

impl fmt::Debug for Chooser {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chooser::LeastViaKleene(_) => write!(f, "LeastViaKleene"),
            Chooser::LeastViaMonotone(_) => write!(f, "LeastViaMonotone"),
            Chooser::UniqueViaCausal(_) => write!(f, "UniqueViaCausal"),
            Chooser::PreferListed(vs) => write!(f, "PreferListed({vs:?})"),
            Chooser::BruteForceLeast => write!(f, "BruteForceLeast"),
        }
    }
}

impl Chooser {
    /// Selects a fixed point of `v ↦ s(x ∪ {i: v})(o)`.
    pub fn choose(
        &self,
        s: &FunctionalSystem,
        i: &Label,
        o: &Label,
        context: &Assignment,
    ) -> Result<Value> {
        let feedback = |v: &Value| -> Result<Value> {
            let mut x = context.clone();
            x.insert(i.clone(), v.clone());
            s.evaluate_at(&x, o)
        };
        match self {
            Chooser::LeastViaKleene(fuel) => {
                let order = s.domain();
                let out = kleene_lfp(
                    |e| feedback(&e.value).and_then(|v| order.element(v)),
                    order,
                    fuel,
                )?;
                Ok(out.into_converged()?.value)
            }
            Chooser::LeastViaMonotone(fuel) => {
                let order = s.domain();
                let out = monotone_lfp(
                    |e| feedback(&e.value).and_then(|v| order.element(v)),
                    order,
                    fuel,
                )?;
                Ok(out.into_converged()?.value)
            }
            Chooser::UniqueViaCausal(fuel) => {
                let order = s.domain();
                let out = causal_unique_fp(
                    |h| {
                        match feedback(&Value::Events(h.clone()))? {
                            Value::Events(out) => Ok(out),
                            other => Err(Error::TransferFailed {
                                detail: format!(
                                    "causal feedback produced non-event value {other}"
                                ),
                            }),
                        }
                    },
                    order,
                    fuel,
                )?;
                Ok(out.into_converged()?.value)
            }
            Chooser::PreferListed(preferences) => {
                for v in preferences {
                    if feedback(v)? == *v {
                        return Ok(v.clone());
                    }
                }
                Err(Error::NoFixedPoint {
                    pair: LabelPair::new(i.clone(), o.clone()),
                    context: Value::Tuple(context.clone()).to_string(),
                })
            }
            Chooser::BruteForceLeast => {
                let fixed = fixed_point_set(s, i, o, context)?;
                if fixed.is_empty() {
                    return Err(Error::NoFixedPoint {
                        pair: LabelPair::new(i.clone(), o.clone()),
                        context: Value::Tuple(context.clone()).to_string(),
                    });
                }
                let order = s.domain();
                let least = fixed.iter().find(|candidate| {
                    fixed.iter().all(|other| {
                        matches!(
                            order.compare_values(candidate, other),
                            Comparison::LessEq | Comparison::Equal
                        )
                    })
                });
                match least {
                    Some(least) => Ok(least.clone()),
                    None => Err(Error::NoLeastFixedPoint {
                        pair: LabelPair::new(i.clone(), o.clone()),
                        minimal: fixed.iter().map(|v| v.to_string()).collect(),
                    }),
                }
            }
        }
    }
}
