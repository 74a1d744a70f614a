//! Composition expressions: term trees over atomic systems with `Par` and
//! `Connect` nodes, evaluated bottom-up against any system algebra.

use std::fmt;

use super::{LabelPair, SystemAlgebra};
use crate::{Error, Result};

/// A composition order made explicit. Leaves index into an environment of
/// atomic systems supplied at evaluation time.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CompositionExpr {
    Leaf(usize),
    Par(Box<CompositionExpr>, Box<CompositionExpr>),
    Connect(LabelPair, Box<CompositionExpr>),
}

impl CompositionExpr {
    pub fn leaf(index: usize) -> Self {
        CompositionExpr::Leaf(index)
    }

    pub fn par(left: CompositionExpr, right: CompositionExpr) -> Self {
        CompositionExpr::Par(Box::new(left), Box::new(right))
    }

    pub fn connect(pair: LabelPair, body: CompositionExpr) -> Self {
        CompositionExpr::Connect(pair, Box::new(body))
    }

    /// Renders with the given atom names substituted for leaf indices.
    pub fn render(&self, names: &[String]) -> String {
        match self {
            CompositionExpr::Leaf(i) => names
                .get(*i)
                .cloned()
                .unwrap_or_else(|| format!("#{i}")),
            CompositionExpr::Par(l, r) => {
                format!("({} ∥ {})", l.render(names), r.render(names))
            }
            CompositionExpr::Connect(pair, body) => {
                format!("γ{}({})", pair, body.render(names))
            }
        }
    }
}

impl fmt::Display for CompositionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

/// Bottom-up evaluation. Errors carry the path of the offending subterm,
/// rendered as e.g. `par.left/connect/leaf#2`.
pub fn evaluate_expr<A: SystemAlgebra>(
    algebra: &A,
    atoms: &[A::System],
    expr: &CompositionExpr,
) -> Result<A::System> {
    eval_at(algebra, atoms, expr, "root")
}

fn eval_at<A: SystemAlgebra>(
    algebra: &A,
    atoms: &[A::System],
    expr: &CompositionExpr,
    path: &str,
) -> Result<A::System> {
    let wrap = |e: Error| match e {
        already @ Error::EvalFailed { .. } => already,
        other => Error::EvalFailed {
            path: path.to_string(),
            source: Box::new(other),
        },
    };
    match expr {
        CompositionExpr::Leaf(i) => atoms.get(*i).cloned().ok_or_else(|| Error::EvalFailed {
            path: format!("{path}/leaf#{i}"),
            source: Box::new(Error::MalformedNetwork {
                detail: format!("leaf index {i} outside environment of {}", atoms.len()),
            }),
        }),
        CompositionExpr::Par(l, r) => {
            let left = eval_at(algebra, atoms, l, &format!("{path}/par.left"))?;
            let right = eval_at(algebra, atoms, r, &format!("{path}/par.right"))?;
            algebra.par(&left, &right).map_err(wrap)
        }
        CompositionExpr::Connect(pair, body) => {
            let inner = eval_at(algebra, atoms, body, &format!("{path}/connect"))?;
            algebra.connect(pair, &inner).map_err(wrap)
        }
    }
}
