//! The broadcast-impossibility witness.
//!
//! Four boxes `s0`, `s1`, `r1`, `r2` with two labeled ports each are
//! composed into the ring
//!
//! ```text
//! t = γ{r1.2,r2.2}(γ{s1.2,r2.1}(γ{s0.1,r1.1}(γ{s0.2,s1.1}(s0 ∥ s1 ∥ r1 ∥ r2))))
//! ```
//!
//! and the witness verifies that `t` also arises from three decompositions:
//! grouping the two senders (membership in S₌), grouping `s1` with `r2`
//! (membership in S₀), and grouping `s0` with `r1` (membership in S₁). In
//! the port-graph model all four expressions flatten to the identical
//! graph; a failing check signals an algebra-implementation bug.

use super::{evaluate_expr, CompositionExpr, LabelPair, PortGraph, SystemAlgebra};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct WitnessCheck {
    pub name: String,
    pub holds: bool,
    pub composed: String,
    pub reference: String,
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub checks: Vec<WitnessCheck>,
}

impl WitnessReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}\n",
                if c.holds { "ok " } else { "FAIL" },
                c.name
            ));
        }
        out
    }

    fn ensure(self) -> Result<WitnessReport> {
        if self.all_hold() {
            Ok(self)
        } else {
            Err(Error::WitnessFailed {
                failed: self
                    .checks
                    .iter()
                    .filter(|c| !c.holds)
                    .map(|c| c.name.clone())
                    .collect(),
            })
        }
    }
}

/// Runs the witness on the stock port-graph algebra with the canonical
/// eight labels.
pub fn broadcast_impossibility_witness() -> Result<WitnessReport> {
    broadcast_witness_with(&super::PortGraphAlgebra, |name| name.to_string())
}

/// Runs the witness on any port-graph-backed algebra, with labels renamed
/// through `relabel` (used to rerun the witness under label permutations
/// and to exercise fault-injected algebra variants). The reference
/// composition `t` is evaluated with the stock port-graph semantics; the
/// three decompositions are evaluated with `algebra`, so any deviation in
/// its `par`/`connect` bookkeeping surfaces as a failed equality.
pub fn broadcast_witness_with<A>(
    algebra: &A,
    relabel: impl Fn(&str) -> String,
) -> Result<WitnessReport>
where
    A: SystemAlgebra<System = PortGraph>,
{
    let lbl = |name: &str| relabel(name);
    let atom = |box_name: &str| -> Result<PortGraph> {
        PortGraph::atomic(
            box_name,
            &[
                (lbl(&format!("{box_name}.1")), "1".to_string()),
                (lbl(&format!("{box_name}.2")), "2".to_string()),
            ],
        )
    };
    // environment: 0=s0, 1=s1, 2=r1, 3=r2
    let atoms = vec![atom("s0")?, atom("s1")?, atom("r1")?, atom("r2")?];
    let pair = |a: &str, b: &str| LabelPair::new(lbl(a), lbl(b));

    let par_all = |order: &[usize]| {
        order[1..].iter().fold(
            CompositionExpr::leaf(order[0]),
            |acc, i| CompositionExpr::par(acc, CompositionExpr::leaf(*i)),
        )
    };

    // t = γ{r1.2,r2.2}(γ{s1.2,r2.1}(γ{s0.1,r1.1}(γ{s0.2,s1.1}(s0∥s1∥r1∥r2))))
    let t_expr = CompositionExpr::connect(
        pair("r1.2", "r2.2"),
        CompositionExpr::connect(
            pair("s1.2", "r2.1"),
            CompositionExpr::connect(
                pair("s0.1", "r1.1"),
                CompositionExpr::connect(pair("s0.2", "s1.1"), par_all(&[0, 1, 2, 3])),
            ),
        ),
    );
    let t = evaluate_expr(&super::PortGraphAlgebra, &atoms, &t_expr)?;

    // S=: e = γ{s0.2,s1.1}(s0 ∥ s1), connected to r1 and r2 via e's free
    // labels e¹ = s0.1 and e² = s1.2
    let e_expr = CompositionExpr::connect(
        pair("s0.2", "s1.1"),
        CompositionExpr::par(CompositionExpr::leaf(0), CompositionExpr::leaf(1)),
    );
    let s_eq_expr = CompositionExpr::connect(
        pair("r1.2", "r2.2"),
        CompositionExpr::connect(
            pair("s1.2", "r2.1"),
            CompositionExpr::connect(
                pair("s0.1", "r1.1"),
                CompositionExpr::par(
                    CompositionExpr::par(e_expr, CompositionExpr::leaf(2)),
                    CompositionExpr::leaf(3),
                ),
            ),
        ),
    );

    // S0: ê = γ{s1.2,r2.1}(s1 ∥ r2), with ê¹ = s1.1 and ê² = r2.2
    let e_hat_expr = CompositionExpr::connect(
        pair("s1.2", "r2.1"),
        CompositionExpr::par(CompositionExpr::leaf(1), CompositionExpr::leaf(3)),
    );
    let s0_expr = CompositionExpr::connect(
        pair("r1.2", "r2.2"),
        CompositionExpr::connect(
            pair("s0.2", "s1.1"),
            CompositionExpr::connect(
                pair("s0.1", "r1.1"),
                CompositionExpr::par(
                    CompositionExpr::par(e_hat_expr, CompositionExpr::leaf(0)),
                    CompositionExpr::leaf(2),
                ),
            ),
        ),
    );

    // S1: ẽ = γ{s0.1,r1.1}(s0 ∥ r1), with ẽ¹ = s0.2 and ẽ² = r1.2
    let e_tilde_expr = CompositionExpr::connect(
        pair("s0.1", "r1.1"),
        CompositionExpr::par(CompositionExpr::leaf(0), CompositionExpr::leaf(2)),
    );
    let s1_expr = CompositionExpr::connect(
        pair("r1.2", "r2.2"),
        CompositionExpr::connect(
            pair("s1.2", "r2.1"),
            CompositionExpr::connect(
                pair("s0.2", "s1.1"),
                CompositionExpr::par(
                    CompositionExpr::par(e_tilde_expr, CompositionExpr::leaf(1)),
                    CompositionExpr::leaf(3),
                ),
            ),
        ),
    );

    let mut checks = Vec::new();
    for (name, expr) in [
        ("t ∈ S= (senders grouped as the dishonest sender)", s_eq_expr),
        ("t ∈ S0 (s1 and r2 grouped as the dishonest receiver 1)", s0_expr),
        ("t ∈ S1 (s0 and r1 grouped as the dishonest receiver 2)", s1_expr),
    ] {
        let composed = evaluate_expr(algebra, &atoms, &expr)?;
        let holds = algebra.systems_equal(&composed, &t)?;
        checks.push(WitnessCheck {
            name: name.to_string(),
            holds,
            composed: algebra.render(&composed),
            reference: algebra.render(&t),
        });
    }
    WitnessReport { checks }.ensure()
}
