//! Peeling a digraph down to a subdigraph whose underlying graph is
//! `k`-connected: repeatedly cut along a small separator of the underlying
//! graph and keep the smallest side. A kept vertex only loses out-neighbors
//! that sat in the removed separator, so the certified loss is the sum of
//! separator sizes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::{is_k_connected, KConnectivity, SeparatorWitness};
use crate::graph::{components, Digraph};

/// Which component survives a peel step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KeepRule {
    /// Fewest vertices, ties by lowest minimum label.
    Smallest,
    /// Most vertices, ties by lowest minimum label.
    Largest,
}

/// One peel step, in labels of the original digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    pub separator: Vec<usize>,
    pub kept: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeelResult {
    pub survivors: Vec<usize>,
    #[serde(skip)]
    pub d_prime: Digraph,
    pub removed: Vec<PeelStep>,
    /// Sum of removed separator sizes: no survivor lost more out-degree.
    pub loss_bound: usize,
    pub k: usize,
}

impl PeelResult {
    pub fn steps(&self) -> usize {
        self.removed.len()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Serialize, Deserialize)]
pub enum PeelError {
    #[error("certified loss {loss} would exceed the budget {budget}")]
    BudgetExhausted { loss: usize, budget: usize, removed: Vec<PeelStep> },
    #[error("only {left} vertices remain, need {need}")]
    TooFewSurvivors { left: usize, need: usize, removed: Vec<PeelStep> },
    #[error("minimum out-degree {min_out} does not exceed the required {required:.3}")]
    Precondition { min_out: usize, required: f64 },
    #[error("c = {c} must lie strictly between 0 and 1/2")]
    BadFraction { c: f64 },
    #[error("{steps} steps taken, the bound allows at most {max}")]
    StepBound { steps: usize, max: usize, removed: Vec<PeelStep> },
    #[error("the hypothesis is vacuous (gamma = {gamma:.3} >= 1)")]
    Vacuous { gamma: f64 },
}

/// Peels with the smallest-component rule.
pub fn peel(d: &Digraph, k: usize, loss_budget: usize) -> Result<PeelResult, PeelError> {
    peel_with(d, k, loss_budget, KeepRule::Smallest)
}

pub fn peel_with(d: &Digraph, k: usize, loss_budget: usize, keep: KeepRule) -> Result<PeelResult, PeelError> {
    let mut alive: Vec<usize> = (0..d.n()).collect();
    let mut removed = Vec::new();
    let mut loss = 0usize;
    loop {
        let (sub, labels) = d.induced(&alive);
        let u = sub.underlying();
        let witness: SeparatorWitness = match is_k_connected(&u, k) {
            KConnectivity::Connected => {
                return Ok(PeelResult { survivors: alive, d_prime: sub, removed, loss_bound: loss, k });
            }
            KConnectivity::TooFewVertices { n, .. } => {
                return Err(PeelError::TooFewSurvivors { left: n, need: k + 1, removed });
            }
            KConnectivity::Separated(w) => w,
        };
        if loss + witness.len() > loss_budget {
            return Err(PeelError::BudgetExhausted { loss: loss + witness.len(), budget: loss_budget, removed });
        }
        loss += witness.len();
        let comps = components(&u, &witness.vertices);
        let chosen = match keep {
            KeepRule::Smallest => comps.into_iter().min_by_key(|c| (c.len(), c[0])),
            KeepRule::Largest => comps.into_iter().min_by_key(|c| (std::cmp::Reverse(c.len()), c[0])),
        }
        .expect("a separator leaves at least two components");
        removed.push(PeelStep {
            separator: witness.vertices.iter().map(|&v| labels[v]).collect(),
            kept: chosen.len(),
        });
        alive = chosen.into_iter().map(|v| labels[v]).collect();
    }
}

/// `(k - 1) * log2(n)`.
pub fn log_budget(k: usize, n: usize) -> f64 {
    k.saturating_sub(1) as f64 * (n.max(1) as f64).log2()
}

/// Peeling for minimum out-degree above `(k - 1) log2 n`; the loss budget is
/// `floor((k - 1) log2 n)`.
pub fn peel_log(d: &Digraph, k: usize, n: usize) -> Result<PeelResult, PeelError> {
    let required = log_budget(k, n);
    let min_out = d.min_out_degree();
    if (min_out as f64) <= required {
        return Err(PeelError::Precondition { min_out, required });
    }
    peel(d, k, required.floor() as usize)
}

/// Constants of the linear regime for fraction `c` on `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearBudget {
    pub k: usize,
    pub gamma: f64,
    pub budget: usize,
    pub max_steps: usize,
    pub min_out_required: f64,
}

pub fn linear_budget(c: f64, n: usize) -> Result<LinearBudget, PeelError> {
    if !(c > 0.0 && c < 0.5) {
        return Err(PeelError::BadFraction { c });
    }
    let n_f = n as f64;
    let lg = (1.0 / c).log2();
    let gamma = 3.0 * c * lg;
    let r = (gamma / (2.0 * c)).ceil() as usize;
    Ok(LinearBudget {
        k: (c * n_f).ceil() as usize,
        gamma,
        budget: (2.0 * c * lg * n_f).floor() as usize,
        max_steps: r.saturating_sub(1),
        min_out_required: gamma * n_f,
    })
}

/// Peeling for minimum out-degree at least `3c log2(1/c) n`, producing
/// `ceil(cn)`-connectivity with loss at most `2c log2(1/c) n`.
pub fn peel_linear(d: &Digraph, c: f64, n: usize) -> Result<PeelResult, PeelError> {
    let lb = linear_budget(c, n)?;
    if lb.gamma >= 1.0 {
        return Err(PeelError::Vacuous { gamma: lb.gamma });
    }
    let min_out = d.min_out_degree();
    if (min_out as f64) < lb.min_out_required {
        return Err(PeelError::Precondition { min_out, required: lb.min_out_required });
    }
    let res = peel(d, lb.k, lb.budget)?;
    if res.steps() > lb.max_steps {
        return Err(PeelError::StepBound { steps: res.steps(), max: lb.max_steps, removed: res.removed });
    }
    Ok(res)
}
