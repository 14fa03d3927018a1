use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Which connectivity threshold family drives the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `s = floor(22 k^2 log2 n)`.
    A,
    /// `k = floor(n^alpha)`, `s = floor(9 n^((1 + alpha) / 2))`.
    B,
    /// `k = floor(c n)`, `s = floor(30 sqrt(c) n)`.
    C,
}

impl std::str::FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Regime::A),
            "b" => Ok(Regime::B),
            "c" => Ok(Regime::C),
            other => Err(format!("unknown regime {other:?} (expected a, b or c)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Thresholds are enforced; a violated guarantee is reported with a witness.
    Strict,
    /// Thresholds derived from the input; only soundness is enforced.
    Opportunistic,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamsError {
    #[error("need 1 <= k <= n/2, got k = {k}, n = {n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("regime {regime:?} needs its parameter (alpha or c)")]
    MissingParameter { regime: Regime },
    #[error("alpha = {0} is outside [1/3, 1)")]
    BadAlpha(f64),
    #[error("c = {0} is outside (0, 1/2)")]
    BadFraction(f64),
    #[error("k = {k} does not match the regime formula, which gives {expected}")]
    InconsistentK { k: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineParams {
    pub k: usize,
    pub n: usize,
    pub regime: Regime,
    pub alpha: Option<f64>,
    pub c: Option<f64>,
    pub s: usize,
    pub d: usize,
    /// `None` selects `64 (1 + ceil(log2(t + 1)))` per coloring round.
    pub retry_cap: Option<usize>,
    pub seed: u64,
    pub mode: Mode,
    /// False when `s > n - 1`, or when the regime's statement is vacuous.
    pub feasible: bool,
    pub notes: Vec<String>,
}

/// Largest `s` with `2^s <= n^(22 k^2)`, i.e. `floor(22 k^2 log2 n)` exactly.
pub fn regime_a_threshold(k: usize, n: usize) -> usize {
    if n <= 1 {
        return 0;
    }
    let exp = 22 * k * k;
    let approx = exp as f64 * (n as f64).log2();
    // Beyond this size the value is far above n - 1 and only needs to be
    // reported, so the float estimate is enough.
    if approx > 1.0e6 {
        return approx.floor() as usize;
    }
    (BigUint::from(n).pow(exp as u32).bits() - 1) as usize
}

pub fn retry_cap_for(t: usize) -> usize {
    let lg = ((t + 1) as f64).log2().ceil() as usize;
    64 * (1 + lg)
}

/// Threshold-enforcing parameters for the given regime.
pub fn params_for(k: usize, n: usize, regime: Regime, alpha_or_c: Option<f64>) -> Result<PipelineParams, ParamsError> {
    if k == 0 || 2 * k > n {
        return Err(ParamsError::KOutOfRange { k, n });
    }
    let n_f = n as f64;
    let mut notes = Vec::new();
    let mut feasible = true;
    let (s, alpha, c) = match regime {
        Regime::A => {
            let s = regime_a_threshold(k, n);
            (s, None, None)
        }
        Regime::B => {
            let alpha = alpha_or_c.ok_or(ParamsError::MissingParameter { regime })?;
            if !(1.0 / 3.0..1.0).contains(&alpha) {
                return Err(ParamsError::BadAlpha(alpha));
            }
            let expected = n_f.powf(alpha).floor() as usize;
            if expected != k {
                return Err(ParamsError::InconsistentK { k, expected });
            }
            ((9.0 * n_f.powf((1.0 + alpha) / 2.0)).floor() as usize, Some(alpha), None)
        }
        Regime::C => {
            let c = alpha_or_c.ok_or(ParamsError::MissingParameter { regime })?;
            if !(c > 0.0 && c < 0.5) {
                return Err(ParamsError::BadFraction(c));
            }
            let expected = (c * n_f).floor() as usize;
            if expected != k {
                return Err(ParamsError::InconsistentK { k, expected });
            }
            if c >= 1.0 / 900.0 {
                feasible = false;
                notes.push(format!("c = {c} >= 1/900: the bound 30 sqrt(c) n is at least n and says nothing"));
            }
            ((30.0 * c.sqrt() * n_f).floor() as usize, None, Some(c))
        }
    };
    let s = if k == 1 {
        notes.push(format!("k = 1: threshold {s} replaced by 1, any spanning tree works"));
        1
    } else {
        s
    };
    if s > n.saturating_sub(1) {
        feasible = false;
        notes.push(format!("s = {s} exceeds n - 1 = {}; no {n}-vertex graph is s-connected", n.saturating_sub(1)));
    }
    let d = s / 4;
    if k > 1 && d < k {
        notes.push(format!("d = {d} is below k = {k}"));
    }
    Ok(PipelineParams {
        k,
        n,
        regime,
        alpha,
        c,
        s,
        d,
        retry_cap: None,
        seed: 0,
        mode: Mode::Strict,
        feasible,
        notes,
    })
}

impl PipelineParams {
    /// Parameters that take `s` from the minimum degree of `g` and do not
    /// enforce any size bound. `d = floor(s / 3)` so every vertex starts as
    /// an alpha singleton with a star of `3d <= s` edges.
    pub fn opportunistic(g: &Graph, k: usize) -> PipelineParams {
        let s = g.min_degree();
        PipelineParams {
            k,
            n: g.n(),
            regime: Regime::A,
            alpha: None,
            c: None,
            s,
            d: (s / 3).max(1),
            retry_cap: None,
            seed: 0,
            mode: Mode::Opportunistic,
            feasible: true,
            notes: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_retry_cap(mut self, cap: Option<usize>) -> Self {
        self.retry_cap = cap;
        self
    }

    pub fn is_strict(&self) -> bool {
        self.mode == Mode::Strict
    }
}
