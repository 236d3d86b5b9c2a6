// SPDX-License-Identifier: Apache-2.0

//! Window verdicts shared by every decision procedure in the crate.
//!
//! Asymptotic statements ("there is a `C` for all `n`") cannot be settled
//! from finitely many indices. Every procedure therefore answers with one of
//! three outcomes: the claim holds on the window with a concrete certificate,
//! it visibly fails on the window, or the data does not decide it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logval::LogValue;

/// Evaluation window and decision thresholds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Window {
    /// Largest grading index `k` examined.
    pub k_max: usize,
    /// Largest candidate index `m` in existential searches.
    pub m_max: usize,
    /// Truncation: indices `n = 1..=n`.
    pub n: usize,
    /// Largest constant tried for the subadditivity condition.
    pub growth_m_max: u32,
    /// Nuclearity probes try `l` in `k+1 ..= k_max + l_slack`.
    pub l_slack: usize,
    /// Oracle checkpoints (ascending). Values above `n` are ignored.
    pub checkpoints: Vec<usize>,
    /// A running supremum that moves by at most this many log-units over the
    /// last doubling is a plateau.
    pub plateau_tol: f64,
    /// A running supremum that grows by at least this many log-units over the
    /// last doubling is a failure witness.
    pub fail_growth: f64,
    /// Largest dense truncation that may be materialized.
    pub dense_cap: usize,
}

impl Default for Window {
    fn default() -> Self {
        Window {
            k_max: 12,
            m_max: 48,
            n: 4096,
            growth_m_max: 64,
            l_slack: 12,
            checkpoints: vec![256, 512, 1024, 2048, 4096],
            plateau_tol: 1e-6,
            fail_growth: std::f64::consts::LN_2,
            dense_cap: 4096,
        }
    }
}

impl Window {
    pub fn validate(&self) -> Result<()> {
        if self.k_max == 0 || self.m_max == 0 || self.growth_m_max == 0 {
            return Err(Error::Config(
                "window: k_max, m_max and growth_m_max must be positive".into(),
            ));
        }
        if self.n < 4 {
            return Err(Error::Config(format!(
                "window: n = {} is too small for a doubling test (need n >= 4)",
                self.n
            )));
        }
        if !(self.plateau_tol >= 0.0 && self.fail_growth > self.plateau_tol) {
            return Err(Error::Config(
                "window: need 0 <= plateau_tol < fail_growth".into(),
            ));
        }
        if self.checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(
                "window: checkpoints must be strictly ascending".into(),
            ));
        }
        if self.checkpoints.first() == Some(&0) {
            return Err(Error::Config("window: checkpoints must be positive".into()));
        }
        Ok(())
    }

    /// Checkpoints clipped to `n`, always ending at `n`, with at least two
    /// entries.
    pub fn effective_checkpoints(&self) -> Vec<usize> {
        let mut cps: Vec<usize> = self
            .checkpoints
            .iter()
            .copied()
            .filter(|&c| c >= 1 && c < self.n)
            .collect();
        cps.push(self.n);
        if cps.len() < 2 {
            cps.insert(0, (self.n / 2).max(1));
        }
        cps
    }

    pub fn with_n(&self, n: usize) -> Window {
        Window {
            n,
            ..self.clone()
        }
    }
}

/// Per-k entry of a quantifier certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KmEntry {
    pub k: usize,
    pub m: usize,
    pub log_c: LogValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KEntry {
    pub k: usize,
    pub log_c: LogValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub k: usize,
    /// Comparison index for nuclearity probes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    /// Log of the partial sum at the end of the window.
    pub limit: LogValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleEntry {
    pub sample: usize,
    pub k0: usize,
    pub log_c: LogValue,
    pub per_k: Vec<KmEntry>,
}

/// Concrete witnesses backing a `Holds` outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Certificate {
    /// For every k a separate `m_k` and constant.
    ForallKExistsM { entries: Vec<KmEntry> },
    /// One `m` serving every examined k.
    ExistsMForallK { m: usize, entries: Vec<KEntry> },
    /// `m = S(k)` for all `k >= k0`.
    FixedS { k0: usize, entries: Vec<KmEntry> },
    /// Convergent series, one per grading index.
    Series { entries: Vec<SeriesEntry> },
    /// Growth bound `|θ_{n-1}| <= C · bound_m(n)`.
    Dual { m: usize, log_c: LogValue },
    /// Smallest constant in the subadditivity condition.
    GrowthConstant { m: u32 },
    /// Per-sample tameness witnesses.
    Tameness { samples: Vec<SampleEntry> },
}

/// Evidence that a claim fails on the window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureWitness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// The candidate index whose growth was smallest.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_m: Option<usize>,
    /// Growth of the running supremum over `n_range`, in log-units.
    pub growth: f64,
    pub n_range: [usize; 2],
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Holds { certificate: Certificate },
    FailsOnWindow { witness: FailureWitness },
    Inconclusive { reason: String },
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, Outcome::FailsOnWindow { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Outcome::Inconclusive { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Outcome::Holds { certificate } => Some(certificate),
            _ => None,
        }
    }

    pub fn class(&self) -> OutcomeClass {
        match self {
            Outcome::Holds { .. } => OutcomeClass::Holds,
            Outcome::FailsOnWindow { .. } => OutcomeClass::Fails,
            Outcome::Inconclusive { .. } => OutcomeClass::Inconclusive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeClass {
    Holds,
    Fails,
    Inconclusive,
}

/// An outcome together with the window that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub window: Window,
}

impl Verdict {
    pub fn new(outcome: Outcome, window: &Window) -> Self {
        Verdict {
            outcome,
            window: window.clone(),
        }
    }

    pub fn holds(&self) -> bool {
        self.outcome.holds()
    }

    pub fn fails(&self) -> bool {
        self.outcome.fails()
    }

    pub fn is_inconclusive(&self) -> bool {
        self.outcome.is_inconclusive()
    }

    pub fn inconclusive(reason: impl Into<String>, window: &Window) -> Self {
        Verdict::new(
            Outcome::Inconclusive {
                reason: reason.into(),
            },
            window,
        )
    }
}

/// Result of comparing a running supremum at half the window against the
/// full window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Plateau {
    /// Moved by at most the plateau tolerance; carries the final supremum.
    Stable(LogValue),
    /// Grew by at least the failure threshold.
    Growing(f64),
    /// Anything in between.
    Unclear(f64),
}

impl Plateau {
    pub fn classify(sup_half: LogValue, sup_full: LogValue, window: &Window) -> Plateau {
        let growth = if sup_full.is_zero() {
            0.0
        } else {
            sup_full.log() - sup_half.log()
        };
        if growth.is_nan() {
            // inf - inf: both ends overflowed the representable range
            return Plateau::Growing(f64::INFINITY);
        }
        if growth <= window.plateau_tol {
            Plateau::Stable(sup_full)
        } else if growth >= window.fail_growth {
            Plateau::Growing(growth)
        } else {
            Plateau::Unclear(growth)
        }
    }

    /// `classify` on the suprema, overridden to `Growing` when the tail
    /// climbs by the failure threshold.
    pub fn of(profile: &SupProfile, window: &Window) -> Plateau {
        let p = Plateau::classify(profile.half, profile.full, window);
        if profile.tail_growth >= window.fail_growth {
            Plateau::Growing(p.growth().max(profile.tail_growth))
        } else {
            p
        }
    }

    pub fn growth(&self) -> f64 {
        match *self {
            Plateau::Stable(_) => 0.0,
            Plateau::Growing(g) | Plateau::Unclear(g) => g,
        }
    }
}

/// Suprema of a gap or ratio sequence over a window of length `N`: over
/// `n <= N/2`, over `n <= N`, and the change between the block maxima on
/// `(N/4, N/2]` and `(N/2, N]`.
///
/// The block comparison catches sequences whose running supremum is held by
/// an early hump while the tail still climbs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupProfile {
    pub half: LogValue,
    pub full: LogValue,
    pub tail_growth: f64,
}

impl SupProfile {
    /// `gap[i]` is the value at `n = i + 1`; indices below `n_start` are
    /// skipped.
    pub fn from_gap(gap: &[f64], n_start: usize, n_half: usize) -> SupProfile {
        let start = n_start.max(1) - 1;
        let half = n_half.min(gap.len());
        let quarter = half / 2;
        let mut sup_half = f64::NEG_INFINITY;
        let mut sup_full = f64::NEG_INFINITY;
        let mut prev_block = f64::NEG_INFINITY;
        for (i, &g) in gap.iter().enumerate().skip(start) {
            if i < half {
                sup_half = sup_half.max(g);
                if i >= quarter {
                    prev_block = prev_block.max(g);
                }
            }
            sup_full = sup_full.max(g);
        }
        let last_block = gap
            .iter()
            .enumerate()
            .skip(start.max(half))
            .fold(f64::NEG_INFINITY, |a, (_, &g)| a.max(g));
        SupProfile {
            half: LogValue::from_log(sup_half),
            full: LogValue::from_log(sup_full),
            tail_growth: tail_growth(prev_block, last_block),
        }
    }
}

/// `last − prev`, read as no growth when either block is empty or the
/// difference is undefined.
pub fn tail_growth(prev: f64, last: f64) -> f64 {
    if prev == f64::NEG_INFINITY || last == f64::NEG_INFINITY {
        return 0.0;
    }
    let d = last - prev;
    if d.is_nan() {
        0.0
    } else {
        d
    }
}
