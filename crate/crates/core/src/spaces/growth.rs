// SPDX-License-Identifier: Apache-2.0

//! Growth conditions on exponent sequences: the subadditivity bound
//! `α_s <= M (α_{s-t} + α_t)` and stability `sup α_{2n} / α_n < ∞`.

use serde::{Deserialize, Serialize};

use super::ExponentSequence;
use crate::error::{Error, Result};
use crate::verdict::{Certificate, FailureWitness, Outcome, Verdict, Window};

/// Relative slack absorbing rounding in `α_s / (α_{s-t} + α_t)` before the
/// ceiling is taken.
const RATIO_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GrowthOutcome {
    /// Smallest integer `M` that works on the window.
    Satisfied { m: u32 },
    /// No `M <= m_max` works; `(t, s)` attains the largest ratio.
    Fails { t: usize, s: usize, ratio: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub n: usize,
    pub m_max: u32,
    /// `max α_s / (α_{s-t} + α_t)` over the window.
    pub max_ratio: f64,
    pub outcome: GrowthOutcome,
    /// Always true: the result covers `1 <= t < s <= n` only and is not an
    /// asymptotic proof.
    pub window_certificate: bool,
}

impl StabilityReport {
    pub fn constant(&self) -> Option<u32> {
        match self.outcome {
            GrowthOutcome::Satisfied { m } => Some(m),
            GrowthOutcome::Fails { .. } => None,
        }
    }

    /// Hypothesis form used by operator verdicts. A tabulated or bounded
    /// sequence never certifies the hypothesis.
    pub fn to_verdict(&self, alpha: &ExponentSequence, window: &Window) -> Verdict {
        match &self.outcome {
            GrowthOutcome::Satisfied { m } => {
                if !alpha.tends_to_infinity() {
                    Verdict::inconclusive(
                        format!(
                            "M = {m} on the window, but the sequence is tabulated or bounded"
                        ),
                        window,
                    )
                } else {
                    Verdict::new(
                        Outcome::Holds {
                            certificate: Certificate::GrowthConstant { m: *m },
                        },
                        window,
                    )
                }
            }
            GrowthOutcome::Fails { t, s, ratio } => Verdict::new(
                Outcome::FailsOnWindow {
                    witness: FailureWitness {
                        k: None,
                        best_m: None,
                        growth: *ratio,
                        n_range: [*t, *s],
                        detail: format!(
                            "α_{s} / (α_{} + α_{t}) = {ratio} exceeds M_max = {}",
                            s - t,
                            self.m_max
                        ),
                    },
                },
                window,
            ),
        }
    }
}

/// Smallest integer `M <= m_max` with `α_s <= M (α_{s-t} + α_t)` for all
/// `1 <= t < s <= n`.
pub fn check_subadditivity(alpha: &ExponentSequence, n: usize, m_max: u32) -> Result<StabilityReport> {
    if n < 2 {
        return Err(Error::invalid("growth window", "need n >= 2"));
    }
    let a = alpha.table(n)?;
    let mut max_ratio = 0.0f64;
    let mut worst = (1usize, 2usize);
    for s in 2..=n {
        let num = a[s - 1];
        // symmetric in t <-> s - t
        for t in 1..=s / 2 {
            let den = a[s - t - 1] + a[t - 1];
            let ratio = if den > 0.0 {
                num / den
            } else if num > 0.0 {
                f64::INFINITY
            } else {
                continue;
            };
            if ratio > max_ratio {
                max_ratio = ratio;
                worst = (t, s);
            }
        }
    }
    let needed = (max_ratio * (1.0 - RATIO_SLACK)).ceil().max(1.0);
    let outcome = if needed.is_finite() && needed <= m_max as f64 {
        GrowthOutcome::Satisfied { m: needed as u32 }
    } else {
        GrowthOutcome::Fails {
            t: worst.0,
            s: worst.1,
            ratio: max_ratio,
        }
    };
    Ok(StabilityReport {
        n,
        m_max,
        max_ratio,
        outcome,
        window_certificate: true,
    })
}

/// `max_{n <= N/2} α_{2n} / α_n`, skipping indices with `α_n = 0`.
pub fn check_stable(alpha: &ExponentSequence, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("stability window", "need n >= 2"));
    }
    let a = alpha.table(n)?;
    Ok((1..=n / 2)
        .filter(|&i| a[i - 1] > 0.0)
        .map(|i| a[2 * i - 1] / a[i - 1])
        .fold(0.0, f64::max))
}
