// SPDX-License-Identifier: Apache-2.0

//! Finite evidence for "the series converges" claims.
//!
//! A series of nonnegative terms is classified from its partial sums at the
//! dyadic checkpoints `…, N/4, N/2, N`:
//!
//! * `Convergent` when the increment over the last half-window `(N/2, N]` is
//!   at most `1e-12` of the total.
//! * `Divergent` when the partial sum grows by at least `log 2` over the last
//!   doubling, or when the dyadic lower bounds `len(B)·min_{n∈B} t_n` of the
//!   last three blocks are nondecreasing (a Cauchy condensation style test
//!   that catches `Σ n^{-p}` for `p <= 1`).
//! * `Inconclusive` otherwise.

use serde::{Deserialize, Serialize};

use super::SpaceDescriptor;
use crate::error::Result;
use crate::logval::{log_sum_exp, LogValue};
use crate::verdict::{Certificate, FailureWitness, Outcome, SeriesEntry, Verdict, Window};

/// Relative size of the last half-window increment below which a series is
/// declared convergent.
pub const CONVERGENCE_RATIO: f64 = 1e-12;

const BLOCK_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum SeriesClass {
    Convergent { limit: LogValue },
    Divergent,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesVerdict {
    /// `(N_i, log S_{N_i})`, ascending.
    pub partial_sums: Vec<(usize, LogValue)>,
    pub classification: SeriesClass,
}

impl SeriesVerdict {
    pub fn is_convergent(&self) -> bool {
        matches!(self.classification, SeriesClass::Convergent { .. })
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self.classification, SeriesClass::Divergent)
    }

    pub fn total(&self) -> LogValue {
        self.partial_sums
            .last()
            .map(|p| p.1)
            .unwrap_or(LogValue::ZERO)
    }

    /// Growth of the partial sum over the last doubling, in log-units.
    pub fn last_doubling_growth(&self) -> f64 {
        match self.partial_sums.as_slice() {
            [.., (_, a), (_, b)] if !b.is_zero() => b.log() - a.log(),
            _ => 0.0,
        }
    }
}

/// Classifies `Σ e^{t_n}` from the log terms `t_1, …, t_N` (`terms[0]` is
/// `t_1`; `-∞` is a zero term).
pub fn classify_series(terms: &[f64]) -> SeriesVerdict {
    let n = terms.len();
    let mut cps = Vec::new();
    let mut c = n;
    while c >= 1 {
        cps.push(c);
        c /= 2;
    }
    cps.reverse();
    let partial_sums: Vec<(usize, LogValue)> = cps
        .iter()
        .map(|&c| (c, LogValue::from_log(log_sum_exp(&terms[..c]))))
        .collect();

    let classification = if n < 8 {
        SeriesClass::Inconclusive
    } else {
        classify_tail(terms)
    };
    SeriesVerdict {
        partial_sums,
        classification,
    }
}

fn classify_tail(terms: &[f64]) -> SeriesClass {
    let n = terms.len();
    let h1 = n / 2;
    let h2 = h1 / 2;
    let h3 = h2 / 2;
    let total = log_sum_exp(terms);
    if total == f64::NEG_INFINITY {
        return SeriesClass::Convergent {
            limit: LogValue::ZERO,
        };
    }
    if total == f64::INFINITY {
        return SeriesClass::Divergent;
    }
    let tail = log_sum_exp(&terms[h1..]);
    if tail - total <= CONVERGENCE_RATIO.ln() {
        return SeriesClass::Convergent {
            limit: LogValue::from_log(total),
        };
    }
    let head = log_sum_exp(&terms[..h1]);
    if total - head >= std::f64::consts::LN_2 {
        return SeriesClass::Divergent;
    }
    let lower = |lo: usize, hi: usize| -> f64 {
        let min = terms[lo..hi].iter().copied().fold(f64::INFINITY, f64::min);
        ((hi - lo) as f64).ln() + min
    };
    let l1 = lower(h1, n);
    let l2 = lower(h2, h1);
    let l3 = lower(h3, h2);
    if l1.is_finite() && l2.is_finite() && l3.is_finite() && l1 >= l2 - BLOCK_TOL && l2 >= l3 - BLOCK_TOL
    {
        return SeriesClass::Divergent;
    }
    SeriesClass::Inconclusive
}

/// Grothendieck–Pietsch probe: partial sums of `Σ_{n <= N} a_{n,k} / a_{n,l}`.
pub fn gp_probe(space: &SpaceDescriptor, k: usize, l: usize, n: usize) -> Result<SeriesVerdict> {
    if l <= k {
        return Err(crate::Error::invalid(
            "nuclearity probe",
            format!("need l > k, got k = {k}, l = {l}"),
        ));
    }
    let ev = space.evaluator(n)?;
    let terms: Vec<f64> = (1..=n)
        .map(|i| {
            let num = ev.log_weight(i, k);
            let den = ev.log_weight(i, l);
            if num == f64::NEG_INFINITY {
                f64::NEG_INFINITY
            } else {
                num - den
            }
        })
        .collect();
    Ok(classify_series(&terms))
}

/// Nuclearity on the window: for every `k <= k_max` some
/// `l ∈ (k, k_max + l_slack]` with a convergent probe.
pub fn nuclearity_verdict(space: &SpaceDescriptor, window: &Window) -> Verdict {
    if let Some(limit) = space.n_limit() {
        if limit < window.n {
            return Verdict::inconclusive(
                format!("tabulated data has {limit} rows, window needs {}", window.n),
                window,
            );
        }
    }
    let l_top = match space.k_limit() {
        Some(cols) => cols.min(window.k_max + window.l_slack),
        None => window.k_max + window.l_slack,
    };
    let mut entries = Vec::new();
    let mut undecided = None;
    for k in 1..=window.k_max {
        let mut found = None;
        let mut all_divergent = l_top > k;
        let mut last = None;
        for l in (k + 1)..=l_top {
            let probe = match gp_probe(space, k, l, window.n) {
                Ok(p) => p,
                Err(e) => return Verdict::inconclusive(e.to_string(), window),
            };
            if probe.is_convergent() {
                found = Some((l, probe.total()));
                break;
            }
            all_divergent &= probe.is_divergent();
            last = Some(probe);
        }
        match found {
            Some((l, limit)) => entries.push(SeriesEntry {
                k,
                l: Some(l),
                limit,
            }),
            None if all_divergent => {
                let growth = last.as_ref().map(|p| p.last_doubling_growth()).unwrap_or(0.0);
                return Verdict::new(
                    Outcome::FailsOnWindow {
                        witness: FailureWitness {
                            k: Some(k),
                            best_m: None,
                            growth,
                            n_range: [window.n / 2, window.n],
                            detail: format!(
                                "Σ a_(n,{k}) / a_(n,l) classified divergent for every l in {}..={}",
                                k + 1,
                                l_top
                            ),
                        },
                    },
                    window,
                );
            }
            None => {
                undecided.get_or_insert(k);
            }
        }
    }
    if let Some(k) = undecided {
        return Verdict::inconclusive(
            format!("no convergent probe for k = {k} and no divergence witness for every l"),
            window,
        );
    }
    if space.is_finite_window() {
        return Verdict::inconclusive("tabulated data cannot certify an asymptotic claim", window);
    }
    Verdict::new(
        Outcome::Holds {
            certificate: Certificate::Series { entries },
        },
        window,
    )
}
