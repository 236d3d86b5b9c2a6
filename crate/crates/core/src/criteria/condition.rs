// SPDX-License-Identifier: Apache-2.0

//! Bounded certificate search for inequalities `b_{n,k} <= C a_{n,m}` under
//! the three quantifier patterns.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::SpaceDescriptor;
use crate::verdict::{
    Certificate, FailureWitness, KEntry, KmEntry, Outcome, Plateau, SupProfile, Verdict, Window,
};

/// A non-decreasing map `S: N -> N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum SMap {
    Identity,
    /// `S(k) = a·k`.
    Linear { a: usize },
    /// `S(k) = values[k-1]`.
    Table { values: Vec<usize> },
}

impl SMap {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let map: SMap = serde_json::from_str(s)?;
        map.validate()?;
        Ok(map)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SMap::Identity => Ok(()),
            SMap::Linear { a } => {
                if *a == 0 {
                    Err(Error::invalid("S map", "linear factor must be positive"))
                } else {
                    Ok(())
                }
            }
            SMap::Table { values } => {
                if values.is_empty() {
                    return Err(Error::invalid("S map", "table is empty"));
                }
                if values.contains(&0) {
                    return Err(Error::invalid("S map", "grading indices start at 1"));
                }
                if values.windows(2).any(|w| w[1] < w[0]) {
                    return Err(Error::invalid("S map", "table must be non-decreasing"));
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, k: usize) -> Result<usize> {
        match self {
            SMap::Identity => Ok(k),
            SMap::Linear { a } => k
                .checked_mul(*a)
                .ok_or_else(|| Error::Config(format!("S({k}) overflows"))),
            SMap::Table { values } => values.get(k.wrapping_sub(1)).copied().ok_or_else(|| {
                Error::Config(format!(
                    "S map table has {} entries, S({k}) requested",
                    values.len()
                ))
            }),
        }
    }

    /// `k -> factor · S(k)`.
    pub fn scaled(&self, factor: usize, k_max: usize) -> Result<SMap> {
        Ok(match self {
            SMap::Identity => SMap::Linear { a: factor },
            SMap::Linear { a } => SMap::Linear { a: a * factor },
            SMap::Table { .. } => SMap::Table {
                values: (1..=k_max)
                    .map(|k| self.eval(k).map(|v| v * factor))
                    .collect::<Result<_>>()?,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Shape {
    /// For every k some m and C.
    ForallKExistsM,
    /// One m for every k.
    ExistsMForallK,
    /// `m = S(k)` for all large k.
    FixedS { s: SMap },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NStart {
    /// for all n
    One,
    /// for all n >= k
    K,
}

impl NStart {
    fn first(self, k: usize) -> usize {
        match self {
            NStart::One => 1,
            NStart::K => k,
        }
    }
}

/// `lhs_{n,k} <= C rhs_{n,m}`, where `lhs` is the codomain-side matrix
/// (graded by k) and `rhs` the domain-side one (graded by m).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantifierCondition {
    pub shape: Shape,
    pub lhs: SpaceDescriptor,
    pub rhs: SpaceDescriptor,
    pub n_start: NStart,
}

/// Suprema profile for a `(k, m)` pair.
pub(crate) type Probe<'a> = dyn FnMut(usize, usize) -> Result<SupProfile> + 'a;

fn witness(k: usize, m: Option<usize>, growth: f64, window: &Window, detail: String) -> Outcome {
    Outcome::FailsOnWindow {
        witness: FailureWitness {
            k: Some(k),
            best_m: m,
            growth,
            n_range: [window.n / 2, window.n],
            detail,
        },
    }
}

/// For each `k <= k_max`, the first `m <= m_max` whose supremum plateaus.
pub(crate) fn scan_forall_exists(window: &Window, probe: &mut Probe<'_>) -> Result<Outcome> {
    let mut entries = Vec::new();
    let mut undecided = None;
    for k in 1..=window.k_max {
        let mut best: Option<(usize, f64)> = None;
        let mut all_growing = true;
        let mut found = None;
        for m in 1..=window.m_max {
            let p = Plateau::of(&probe(k, m)?, window);
            match p {
                Plateau::Stable(c) => {
                    found = Some(KmEntry { k, m, log_c: c });
                    break;
                }
                Plateau::Growing(_) => {}
                Plateau::Unclear(_) => all_growing = false,
            }
            if best.is_none_or(|(_, g)| p.growth() < g) {
                best = Some((m, p.growth()));
            }
        }
        match found {
            Some(e) => entries.push(e),
            None if all_growing => {
                let (m, g) = best.unwrap_or((1, f64::INFINITY));
                return Ok(witness(
                    k,
                    Some(m),
                    g,
                    window,
                    format!("k = {k}: supremum grows for every m <= {}", window.m_max),
                ));
            }
            None => {
                undecided.get_or_insert(k);
            }
        }
    }
    Ok(match undecided {
        Some(k) => Outcome::Inconclusive {
            reason: format!("k = {k}: no m <= {} plateaus, but not every m grows", window.m_max),
        },
        None => Outcome::Holds {
            certificate: Certificate::ForallKExistsM { entries },
        },
    })
}

/// The first `m <= m_max` whose supremum plateaus for every
/// `k <= k_max + m`. Grading indices up to `m` alone would make the
/// condition vacuous on a finite window, so the k-range extends past m.
pub(crate) fn scan_exists_forall(window: &Window, probe: &mut Probe<'_>) -> Result<Outcome> {
    let mut best: Option<(usize, usize, f64)> = None;
    let mut any_unclear = false;
    for m in 1..=window.m_max {
        let mut entries = Vec::new();
        let mut growing: Option<(usize, f64)> = None;
        let mut unclear = false;
        for k in 1..=(window.k_max + m) {
            match Plateau::of(&probe(k, m)?, window) {
                Plateau::Stable(c) => {
                    if !unclear {
                        entries.push(KEntry { k, log_c: c });
                    }
                }
                Plateau::Growing(g) => {
                    growing = Some((k, g));
                    break;
                }
                Plateau::Unclear(_) => unclear = true,
            }
        }
        match growing {
            Some((k, g)) => {
                if best.is_none_or(|b| g < b.2) {
                    best = Some((m, k, g));
                }
            }
            None if unclear => any_unclear = true,
            None => {
                return Ok(Outcome::Holds {
                    certificate: Certificate::ExistsMForallK { m, entries },
                })
            }
        }
    }
    if any_unclear {
        return Ok(Outcome::Inconclusive {
            reason: format!("no m <= {} plateaus for every k, but not every m fails", window.m_max),
        });
    }
    let (m, k, g) = best.unwrap_or((1, 1, f64::INFINITY));
    Ok(witness(
        k,
        Some(m),
        g,
        window,
        format!(
            "every m <= {} has a k <= k_max + m whose supremum grows",
            window.m_max
        ),
    ))
}

/// `m = S(k)`; reports the smallest `k0` with every `k in [k0, k_max]`
/// plateauing.
pub(crate) fn scan_fixed(window: &Window, s: &SMap, probe: &mut Probe<'_>) -> Result<Outcome> {
    let mut results = Vec::with_capacity(window.k_max);
    for k in 1..=window.k_max {
        let m = s.eval(k)?;
        if m > window.m_max {
            return Err(Error::Config(format!(
                "S({k}) = {m} exceeds the grading window m_max = {}",
                window.m_max
            )));
        }
        results.push((k, m, Plateau::of(&probe(k, m)?, window)));
    }
    let k0 = results
        .iter()
        .rposition(|r| !matches!(r.2, Plateau::Stable(_)))
        .map_or(1, |p| p + 2);
    if k0 <= window.k_max {
        let entries = results[k0 - 1..]
            .iter()
            .map(|&(k, m, p)| match p {
                Plateau::Stable(c) => KmEntry { k, m, log_c: c },
                _ => unreachable!(),
            })
            .collect();
        return Ok(Outcome::Holds {
            certificate: Certificate::FixedS { k0, entries },
        });
    }
    let (k, m, p) = results[window.k_max - 1];
    Ok(match p {
        Plateau::Growing(g) => witness(k, Some(m), g, window, format!("k = {k}, m = S(k) = {m}: supremum grows")),
        _ => Outcome::Inconclusive {
            reason: format!("k = {k}, m = S(k) = {m}: supremum neither plateaus nor grows clearly"),
        },
    })
}

/// Gap `log lhs_{n,k} − log rhs_{n,m}` with `0 <= C·0` read as satisfied.
#[inline]
pub(crate) fn log_gap(lhs: f64, rhs: f64) -> f64 {
    if lhs == f64::NEG_INFINITY {
        f64::NEG_INFINITY
    } else if rhs == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        lhs - rhs
    }
}

/// Searches certificates for `cond` on the window.
pub fn certify(cond: &QuantifierCondition, window: &Window) -> Result<Verdict> {
    window.validate()?;
    let n = window.n;
    let (lhs, rhs) = match (cond.lhs.evaluator(n), cond.rhs.evaluator(n)) {
        (Ok(l), Ok(r)) => (l, r),
        (Err(e), _) | (_, Err(e)) => return Ok(Verdict::inconclusive(e.to_string(), window)),
    };
    let n_start = cond.n_start;
    let mut gap = vec![0.0; n];
    let mut probe = |k: usize, m: usize| -> Result<SupProfile> {
        for (i, g) in gap.iter_mut().enumerate() {
            *g = log_gap(lhs.log_weight(i + 1, k), rhs.log_weight(i + 1, m));
        }
        Ok(SupProfile::from_gap(&gap, n_start.first(k), n / 2))
    };
    let outcome = match &cond.shape {
        Shape::ForallKExistsM => scan_forall_exists(window, &mut probe)?,
        Shape::ExistsMForallK => scan_exists_forall(window, &mut probe)?,
        Shape::FixedS { s } => {
            s.validate()?;
            scan_fixed(window, s, &mut probe)?
        }
    };
    Ok(downgrade_tabulated(
        Verdict::new(outcome, window),
        cond.lhs.is_finite_window() || cond.rhs.is_finite_window(),
    ))
}

pub(crate) fn downgrade_tabulated(v: Verdict, tabulated: bool) -> Verdict {
    if tabulated && v.holds() {
        Verdict::inconclusive(
            "holds on the window, but tabulated data cannot certify an asymptotic claim",
            &v.window,
        )
    } else {
        v
    }
}
