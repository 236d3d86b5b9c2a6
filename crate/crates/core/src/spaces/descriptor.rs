// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::ExponentSequence;
use crate::error::{Error, Result};
use crate::logval::LogValue;

/// A graded Köthe space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceDescriptor {
    /// `Λ_1(α)`: weights `e^{-α_n / k}`.
    PowerSeriesFinite { alpha: ExponentSequence },
    /// `Λ_∞(α)`: weights `e^{k α_n}`.
    PowerSeriesInfinite { alpha: ExponentSequence },
    /// Tabulated Köthe matrix; rows are `n`, columns are `k`.
    GeneralKoethe { weights: Vec<Vec<f64>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Finite,
    Infinite,
    General,
}

impl SpaceKind {
    pub fn symbol(self) -> &'static str {
        match self {
            SpaceKind::Finite => "Λ_1",
            SpaceKind::Infinite => "Λ_∞",
            SpaceKind::General => "K(a)",
        }
    }
}

impl SpaceDescriptor {
    pub fn finite(alpha: ExponentSequence) -> Self {
        SpaceDescriptor::PowerSeriesFinite { alpha }
    }

    pub fn infinite(alpha: ExponentSequence) -> Self {
        SpaceDescriptor::PowerSeriesInfinite { alpha }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let space: SpaceDescriptor = serde_json::from_str(s)?;
        space.validate()?;
        Ok(space)
    }

    pub fn kind(&self) -> SpaceKind {
        match self {
            SpaceDescriptor::PowerSeriesFinite { .. } => SpaceKind::Finite,
            SpaceDescriptor::PowerSeriesInfinite { .. } => SpaceKind::Infinite,
            SpaceDescriptor::GeneralKoethe { .. } => SpaceKind::General,
        }
    }

    pub fn alpha(&self) -> Option<&ExponentSequence> {
        match self {
            SpaceDescriptor::PowerSeriesFinite { alpha }
            | SpaceDescriptor::PowerSeriesInfinite { alpha } => Some(alpha),
            SpaceDescriptor::GeneralKoethe { .. } => None,
        }
    }

    /// Checks the Köthe matrix axioms: a positive entry in every row and
    /// monotonicity in `k`. Power series weights satisfy both by
    /// construction once `α` is valid.
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceDescriptor::PowerSeriesFinite { alpha }
            | SpaceDescriptor::PowerSeriesInfinite { alpha } => alpha.validate(),
            SpaceDescriptor::GeneralKoethe { weights } => {
                let cols = weights.first().map(Vec::len).unwrap_or(0);
                if cols == 0 {
                    return Err(Error::invalid("köthe matrix", "weights table is empty"));
                }
                for (i, row) in weights.iter().enumerate() {
                    let n = i + 1;
                    if row.len() != cols {
                        return Err(Error::invalid(
                            "köthe matrix",
                            format!("row n = {n} has {} columns, expected {cols}", row.len()),
                        ));
                    }
                    if row.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
                        return Err(Error::invalid(
                            "köthe matrix",
                            format!("row n = {n} has a negative or non-finite entry"),
                        ));
                    }
                    if !row.iter().any(|&a| a > 0.0) {
                        return Err(Error::invalid(
                            "köthe matrix",
                            format!("row n = {n} has no positive entry"),
                        ));
                    }
                    if let Some(k) = row.windows(2).position(|w| w[1] < w[0]) {
                        return Err(Error::invalid(
                            "köthe matrix",
                            format!("row n = {n} decreases between k = {} and k = {}", k + 1, k + 2),
                        ));
                    }
                }
                Ok(())
            }
        }
    }

    /// Largest `n` with data; `None` for closed forms.
    pub fn n_limit(&self) -> Option<usize> {
        match self {
            SpaceDescriptor::PowerSeriesFinite { alpha }
            | SpaceDescriptor::PowerSeriesInfinite { alpha } => alpha.len_limit(),
            SpaceDescriptor::GeneralKoethe { weights } => Some(weights.len()),
        }
    }

    /// Largest grading index with data; `None` when unbounded.
    pub fn k_limit(&self) -> Option<usize> {
        match self {
            SpaceDescriptor::GeneralKoethe { weights } => weights.first().map(Vec::len),
            _ => None,
        }
    }

    /// Whether the data can speak to asymptotic claims at all.
    pub fn is_finite_window(&self) -> bool {
        match self {
            SpaceDescriptor::PowerSeriesFinite { alpha }
            | SpaceDescriptor::PowerSeriesInfinite { alpha } => alpha.is_finite_window(),
            SpaceDescriptor::GeneralKoethe { .. } => true,
        }
    }

    /// `log a_{n,k}`.
    pub fn weight(&self, n: usize, k: usize) -> Result<LogValue> {
        if k == 0 {
            return Err(Error::Range("grading indices start at k = 1".into()));
        }
        match self {
            SpaceDescriptor::PowerSeriesFinite { alpha } => {
                Ok(LogValue::from_log(-alpha.value(n)? / k as f64))
            }
            SpaceDescriptor::PowerSeriesInfinite { alpha } => {
                Ok(LogValue::from_log(k as f64 * alpha.value(n)?))
            }
            SpaceDescriptor::GeneralKoethe { weights } => {
                if n == 0 {
                    return Err(Error::Range("indices start at n = 1".into()));
                }
                let a = weights
                    .get(n - 1)
                    .and_then(|row| row.get(k - 1))
                    .ok_or_else(|| {
                        Error::Range(format!("(n, k) = ({n}, {k}) outside the weight table"))
                    })?;
                Ok(LogValue::from_abs(*a))
            }
        }
    }

    /// Tabulates what is needed to evaluate weights for `n <= n_max` quickly.
    pub fn evaluator(&self, n_max: usize) -> Result<SpaceEval<'_>> {
        let alpha = match self {
            SpaceDescriptor::PowerSeriesFinite { alpha }
            | SpaceDescriptor::PowerSeriesInfinite { alpha } => alpha.table(n_max)?,
            SpaceDescriptor::GeneralKoethe { weights } => {
                if weights.len() < n_max {
                    return Err(Error::Range(format!(
                        "weight table has {} rows, window needs {}",
                        weights.len(),
                        n_max
                    )));
                }
                Vec::new()
            }
        };
        Ok(SpaceEval {
            space: self,
            alpha,
            n_max,
        })
    }
}

/// Weights of one space tabulated over `n = 1..=n_max`.
#[derive(Clone, Debug)]
pub struct SpaceEval<'a> {
    space: &'a SpaceDescriptor,
    alpha: Vec<f64>,
    n_max: usize,
}

impl SpaceEval<'_> {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn space(&self) -> &SpaceDescriptor {
        self.space
    }

    /// `log a_{n,k}` for `1 <= n <= n_max`. Grading indices beyond a general
    /// table saturate at its last column, which keeps the matrix monotone in
    /// `k`; callers that care check `k_limit` first.
    #[inline]
    pub fn log_weight(&self, n: usize, k: usize) -> f64 {
        debug_assert!(n >= 1 && n <= self.n_max && k >= 1);
        match self.space {
            SpaceDescriptor::PowerSeriesFinite { .. } => -self.alpha[n - 1] / k as f64,
            SpaceDescriptor::PowerSeriesInfinite { .. } => k as f64 * self.alpha[n - 1],
            SpaceDescriptor::GeneralKoethe { weights } => {
                let row = &weights[n - 1];
                row[(k - 1).min(row.len() - 1)].ln()
            }
        }
    }

    /// `log a_{n,k}` for `n = 1..=len` (index 0 holds `n = 1`).
    pub fn column(&self, k: usize, len: usize) -> Vec<f64> {
        (1..=len.min(self.n_max)).map(|n| self.log_weight(n, k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_type_weight() {
        let s = SpaceDescriptor::finite(ExponentSequence::linear());
        let w = s.weight(2, 2).unwrap();
        assert_eq!(w.log(), -1.0);
        assert!((w.to_linear().unwrap() - 0.36788).abs() < 1e-5);
    }

    #[test]
    fn infinite_type_weight() {
        let s = SpaceDescriptor::infinite(ExponentSequence::linear());
        assert_eq!(s.weight(3, 2).unwrap().log(), 6.0);
    }

    #[test]
    fn general_table_lookup_and_range() {
        let s = SpaceDescriptor::GeneralKoethe {
            weights: vec![vec![0.5, 1.0], vec![1.0, 2.0]],
        };
        s.validate().unwrap();
        assert!((s.weight(1, 1).unwrap().log() - 0.5f64.ln()).abs() < 1e-15);
        assert!(matches!(s.weight(3, 1), Err(Error::Range(_))));
        assert!(matches!(s.weight(1, 3), Err(Error::Range(_))));
    }

    #[test]
    fn koethe_axioms_enforced() {
        let decreasing = SpaceDescriptor::GeneralKoethe {
            weights: vec![vec![2.0, 1.0]],
        };
        assert!(decreasing.validate().is_err());
        let zero_row = SpaceDescriptor::GeneralKoethe {
            weights: vec![vec![1.0, 1.0], vec![0.0, 0.0]],
        };
        assert!(zero_row.validate().is_err());
        let ragged = SpaceDescriptor::GeneralKoethe {
            weights: vec![vec![1.0, 1.0], vec![1.0]],
        };
        assert!(ragged.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{"kind":"power_series_finite","alpha":{"form":"power","p":1.0}}"#;
        let s = SpaceDescriptor::from_json_str(json).unwrap();
        assert_eq!(s, SpaceDescriptor::finite(ExponentSequence::linear()));
        assert_eq!(serde_json::to_string(&s).unwrap(), json);
        let g = SpaceDescriptor::from_json_str(r#"{"kind":"general_koethe","weights":[[0.5,1.0]]}"#)
            .unwrap();
        assert_eq!(g.kind(), SpaceKind::General);
    }

    #[test]
    fn evaluator_matches_weight() {
        for s in [
            SpaceDescriptor::finite(ExponentSequence::power(2.0)),
            SpaceDescriptor::infinite(ExponentSequence::Log),
        ] {
            let ev = s.evaluator(50).unwrap();
            for n in 1..=50 {
                for k in 1..=5 {
                    assert_eq!(ev.log_weight(n, k), s.weight(n, k).unwrap().log());
                }
            }
        }
    }
}
