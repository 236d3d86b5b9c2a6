// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonnegative nondecreasing sequence `α = (α_n)_{n >= 1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum ExponentSequence {
    /// `α_n = n^p`.
    Power { p: f64 },
    /// `α_n = log(n + 1)`.
    Log,
    /// `α_n = a·n + b`.
    Affine { a: f64, b: f64 },
    /// Tabulated `α_1, α_2, …`; only meaningful on its finite window.
    Table { values: Vec<f64> },
}

impl ExponentSequence {
    pub fn power(p: f64) -> Self {
        ExponentSequence::Power { p }
    }

    /// `α_n = n`.
    pub fn linear() -> Self {
        ExponentSequence::Power { p: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ExponentSequence::Power { p } => {
                if !(p.is_finite() && *p > 0.0) {
                    return Err(Error::invalid("exponent sequence", "power p must be positive"));
                }
            }
            ExponentSequence::Log => {}
            ExponentSequence::Affine { a, b } => {
                if !(a.is_finite() && b.is_finite() && *a >= 0.0 && *b >= 0.0) {
                    return Err(Error::invalid(
                        "exponent sequence",
                        "affine coefficients must be finite and nonnegative",
                    ));
                }
            }
            ExponentSequence::Table { values } => {
                if values.is_empty() {
                    return Err(Error::invalid("exponent sequence", "table is empty"));
                }
                if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                    return Err(Error::invalid(
                        "exponent sequence",
                        "table entries must be finite and nonnegative",
                    ));
                }
                if values.windows(2).any(|w| w[1] < w[0]) {
                    return Err(Error::invalid(
                        "exponent sequence",
                        "table entries must be nondecreasing",
                    ));
                }
            }
        }
        Ok(())
    }

    /// `α_n` for `n >= 1`.
    pub fn value(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::Range("exponent sequences start at n = 1".into()));
        }
        let x = n as f64;
        Ok(match self {
            ExponentSequence::Power { p } => {
                if *p == 1.0 {
                    x
                } else if *p == 2.0 {
                    x * x
                } else if *p == 0.5 {
                    x.sqrt()
                } else {
                    x.powf(*p)
                }
            }
            ExponentSequence::Log => (x + 1.0).ln(),
            ExponentSequence::Affine { a, b } => a * x + b,
            ExponentSequence::Table { values } => *values.get(n - 1).ok_or_else(|| {
                Error::Range(format!(
                    "exponent table has {} entries, n = {} requested",
                    values.len(),
                    n
                ))
            })?,
        })
    }

    /// `α_1 ..= α_len` as a vector (index 0 holds `α_1`).
    pub fn table(&self, len: usize) -> Result<Vec<f64>> {
        if let ExponentSequence::Table { values } = self {
            if values.len() < len {
                return Err(Error::Range(format!(
                    "exponent table has {} entries, window needs {}",
                    values.len(),
                    len
                )));
            }
            return Ok(values[..len].to_vec());
        }
        (1..=len).map(|n| self.value(n)).collect()
    }

    /// Number of available entries; `None` for closed forms.
    pub fn len_limit(&self) -> Option<usize> {
        match self {
            ExponentSequence::Table { values } => Some(values.len()),
            _ => None,
        }
    }

    /// Whether the sequence is a closed form that tends to infinity, i.e.
    /// one that can back an asymptotic claim at all.
    pub fn tends_to_infinity(&self) -> bool {
        match self {
            ExponentSequence::Power { .. } | ExponentSequence::Log => true,
            ExponentSequence::Affine { a, .. } => *a > 0.0,
            ExponentSequence::Table { .. } => false,
        }
    }

    /// Tabulated data only covers a finite window.
    pub fn is_finite_window(&self) -> bool {
        matches!(self, ExponentSequence::Table { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(ExponentSequence::linear().value(7).unwrap(), 7.0);
        assert_eq!(ExponentSequence::power(2.0).value(3).unwrap(), 9.0);
        assert_eq!(ExponentSequence::power(0.5).value(16).unwrap(), 4.0);
        assert!((ExponentSequence::Log.value(1).unwrap() - 2f64.ln()).abs() < 1e-15);
        let aff = ExponentSequence::Affine { a: 2.0, b: 1.0 };
        assert_eq!(aff.value(3).unwrap(), 7.0);
    }

    #[test]
    fn table_range_error() {
        let t = ExponentSequence::Table {
            values: vec![0.0, 1.0, 2.0],
        };
        assert_eq!(t.value(3).unwrap(), 2.0);
        assert!(matches!(t.value(4), Err(Error::Range(_))));
        assert!(t.table(5).is_err());
        assert!(ExponentSequence::linear().value(0).is_err());
    }

    #[test]
    fn validation() {
        assert!(ExponentSequence::power(0.0).validate().is_err());
        assert!(ExponentSequence::Affine { a: -1.0, b: 0.0 }.validate().is_err());
        assert!(ExponentSequence::Table { values: vec![2.0, 1.0] }
            .validate()
            .is_err());
        assert!(ExponentSequence::Table { values: vec![] }.validate().is_err());
        assert!(ExponentSequence::Log.validate().is_ok());
    }

    #[test]
    fn json_encoding() {
        let s: ExponentSequence = serde_json::from_str(r#"{"form":"power","p":1.0}"#).unwrap();
        assert_eq!(s, ExponentSequence::linear());
        let s: ExponentSequence = serde_json::from_str(r#"{"form":"log"}"#).unwrap();
        assert_eq!(s, ExponentSequence::Log);
        assert!(serde_json::from_str::<ExponentSequence>(r#"{"form":"cubic"}"#).is_err());
    }

    #[test]
    fn asymptotic_flags() {
        assert!(ExponentSequence::Log.tends_to_infinity());
        assert!(!ExponentSequence::Affine { a: 0.0, b: 3.0 }.tends_to_infinity());
        assert!(ExponentSequence::Table { values: vec![1.0] }.is_finite_window());
    }
}
