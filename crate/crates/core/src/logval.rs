// SPDX-License-Identifier: Apache-2.0

//! Log-domain magnitudes.
//!
//! Weights of the form `e^{k α_n}` leave the range of `f64` long before the
//! windows used here are exhausted (`k = 10`, `α_n = n²`, `n = 100` already
//! overflows), so every magnitude is carried as its natural logarithm.
//! A magnitude of zero is encoded as `-∞`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// Largest `|log|` for which a linear-domain value is materialized in reports.
pub const LINEAR_LIMIT: f64 = 700.0;

/// Natural logarithm of a nonnegative magnitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue(f64);

impl LogValue {
    /// The magnitude zero.
    pub const ZERO: LogValue = LogValue(f64::NEG_INFINITY);
    /// The magnitude one.
    pub const ONE: LogValue = LogValue(0.0);

    /// Wraps a logarithm. NaN is mapped to `-∞`; callers never produce it on
    /// valid input, but it must not poison comparisons.
    pub fn from_log(log: f64) -> Self {
        if log.is_nan() {
            LogValue::ZERO
        } else {
            LogValue(log)
        }
    }

    /// Log of `|x|`.
    pub fn from_abs(x: f64) -> Self {
        LogValue::from_log(x.abs().ln())
    }

    #[inline]
    pub fn log(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// `e^log`, or `None` when the value is outside `[-700, 700]` and would
    /// underflow to a subnormal or overflow.
    pub fn to_linear(self) -> Option<f64> {
        if self.is_zero() {
            Some(0.0)
        } else if self.0.abs() <= LINEAR_LIMIT {
            Some(self.0.exp())
        } else {
            None
        }
    }

    /// Sum of magnitudes.
    pub fn add_mag(self, other: LogValue) -> LogValue {
        LogValue(log_add_exp(self.0, other.0))
    }

    /// Product of magnitudes.
    pub fn mul_mag(self, other: LogValue) -> LogValue {
        LogValue::from_log(self.0 + other.0)
    }

    pub fn max(self, other: LogValue) -> LogValue {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    pub fn total_cmp(&self, other: &LogValue) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

/// Multiplication of magnitudes is addition of logs.
impl Add for LogValue {
    type Output = LogValue;
    fn add(self, rhs: LogValue) -> LogValue {
        self.mul_mag(rhs)
    }
}

/// Division of magnitudes. `0 / 0` is taken as `0`.
impl Sub for LogValue {
    type Output = LogValue;
    fn sub(self, rhs: LogValue) -> LogValue {
        if self.is_zero() {
            return LogValue::ZERO;
        }
        LogValue::from_log(self.0 - rhs.0)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for LogValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            serializer.serialize_f64(self.0)
        } else if self.0 > 0.0 {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_str("-inf")
        }
    }
}

impl<'de> Deserialize<'de> for LogValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct LogVisitor;

        impl Visitor<'_> for LogVisitor {
            type Value = LogValue;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number, \"inf\" or \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<LogValue, E> {
                Ok(LogValue::from_log(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<LogValue, E> {
                Ok(LogValue(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<LogValue, E> {
                Ok(LogValue(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<LogValue, E> {
                match v {
                    "-inf" => Ok(LogValue::ZERO),
                    "inf" => Ok(LogValue(f64::INFINITY)),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }

        deserializer.deserialize_any(LogVisitor)
    }
}

/// `ln(e^a + e^b)` without overflow.
#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY || hi == f64::INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln Σ e^{t_i}` in a fixed order: shift by the maximum, then sum the
/// shifted exponentials with a pairwise tree over ascending index.
///
/// The result depends only on the slice contents, never on threading.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    max + pairwise_shifted_sum(terms, max).ln()
}

fn pairwise_shifted_sum(terms: &[f64], shift: f64) -> f64 {
    const LEAF: usize = 16;
    if terms.len() <= LEAF {
        // below -746 the exponential is exactly zero; skip the call
        terms
            .iter()
            .map(|t| {
                let d = t - shift;
                if d < -746.0 {
                    0.0
                } else {
                    d.exp()
                }
            })
            .sum()
    } else {
        let mid = terms.len() / 2;
        pairwise_shifted_sum(&terms[..mid], shift) + pairwise_shifted_sum(&terms[mid..], shift)
    }
}

/// Largest log in a slice, `-∞` for an empty slice.
pub fn log_max(terms: &[f64]) -> f64 {
    terms.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_exp_matches_linear() {
        let s = log_add_exp(2f64.ln(), 3f64.ln());
        assert!((s - 5f64.ln()).abs() < 1e-15);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 1.5), 1.5);
        assert_eq!(
            log_add_exp(f64::NEG_INFINITY, f64::NEG_INFINITY),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn sum_of_huge_terms_does_not_overflow() {
        let terms = [1000.0, 1000.0, 1000.0];
        let s = log_sum_exp(&terms);
        assert!((s - (1000.0 + 3f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn empty_and_zero_sums() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY; 40]), f64::NEG_INFINITY);
    }

    #[test]
    fn pairwise_tree_matches_direct_sum() {
        let xs: Vec<f64> = (1..=100).map(|i| i as f64 * 0.01).collect();
        let direct: f64 = xs.iter().sum();
        let logs: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
        assert!((log_sum_exp(&logs).exp() - direct).abs() / direct < 1e-13);
    }

    #[test]
    fn serde_encodes_zero_as_string() {
        let json = serde_json::to_string(&LogValue::ZERO).unwrap();
        assert_eq!(json, "\"-inf\"");
        let back: LogValue = serde_json::from_str(&json).unwrap();
        assert!(back.is_zero());
        let v: LogValue = serde_json::from_str("-1.5").unwrap();
        assert_eq!(v.log(), -1.5);
    }

    #[test]
    fn linear_materialization_is_bounded() {
        assert_eq!(LogValue::from_log(701.0).to_linear(), None);
        assert_eq!(LogValue::ZERO.to_linear(), Some(0.0));
        assert!((LogValue::from_log(1.0).to_linear().unwrap() - std::f64::consts::E).abs() < 1e-15);
    }
}
