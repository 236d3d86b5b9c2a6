// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logval::LogValue;
use crate::spaces::ExponentSequence;

/// A one-sided sequence `(θ_j)_{j >= 0}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum SymbolSpec {
    /// Listed entries, extended by zeros.
    Explicit { values: Vec<f64> },
    /// `θ_j = r^j`.
    Geometric { r: f64 },
    /// `θ_j = e^{c · α_{j+1}}`.
    ExpOfExponent { c: f64, alpha: ExponentSequence },
    /// `θ_j = (j + 1)^d`.
    Polynomial { d: i32 },
    /// `θ_j = factor · base_j`.
    Scaled { factor: f64, base: Box<SymbolSpec> },
}

impl SymbolSpec {
    /// `δ_0`: one at `j = 0`, zero elsewhere.
    pub fn delta() -> Self {
        SymbolSpec::Explicit { values: vec![1.0] }
    }

    /// `δ_i`.
    pub fn delta_at(i: usize) -> Self {
        let mut values = vec![0.0; i + 1];
        values[i] = 1.0;
        SymbolSpec::Explicit { values }
    }

    pub fn geometric(r: f64) -> Self {
        SymbolSpec::Geometric { r }
    }

    pub fn scaled(self, factor: f64) -> Self {
        SymbolSpec::Scaled {
            factor,
            base: Box::new(self),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SymbolSpec::Explicit { values } => {
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::invalid("symbol", "explicit entries must be finite"));
                }
            }
            SymbolSpec::Geometric { r } => {
                if !r.is_finite() {
                    return Err(Error::invalid("symbol", "geometric ratio must be finite"));
                }
            }
            SymbolSpec::ExpOfExponent { c, alpha } => {
                if !c.is_finite() {
                    return Err(Error::invalid("symbol", "exponent coefficient must be finite"));
                }
                alpha.validate()?;
            }
            SymbolSpec::Polynomial { .. } => {}
            SymbolSpec::Scaled { factor, base } => {
                if !(factor.is_finite() && *factor != 0.0) {
                    return Err(Error::invalid("symbol", "scale factor must be finite and nonzero"));
                }
                base.validate()?;
            }
        }
        Ok(())
    }

    /// `log |θ_j|`.
    pub fn log_abs(&self, j: usize) -> Result<LogValue> {
        Ok(match self {
            SymbolSpec::Explicit { values } => values
                .get(j)
                .map(|v| LogValue::from_abs(*v))
                .unwrap_or(LogValue::ZERO),
            SymbolSpec::Geometric { r } => {
                if j == 0 {
                    LogValue::ONE
                } else {
                    LogValue::from_log(j as f64 * r.abs().ln())
                }
            }
            SymbolSpec::ExpOfExponent { c, alpha } => {
                LogValue::from_log(c * alpha.value(j + 1)?)
            }
            SymbolSpec::Polynomial { d } => LogValue::from_log(*d as f64 * ((j + 1) as f64).ln()),
            SymbolSpec::Scaled { factor, base } => {
                base.log_abs(j)? + LogValue::from_abs(*factor)
            }
        })
    }

    /// Sign of `θ_j` as `-1`, `0` or `1`.
    pub fn sign(&self, j: usize) -> f64 {
        match self {
            SymbolSpec::Explicit { values } => values.get(j).map_or(0.0, |v| signum0(*v)),
            SymbolSpec::Geometric { r } => {
                if j == 0 {
                    1.0
                } else if *r == 0.0 {
                    0.0
                } else if *r < 0.0 && j % 2 == 1 {
                    -1.0
                } else {
                    1.0
                }
            }
            SymbolSpec::ExpOfExponent { .. } | SymbolSpec::Polynomial { .. } => 1.0,
            SymbolSpec::Scaled { factor, base } => signum0(*factor) * base.sign(j),
        }
    }

    /// `θ_j` in the linear domain; may be infinite when the magnitude
    /// overflows.
    pub fn value(&self, j: usize) -> Result<f64> {
        if let SymbolSpec::Explicit { values } = self {
            return Ok(values.get(j).copied().unwrap_or(0.0));
        }
        let s = self.sign(j);
        if s == 0.0 {
            return Ok(0.0);
        }
        Ok(s * self.log_abs(j)?.log().exp())
    }

    /// `log |θ_j|` for `j = 0..len`.
    pub fn log_abs_table(&self, len: usize) -> Result<Vec<f64>> {
        (0..len).map(|j| self.log_abs(j).map(LogValue::log)).collect()
    }

    /// `θ_j` for `j = 0..len`.
    pub fn value_table(&self, len: usize) -> Result<Vec<f64>> {
        (0..len).map(|j| self.value(j)).collect()
    }

    /// Length of the support when it is finite.
    pub fn support_len(&self) -> Option<usize> {
        match self {
            SymbolSpec::Explicit { values } => {
                Some(values.iter().rposition(|v| *v != 0.0).map_or(0, |p| p + 1))
            }
            SymbolSpec::Geometric { r } if *r == 0.0 => Some(1),
            SymbolSpec::Scaled { base, .. } => base.support_len(),
            _ => None,
        }
    }

    /// `(log s, log ρ)` when `|θ_j| = s ρ^j` for every `j >= 0`.
    pub fn geometric_profile(&self) -> Option<(f64, f64)> {
        match self {
            SymbolSpec::Geometric { r } => Some((0.0, r.abs().ln())),
            // e^{c(a(j+1)+b)} = e^{c(a+b)} · (e^{ca})^j
            SymbolSpec::ExpOfExponent { c, alpha } => {
                let (a, b) = match alpha {
                    ExponentSequence::Power { p } if *p == 1.0 => (1.0, 0.0),
                    ExponentSequence::Affine { a, b } => (*a, *b),
                    _ => return None,
                };
                Some((c * (a + b), c * a))
            }
            SymbolSpec::Scaled { factor, base } => base
                .geometric_profile()
                .map(|(s, rho)| (s + factor.abs().ln(), rho)),
            _ => None,
        }
    }
}

fn signum0(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Symbol of a Toeplitz operator: the lower part `(θ_0', θ_1, θ_2, …)` and
/// the upper part `(θ_0'', θ_{-1}, θ_{-2}, …)`. The diagonal of the full
/// matrix is `θ_0 = θ_0' + θ_0''`.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Symbol {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<SymbolSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<SymbolSpec>,
}

impl Symbol {
    pub fn lower(spec: SymbolSpec) -> Self {
        Symbol {
            lower: Some(spec),
            upper: None,
        }
    }

    pub fn upper(spec: SymbolSpec) -> Self {
        Symbol {
            lower: None,
            upper: Some(spec),
        }
    }

    pub fn full(lower: SymbolSpec, upper: SymbolSpec) -> Result<Self> {
        let s = Symbol {
            lower: Some(lower),
            upper: Some(upper),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let symbol: Symbol = serde_json::from_str(s)?;
        symbol.validate()?;
        Ok(symbol)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lower.is_none() && self.upper.is_none() {
            return Err(Error::invalid("symbol", "needs a lower or an upper part"));
        }
        for part in self.lower.iter().chain(self.upper.iter()) {
            part.validate()?;
        }
        if let (Some(lo), Some(up)) = (&self.lower, &self.upper) {
            if lo.sign(0) == 0.0 || up.sign(0) == 0.0 {
                return Err(Error::Invariant(
                    "both diagonal parts θ_0' and θ_0'' must be nonzero".into(),
                ));
            }
        }
        Ok(())
    }

    /// `θ_0' + θ_0''` (or the single present part).
    pub fn diagonal(&self) -> Result<f64> {
        let lo = self.lower.as_ref().map(|s| s.value(0)).transpose()?.unwrap_or(0.0);
        let up = self.upper.as_ref().map(|s| s.value(0)).transpose()?.unwrap_or(0.0);
        Ok(lo + up)
    }

    /// The same symbol with every entry multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Symbol {
        Symbol {
            lower: self.lower.clone().map(|s| s.scaled(factor)),
            upper: self.upper.clone().map(|s| s.scaled(factor)),
        }
    }
}

/// Finite two-sided symbol data `(…, θ_{-2}, θ_{-1}, θ_0, θ_1, θ_2, …)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoSidedSymbol {
    pub diagonal: f64,
    /// `θ_1, θ_2, …`
    pub below: Vec<f64>,
    /// `θ_{-1}, θ_{-2}, …`
    pub above: Vec<f64>,
}

/// Splits a two-sided symbol into lower and upper parts with
/// `θ_0 = θ_0' + θ_0''`.
pub fn decompose(full: &TwoSidedSymbol, split: (f64, f64)) -> Result<Symbol> {
    let (d_lower, d_upper) = split;
    if !(d_lower.is_finite() && d_upper.is_finite()) || d_lower == 0.0 || d_upper == 0.0 {
        return Err(Error::Invariant(format!(
            "split components must be finite and nonzero, got ({d_lower}, {d_upper})"
        )));
    }
    let tol = 1e-12 * full.diagonal.abs().max(1.0);
    if ((d_lower + d_upper) - full.diagonal).abs() > tol {
        return Err(Error::Invariant(format!(
            "split ({d_lower}, {d_upper}) does not sum to θ_0 = {}",
            full.diagonal
        )));
    }
    let mut lower = Vec::with_capacity(full.below.len() + 1);
    lower.push(d_lower);
    lower.extend_from_slice(&full.below);
    let mut upper = Vec::with_capacity(full.above.len() + 1);
    upper.push(d_upper);
    upper.extend_from_slice(&full.above);
    Symbol::full(
        SymbolSpec::Explicit { values: lower },
        SymbolSpec::Explicit { values: upper },
    )
}
