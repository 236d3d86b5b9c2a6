// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{Symbol, SymbolSpec};
use crate::error::{Error, Result};
use crate::logval::LogValue;
use crate::spaces::{seminorm_sum_log, seminorm_sup_log, SpaceDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Lower,
    Upper,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Sum,
    Sup,
}

/// A Toeplitz operator `K(a) -> K(b)` given by its symbol.
///
/// `Lower` has columns `T e_n = Σ_{j >= n} θ_{j-n} e_j`, `Upper` has
/// `T e_n = Σ_{j <= n} θ_{n-j} e_j`, and `Full` is their sum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToeplitzOperator {
    pub variant: Variant,
    pub domain: SpaceDescriptor,
    pub codomain: SpaceDescriptor,
    pub symbol: Symbol,
}

impl ToeplitzOperator {
    pub fn new(
        variant: Variant,
        symbol: Symbol,
        domain: SpaceDescriptor,
        codomain: SpaceDescriptor,
    ) -> Result<Self> {
        let op = ToeplitzOperator {
            variant,
            domain,
            codomain,
            symbol,
        };
        op.validate()?;
        Ok(op)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let op: ToeplitzOperator = serde_json::from_str(s)?;
        op.validate()?;
        Ok(op)
    }

    pub fn validate(&self) -> Result<()> {
        self.domain.validate()?;
        self.codomain.validate()?;
        self.symbol.validate()?;
        let missing = match self.variant {
            Variant::Lower => self.symbol.lower.is_none().then_some("lower"),
            Variant::Upper => self.symbol.upper.is_none().then_some("upper"),
            Variant::Full => {
                if self.symbol.lower.is_none() {
                    Some("lower")
                } else if self.symbol.upper.is_none() {
                    Some("upper")
                } else {
                    None
                }
            }
        };
        if let Some(part) = missing {
            return Err(Error::invalid(
                "operator",
                format!("{:?} variant needs a {part} symbol part", self.variant),
            ));
        }
        Ok(())
    }

    /// Lower part used by this variant (`θ̂`).
    pub fn lower_part(&self) -> Option<&SymbolSpec> {
        match self.variant {
            Variant::Lower | Variant::Full => self.symbol.lower.as_ref(),
            Variant::Upper => None,
        }
    }

    /// Upper part used by this variant (`θ̌`).
    pub fn upper_part(&self) -> Option<&SymbolSpec> {
        match self.variant {
            Variant::Upper | Variant::Full => self.symbol.upper.as_ref(),
            Variant::Lower => None,
        }
    }

    /// The operator restricted to one triangular part, same spaces.
    pub fn part(&self, variant: Variant) -> Result<ToeplitzOperator> {
        let symbol = match variant {
            Variant::Lower => Symbol {
                lower: self.symbol.lower.clone(),
                upper: None,
            },
            Variant::Upper => Symbol {
                lower: None,
                upper: self.symbol.upper.clone(),
            },
            Variant::Full => self.symbol.clone(),
        };
        ToeplitzOperator::new(variant, symbol, self.domain.clone(), self.codomain.clone())
    }

    pub fn with_symbol(&self, symbol: Symbol) -> Result<ToeplitzOperator> {
        ToeplitzOperator::new(self.variant, symbol, self.domain.clone(), self.codomain.clone())
    }

    /// Matrix entry `M[j][n]` (1-based row `j`, column `n`).
    pub fn entry(&self, j: usize, n: usize) -> Result<f64> {
        let below = |i: usize| self.lower_part().map_or(Ok(0.0), |s| s.value(i));
        let above = |i: usize| self.upper_part().map_or(Ok(0.0), |s| s.value(i));
        if j > n {
            below(j - n)
        } else if j < n {
            above(n - j)
        } else {
            Ok(below(0)? + above(0)?)
        }
    }

    /// `log |M[j][n]|` computed without leaving the log domain off the
    /// diagonal.
    pub fn log_abs_entry(&self, j: usize, n: usize) -> Result<LogValue> {
        let below = |i: usize| self.lower_part().map_or(Ok(LogValue::ZERO), |s| s.log_abs(i));
        let above = |i: usize| self.upper_part().map_or(Ok(LogValue::ZERO), |s| s.log_abs(i));
        if j > n {
            below(j - n)
        } else if j < n {
            above(n - j)
        } else {
            match self.variant {
                Variant::Lower => below(0),
                Variant::Upper => above(0),
                Variant::Full => Ok(LogValue::from_abs(self.symbol.diagonal()?)),
            }
        }
    }

    fn column_rows(&self, n: usize, n_trunc: usize) -> std::ops::RangeInclusive<usize> {
        match self.variant {
            Variant::Lower => n..=n_trunc,
            Variant::Upper => 1..=n,
            Variant::Full => 1..=n_trunc,
        }
    }

    /// Nonzero entries `(j, M[j][n])` of column `n`, rows `j <= n_trunc`.
    pub fn column(&self, n: usize, n_trunc: usize) -> Result<Vec<(usize, f64)>> {
        check_column(n, n_trunc)?;
        let mut out = Vec::new();
        for j in self.column_rows(n, n_trunc) {
            let v = self.entry(j, n)?;
            if v != 0.0 {
                out.push((j, v));
            }
        }
        Ok(out)
    }

    /// Column `n` as `(j, log |M[j][n]|)`, zero entries omitted.
    pub fn column_log(&self, n: usize, n_trunc: usize) -> Result<Vec<(usize, LogValue)>> {
        check_column(n, n_trunc)?;
        let mut out = Vec::new();
        for j in self.column_rows(n, n_trunc) {
            let v = self.log_abs_entry(j, n)?;
            if !v.is_zero() {
                out.push((j, v));
            }
        }
        Ok(out)
    }

    /// `log ‖T e_n‖_k` in the codomain, column truncated at `n_trunc`.
    pub fn column_norm(&self, n: usize, k: usize, n_trunc: usize, kind: NormKind) -> Result<LogValue> {
        let col = self.column_log(n, n_trunc)?;
        match kind {
            NormKind::Sum => seminorm_sum_log(&self.codomain, &col, k),
            NormKind::Sup => seminorm_sup_log(&self.codomain, &col, k),
        }
    }
}

fn check_column(n: usize, n_trunc: usize) -> Result<()> {
    if n == 0 || n > n_trunc {
        return Err(Error::Range(format!(
            "column n = {n} outside 1..={n_trunc}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::ExponentSequence;

    fn l1(p: f64) -> SpaceDescriptor {
        SpaceDescriptor::finite(ExponentSequence::power(p))
    }

    #[test]
    fn lower_delta_column_is_unit() {
        let op = ToeplitzOperator::new(Variant::Lower, Symbol::lower(SymbolSpec::delta()), l1(1.0), l1(1.0))
            .unwrap();
        assert_eq!(op.column(5, 10).unwrap(), vec![(5, 1.0)]);
    }

    #[test]
    fn upper_column_reads_matrix_display() {
        let theta = SymbolSpec::Explicit {
            values: vec![1.0, 2.0, 3.0, 4.0],
        };
        let op = ToeplitzOperator::new(Variant::Upper, Symbol::upper(theta), l1(1.0), l1(1.0)).unwrap();
        assert_eq!(op.column(3, 10).unwrap(), vec![(1, 3.0), (2, 2.0), (3, 1.0)]);
    }

    #[test]
    fn full_first_column_sums_diagonal_parts() {
        let sym = Symbol::full(
            SymbolSpec::Explicit {
                values: vec![0.5, 2.0, 3.0],
            },
            SymbolSpec::Explicit {
                values: vec![0.25, 9.0],
            },
        )
        .unwrap();
        let op = ToeplitzOperator::new(Variant::Full, sym, l1(1.0), l1(1.0)).unwrap();
        assert_eq!(op.column(1, 10).unwrap(), vec![(1, 0.75), (2, 2.0), (3, 3.0)]);
        assert_eq!(op.column(2, 10).unwrap(), vec![(1, 9.0), (2, 0.75), (3, 2.0), (4, 3.0)]);
    }

    #[test]
    fn geometric_column_norm_closed_form() {
        // Σ_{j>=1} 0.5^{j-1} e^{-j} = e^{-1} / (1 - 0.5 e^{-1})
        let op = ToeplitzOperator::new(
            Variant::Lower,
            Symbol::lower(SymbolSpec::geometric(0.5)),
            l1(1.0),
            l1(1.0),
        )
        .unwrap();
        let v = op.column_norm(1, 1, 200, NormKind::Sum).unwrap();
        let e1 = (-1.0f64).exp();
        let expected = e1 / (1.0 - 0.5 * e1);
        assert!((v.log() - expected.ln()).abs() < 1e-12);
        assert!((expected - 0.45080).abs() < 1e-5);
    }

    #[test]
    fn delta_column_norms_are_weights() {
        for variant in [Variant::Lower, Variant::Upper] {
            let sym = match variant {
                Variant::Lower => Symbol::lower(SymbolSpec::delta()),
                _ => Symbol::upper(SymbolSpec::delta()),
            };
            let cod = SpaceDescriptor::infinite(ExponentSequence::power(2.0));
            let op = ToeplitzOperator::new(variant, sym, l1(1.0), cod.clone()).unwrap();
            for kind in [NormKind::Sum, NormKind::Sup] {
                assert_eq!(op.column_norm(4, 3, 10, kind).unwrap(), cod.weight(4, 3).unwrap());
            }
        }
    }

    #[test]
    fn variant_requires_matching_part() {
        assert!(ToeplitzOperator::new(Variant::Upper, Symbol::lower(SymbolSpec::delta()), l1(1.0), l1(1.0))
            .is_err());
        assert!(ToeplitzOperator::new(Variant::Full, Symbol::lower(SymbolSpec::delta()), l1(1.0), l1(1.0))
            .is_err());
    }

    #[test]
    fn operator_json() {
        let json = r#"{"variant":"lower",
            "domain":{"kind":"power_series_finite","alpha":{"form":"power","p":1.0}},
            "codomain":{"kind":"power_series_finite","alpha":{"form":"power","p":2.0}},
            "symbol":{"lower":{"form":"geometric","r":0.36787944117144233}}}"#;
        let op = ToeplitzOperator::from_json_str(json).unwrap();
        assert_eq!(op.variant, Variant::Lower);
        assert!(op.column(1, 0).is_err());
    }
}
