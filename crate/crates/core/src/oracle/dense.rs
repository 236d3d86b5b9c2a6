// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::ToeplitzOperator;

/// Row-major `n × n` matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseMatrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl DenseMatrix {
    /// Entry at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[(row - 1) * self.n + (col - 1)]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[(row - 1) * self.n..row * self.n]
    }
}

/// The leading `n × n` section of the operator's matrix.
pub fn dense_truncation(op: &ToeplitzOperator, n: usize, cap: usize) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::invalid("truncation", "N must be positive"));
    }
    if n > cap {
        return Err(Error::Config(format!(
            "dense truncation N = {n} exceeds the cap {cap}"
        )));
    }
    let below = op.lower_part().map(|s| s.value_table(n)).transpose()?;
    let above = op.upper_part().map(|s| s.value_table(n)).transpose()?;
    let mut data = vec![0.0; n * n];
    // Every entry is `lower + upper` in that order, so a full operator's
    // section equals the sum of its parts' sections bit for bit.
    for j in 0..n {
        for c in 0..n {
            let lo = below.as_ref().filter(|_| j >= c).map_or(0.0, |t| t[j - c]);
            let up = above.as_ref().filter(|_| j <= c).map_or(0.0, |t| t[c - j]);
            data[j * n + c] = lo + up;
        }
    }
    Ok(DenseMatrix { n, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{Symbol, SymbolSpec, Variant};
    use crate::spaces::{ExponentSequence, SpaceDescriptor};

    fn op(variant: Variant, symbol: Symbol) -> ToeplitzOperator {
        let s = SpaceDescriptor::finite(ExponentSequence::linear());
        ToeplitzOperator::new(variant, symbol, s.clone(), s).unwrap()
    }

    #[test]
    fn delta_is_identity() {
        let m = dense_truncation(&op(Variant::Lower, Symbol::lower(SymbolSpec::delta())), 5, 16).unwrap();
        for i in 1..=5 {
            for j in 1..=5 {
                assert_eq!(m.get(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn upper_shift_is_superdiagonal() {
        let m = dense_truncation(&op(Variant::Upper, Symbol::upper(SymbolSpec::delta_at(1))), 4, 16).unwrap();
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(m.get(i, j), if j == i + 1 { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn agrees_with_entries_and_respects_cap() {
        let sym = Symbol::full(SymbolSpec::geometric(0.3), SymbolSpec::geometric(-0.7)).unwrap();
        let o = op(Variant::Full, sym);
        let m = dense_truncation(&o, 12, 16).unwrap();
        for i in 1..=12 {
            for j in 1..=12 {
                assert_eq!(m.get(i, j), o.entry(i, j).unwrap());
            }
        }
        assert!(matches!(dense_truncation(&o, 17, 16), Err(Error::Config(_))));
    }
}
