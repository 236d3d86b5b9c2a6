// SPDX-License-Identifier: Apache-2.0

//! Bulk computation of `log ‖P_N T e_n‖_k` for `n = 1..=N`.
//!
//! Geometric parts use the recurrences `A(n) = s·w(n) ⊕ ρ·A(n+1)` (lower)
//! and `B(n) = s·w(n) ⊕ ρ·B(n-1)` (upper), where `⊕` is log-add for the sum
//! norm and max for the sup norm. Finitely supported parts are summed
//! sparsely; everything else falls back to the quadratic pass.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::logval::{log_add_exp, log_max, log_sum_exp, LogValue};
use crate::operators::{NormKind, SymbolSpec, ToeplitzOperator, Variant};
use crate::spaces::SpaceEval;
use crate::verdict::SupProfile;

#[derive(Clone, Debug)]
enum PartTable {
    Geometric { ls: f64, lr: f64 },
    Sparse(Vec<(usize, f64)>),
    Dense(Vec<f64>),
}

impl PartTable {
    fn build(spec: &SymbolSpec, n: usize) -> Result<Self> {
        if let Some((ls, lr)) = spec.geometric_profile() {
            return Ok(PartTable::Geometric { ls, lr });
        }
        if let Some(len) = spec.support_len() {
            let mut entries = Vec::new();
            for i in 0..len.min(n) {
                let t = spec.log_abs(i)?.log();
                if t != f64::NEG_INFINITY {
                    entries.push((i, t));
                }
            }
            return Ok(PartTable::Sparse(entries));
        }
        Ok(PartTable::Dense(spec.log_abs_table(n)?))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    /// rows `j = n + i`
    Down,
    /// rows `j = n - i`
    Up,
}

#[inline]
fn comb(kind: NormKind, a: f64, b: f64) -> f64 {
    match kind {
        NormKind::Sum => log_add_exp(a, b),
        NormKind::Sup => a.max(b),
    }
}

fn reduce(kind: NormKind, terms: &[f64]) -> f64 {
    match kind {
        NormKind::Sum => log_sum_exp(terms),
        NormKind::Sup => log_max(terms),
    }
}

/// `out[n] = ⊕_{i >= start} (t_i + w[n ± i])` over in-range rows.
fn part_sums(part: &PartTable, w: &[f64], kind: NormKind, dir: Direction, start: usize) -> Vec<f64> {
    let nt = w.len();
    match part {
        PartTable::Geometric { ls, lr } => {
            let mut inc = vec![f64::NEG_INFINITY; nt];
            if *lr == f64::NEG_INFINITY {
                for (o, wn) in inc.iter_mut().zip(w) {
                    *o = ls + wn;
                }
            } else {
                match dir {
                    Direction::Down => {
                        let mut acc = f64::NEG_INFINITY;
                        for n in (0..nt).rev() {
                            acc = comb(kind, ls + w[n], lr + acc);
                            inc[n] = acc;
                        }
                    }
                    Direction::Up => {
                        let mut acc = f64::NEG_INFINITY;
                        for n in 0..nt {
                            acc = comb(kind, ls + w[n], lr + acc);
                            inc[n] = acc;
                        }
                    }
                }
            }
            if start == 0 {
                return inc;
            }
            // strict part: ρ times the inclusive value one row further out
            (0..nt)
                .map(|n| {
                    let next = match dir {
                        Direction::Down => inc.get(n + 1).copied(),
                        Direction::Up => n.checked_sub(1).map(|p| inc[p]),
                    };
                    match next {
                        Some(v) if *lr != f64::NEG_INFINITY => lr + v,
                        _ => f64::NEG_INFINITY,
                    }
                })
                .collect()
        }
        PartTable::Sparse(entries) => (0..nt)
            .map(|n| {
                let mut buf = Vec::new();
                for &(i, t) in entries.iter().filter(|e| e.0 >= start) {
                    let row = match dir {
                        Direction::Down => n + i,
                        Direction::Up => match n.checked_sub(i) {
                            Some(r) => r,
                            None => continue,
                        },
                    };
                    if row < nt {
                        buf.push(t + w[row]);
                    }
                }
                reduce(kind, &buf)
            })
            .collect(),
        PartTable::Dense(theta) => (0..nt)
            .into_par_iter()
            .map_init(Vec::new, |buf, n| {
                buf.clear();
                match dir {
                    Direction::Down => {
                        for i in start..(nt - n) {
                            buf.push(theta[i] + w[n + i]);
                        }
                    }
                    Direction::Up => {
                        for i in start..=n {
                            buf.push(theta[i] + w[n - i]);
                        }
                    }
                }
                reduce(kind, buf)
            })
            .collect(),
    }
}

/// Column norms of one operator, cached per `(k, truncation)`.
pub struct ColumnNorms<'a> {
    op: &'a ToeplitzOperator,
    kind: NormKind,
    n_max: usize,
    cod: SpaceEval<'a>,
    dom: SpaceEval<'a>,
    lower: Option<PartTable>,
    upper: Option<PartTable>,
    diag: f64,
    cache: HashMap<(usize, usize), Vec<f64>>,
}

impl<'a> ColumnNorms<'a> {
    pub fn new(op: &'a ToeplitzOperator, n_max: usize, kind: NormKind) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::invalid("truncation", "N must be positive"));
        }
        let cod = op.codomain.evaluator(n_max)?;
        let dom = op.domain.evaluator(n_max)?;
        let lower = op
            .lower_part()
            .map(|s| PartTable::build(s, n_max))
            .transpose()?;
        let upper = op
            .upper_part()
            .map(|s| PartTable::build(s, n_max))
            .transpose()?;
        let diag = match op.variant {
            Variant::Full => LogValue::from_abs(op.symbol.diagonal()?).log(),
            _ => f64::NEG_INFINITY,
        };
        Ok(ColumnNorms {
            op,
            kind,
            n_max,
            cod,
            dom,
            lower,
            upper,
            diag,
            cache: HashMap::new(),
        })
    }

    pub fn operator(&self) -> &ToeplitzOperator {
        self.op
    }

    pub fn kind(&self) -> NormKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `log ‖e_n‖_m = log a_{n,m}` in the domain.
    pub fn domain_weight(&self, n: usize, m: usize) -> f64 {
        self.dom.log_weight(n, m)
    }

    /// `log ‖P_{nt} T e_n‖_k` for `n = 1..=nt` (index 0 is `n = 1`).
    pub fn norms(&mut self, k: usize, nt: usize) -> Result<&[f64]> {
        if k == 0 || nt == 0 || nt > self.n_max {
            return Err(Error::Range(format!(
                "norm table request (k = {k}, N = {nt}) outside 1..={}",
                self.n_max
            )));
        }
        if !self.cache.contains_key(&(k, nt)) {
            let v = self.compute(k, nt);
            self.cache.insert((k, nt), v);
        }
        Ok(&self.cache[&(k, nt)])
    }

    fn compute(&self, k: usize, nt: usize) -> Vec<f64> {
        let w = self.cod.column(k, nt);
        let kind = self.kind;
        match self.op.variant {
            Variant::Lower => part_sums(self.lower.as_ref().expect("validated"), &w, kind, Direction::Down, 0),
            Variant::Upper => part_sums(self.upper.as_ref().expect("validated"), &w, kind, Direction::Up, 0),
            Variant::Full => {
                let lo = part_sums(self.lower.as_ref().expect("validated"), &w, kind, Direction::Down, 1);
                let up = part_sums(self.upper.as_ref().expect("validated"), &w, kind, Direction::Up, 1);
                (0..nt)
                    .map(|n| {
                        let d = if self.diag == f64::NEG_INFINITY {
                            f64::NEG_INFINITY
                        } else {
                            self.diag + w[n]
                        };
                        reduce(kind, &[up[n], d, lo[n]])
                    })
                    .collect()
            }
        }
    }

    /// `log ‖P_{nt} T e_n‖_k − log a_{n,m}` for `n = 1..=nt`.
    pub fn ratios(&mut self, k: usize, m: usize, nt: usize) -> Result<Vec<f64>> {
        let dom: Vec<f64> = (1..=nt).map(|n| self.dom.log_weight(n, m)).collect();
        let norms = self.norms(k, nt)?;
        Ok(norms
            .iter()
            .zip(&dom)
            .map(|(t, d)| {
                if *t == f64::NEG_INFINITY {
                    f64::NEG_INFINITY
                } else if *d == f64::NEG_INFINITY {
                    f64::INFINITY
                } else {
                    t - d
                }
            })
            .collect())
    }

    /// `sup_{n <= nt} log ‖P_{nt} T e_n‖_k − log a_{n,m}`.
    pub fn ratio_sup(&mut self, k: usize, m: usize, nt: usize) -> Result<LogValue> {
        Ok(LogValue::from_log(log_max(&self.ratios(k, m, nt)?)))
    }

    /// Plateau profile with columns truncated at `nt / 2` for the half
    /// supremum and at `nt` for everything else.
    pub fn profile(&mut self, k: usize, m: usize, nt: usize) -> Result<SupProfile> {
        let half = self.ratio_sup(k, m, nt / 2)?;
        let mut p = SupProfile::from_gap(&self.ratios(k, m, nt)?, 1, nt / 2);
        p.half = half;
        Ok(p)
    }
}
