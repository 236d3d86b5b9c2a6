// SPDX-License-Identifier: Apache-2.0

use super::SpaceDescriptor;
use crate::error::{Error, Result};
use crate::logval::{log_max, log_sum_exp, LogValue};

/// `log Σ_{n <= n_trunc} |x_n| a_{n,k}`, with `x[0]` holding `x_1`.
pub fn seminorm_sum(
    space: &SpaceDescriptor,
    x: &[f64],
    k: usize,
    n_trunc: usize,
) -> Result<LogValue> {
    let terms = weighted_terms(space, linear_entries(x, n_trunc)?, k)?;
    Ok(LogValue::from_log(log_sum_exp(&terms)))
}

/// `log max_{n <= n_trunc} |x_n| a_{n,k}`.
pub fn seminorm_sup(
    space: &SpaceDescriptor,
    x: &[f64],
    k: usize,
    n_trunc: usize,
) -> Result<LogValue> {
    let terms = weighted_terms(space, linear_entries(x, n_trunc)?, k)?;
    Ok(LogValue::from_log(log_max(&terms)))
}

/// Sum seminorm of a sparse vector given as `(n, log|x_n|)` pairs in
/// ascending `n`.
pub fn seminorm_sum_log(
    space: &SpaceDescriptor,
    entries: &[(usize, LogValue)],
    k: usize,
) -> Result<LogValue> {
    let terms = weighted_terms(space, entries.iter().copied(), k)?;
    Ok(LogValue::from_log(log_sum_exp(&terms)))
}

/// Sup seminorm of a sparse vector given as `(n, log|x_n|)` pairs.
pub fn seminorm_sup_log(
    space: &SpaceDescriptor,
    entries: &[(usize, LogValue)],
    k: usize,
) -> Result<LogValue> {
    let terms = weighted_terms(space, entries.iter().copied(), k)?;
    Ok(LogValue::from_log(log_max(&terms)))
}

fn linear_entries(
    x: &[f64],
    n_trunc: usize,
) -> Result<impl Iterator<Item = (usize, LogValue)> + '_> {
    if let Some(pos) = x.iter().skip(n_trunc).position(|v| *v != 0.0) {
        return Err(Error::Range(format!(
            "vector has a nonzero entry at n = {} beyond the truncation {}",
            n_trunc + pos + 1,
            n_trunc
        )));
    }
    Ok(x.iter()
        .take(n_trunc)
        .enumerate()
        .map(|(i, v)| (i + 1, LogValue::from_abs(*v))))
}

fn weighted_terms(
    space: &SpaceDescriptor,
    entries: impl Iterator<Item = (usize, LogValue)>,
    k: usize,
) -> Result<Vec<f64>> {
    let mut terms = Vec::new();
    for (n, mag) in entries {
        if mag.is_zero() {
            continue;
        }
        terms.push(mag.log() + space.weight(n, k)?.log());
    }
    Ok(terms)
}
