// SPDX-License-Identifier: Apache-2.0

//! Finite sections `P_N T P_N x` of Toeplitz operators.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::{ToeplitzOperator, Variant};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Applied {
    pub values: Vec<f64>,
    /// Some output entry is not finite.
    pub overflow: bool,
}

impl Applied {
    fn new(values: Vec<f64>) -> Self {
        let overflow = values.iter().any(|v| !v.is_finite());
        Applied { values, overflow }
    }
}

/// Diagonal, strictly lower `θ̂_1..` and strictly upper `θ̌_1..` entries of
/// the `n × n` section.
struct Bands {
    diag: f64,
    below: Vec<f64>,
    above: Vec<f64>,
}

fn bands(op: &ToeplitzOperator, n: usize) -> Result<Bands> {
    let table = |part: Option<&super::SymbolSpec>| -> Result<Vec<f64>> {
        match part {
            Some(s) => s.value_table(n),
            None => Ok(vec![0.0; n]),
        }
    };
    let lo = table(op.lower_part())?;
    let up = table(op.upper_part())?;
    let diag = match op.variant {
        Variant::Lower => lo[0],
        Variant::Upper => up[0],
        Variant::Full => lo[0] + up[0],
    };
    Ok(Bands {
        diag,
        below: lo,
        above: up,
    })
}

fn input(x: &[f64], n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("truncation", "N must be positive"));
    }
    if let Some(p) = x.iter().skip(n).position(|v| *v != 0.0) {
        return Err(Error::Range(format!(
            "input has a nonzero entry at n = {} beyond N = {n}",
            n + p + 1
        )));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("input vector", "entries must be finite"));
    }
    let mut v = x[..x.len().min(n)].to_vec();
    v.resize(n, 0.0);
    Ok(v)
}

/// Direct `O(N²)` product.
pub fn apply_dense(op: &ToeplitzOperator, x: &[f64], n: usize) -> Result<Applied> {
    let x = input(x, n)?;
    let b = bands(op, n)?;
    let mut y = vec![0.0; n];
    for (r, yr) in y.iter_mut().enumerate() {
        let mut acc = b.diag * x[r];
        for (s, xs) in x[..r].iter().enumerate() {
            acc += b.below[r - s] * xs;
        }
        for (s, xs) in x.iter().enumerate().skip(r + 1) {
            acc += b.above[s - r] * xs;
        }
        *yr = acc;
    }
    Ok(Applied::new(y))
}

/// `O(N log N)` product through a circulant embedding of size `2N`.
pub fn apply_fast(op: &ToeplitzOperator, x: &[f64], n: usize) -> Result<Applied> {
    let x = input(x, n)?;
    let b = bands(op, n)?;
    let len = 2 * n;
    let mut c = vec![Complex::new(0.0, 0.0); len];
    c[0].re = b.diag;
    for i in 1..n {
        c[i].re = b.below[i];
        c[len - i].re = b.above[i];
    }
    let mut v: Vec<Complex<f64>> = x
        .iter()
        .map(|&re| Complex::new(re, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(len)
        .collect();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(len);
    let inv = planner.plan_fft_inverse(len);
    fwd.process(&mut c);
    fwd.process(&mut v);
    for (vi, ci) in v.iter_mut().zip(&c) {
        *vi *= *ci;
    }
    inv.process(&mut v);
    let scale = 1.0 / len as f64;
    Ok(Applied::new(v[..n].iter().map(|z| z.re * scale).collect()))
}
