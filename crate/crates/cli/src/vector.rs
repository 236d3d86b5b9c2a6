// SPDX-License-Identifier: Apache-2.0

//! Plain-text vectors: one coefficient per line, line `i` holds `x_i`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum VectorError {
    #[error("line {line}: cannot parse {text:?} as a number")]
    Parse { line: usize, text: String },
    #[error("line {line}: coefficient is not finite")]
    NotFinite { line: usize },
    #[error("line {line}: blank line inside the vector")]
    Blank { line: usize },
}

pub fn parse_vector(text: &str) -> Result<Vec<f64>, VectorError> {
    let lines: Vec<&str> = text.lines().collect();
    // trailing blank lines are tolerated, interior ones would shift indices
    let end = lines.iter().rposition(|l| !l.trim().is_empty()).map_or(0, |p| p + 1);
    let mut out = Vec::with_capacity(end);
    for (i, raw) in lines[..end].iter().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() {
            return Err(VectorError::Blank { line });
        }
        let v: f64 = t.parse().map_err(|_| VectorError::Parse {
            line,
            text: t.chars().take(40).collect(),
        })?;
        if !v.is_finite() {
            return Err(VectorError::NotFinite { line });
        }
        out.push(v);
    }
    Ok(out)
}

/// Shortest round-trip decimal form, one value per line.
pub fn format_vector(x: &[f64]) -> String {
    let mut s = String::with_capacity(x.len() * 8);
    for v in x {
        s.push_str(&format!("{v:?}\n"));
    }
    s
}
