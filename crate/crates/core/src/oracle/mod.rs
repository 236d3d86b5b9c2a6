// SPDX-License-Identifier: Apache-2.0

//! Finite-truncation evidence: column sup-ratio curves, empirical
//! continuity and compactness probes, and their comparison with the
//! theorem routes.

mod cross;
mod curve;
mod dense;
mod norms;

pub use cross::{agreement, cross_validate, Agreement, CrossReport};
pub use curve::{
    default_norm, oracle_compactness, oracle_continuity, oracle_verdict, ratio_curve, CurvePoint,
    OracleVerdict, RatioCurve, PLATEAU_TAG,
};
pub use dense::{dense_truncation, DenseMatrix};
pub use norms::ColumnNorms;
