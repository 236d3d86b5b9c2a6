// SPDX-License-Identifier: Apache-2.0

//! Exponent sequences, Köthe weight matrices and power series spaces.

mod descriptor;
mod exponent;
mod growth;
mod seminorm;
mod series;

pub use descriptor::{SpaceDescriptor, SpaceEval, SpaceKind};
pub use exponent::ExponentSequence;
pub use growth::{check_subadditivity, check_stable, GrowthOutcome, StabilityReport};
pub use seminorm::{seminorm_sum, seminorm_sum_log, seminorm_sup, seminorm_sup_log};
pub use series::{
    classify_series, gp_probe, nuclearity_verdict, SeriesClass, SeriesVerdict,
    CONVERGENCE_RATIO,
};

use crate::error::Result;
use crate::logval::LogValue;

/// `log a_{n,k}` of a space.
pub fn weight(space: &SpaceDescriptor, n: usize, k: usize) -> Result<LogValue> {
    space.weight(n, k)
}
