// SPDX-License-Identifier: Apache-2.0

//! Certificate search for weight conditions, theorem routing for operator
//! verdicts, and tameness of operator families.

mod condition;
mod routing;
mod tameness;

pub use condition::{certify, NStart, QuantifierCondition, SMap, Shape};
pub(crate) use condition::{downgrade_tabulated, scan_exists_forall, scan_forall_exists};
pub use routing::{
    compactness_verdict, continuity_verdict, operator_verdict, route_id, HypothesisReport,
    OperatorVerdict, PartReport, Property,
};
pub use tameness::{
    tame_condition_certify, tameness_check, Constraint, FamilySpec, Sampler, TameConditionReport,
};
