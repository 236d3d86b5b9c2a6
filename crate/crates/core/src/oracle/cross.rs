// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::curve::{oracle_verdict, default_norm, OracleVerdict};
use crate::criteria::{operator_verdict, OperatorVerdict, Property};
use crate::error::Result;
use crate::operators::ToeplitzOperator;
use crate::verdict::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Agreement {
    Agree,
    OracleInconclusive,
    TheoremInconclusive,
    Conflict,
}

/// Conflict only for Holds against Fails; otherwise an inconclusive oracle
/// takes precedence over an inconclusive theorem route.
pub fn agreement(theorem: &Outcome, oracle: &Outcome) -> Agreement {
    match (theorem, oracle) {
        (Outcome::Holds { .. }, Outcome::FailsOnWindow { .. })
        | (Outcome::FailsOnWindow { .. }, Outcome::Holds { .. }) => Agreement::Conflict,
        (_, Outcome::Inconclusive { .. }) => Agreement::OracleInconclusive,
        (Outcome::Inconclusive { .. }, _) => Agreement::TheoremInconclusive,
        _ => Agreement::Agree,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossReport {
    pub property: Property,
    pub theorem: OperatorVerdict,
    pub oracle: OracleVerdict,
    pub agreement: Agreement,
}

pub fn cross_validate(op: &ToeplitzOperator, property: Property, window: &crate::Window) -> Result<CrossReport> {
    let theorem = operator_verdict(op, property, window)?;
    let oracle = oracle_verdict(op, property, window, default_norm(op.variant))?;
    let agreement = agreement(&theorem.outcome, oracle.outcome());
    Ok(CrossReport {
        property,
        theorem,
        oracle,
        agreement,
    })
}
