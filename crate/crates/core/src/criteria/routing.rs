// SPDX-License-Identifier: Apache-2.0

//! Continuity and compactness verdicts for Toeplitz operators, routed to
//! the characterisation that covers the operator's variant and spaces.

use serde::{Deserialize, Serialize};

use super::condition::{certify, NStart, QuantifierCondition, Shape};
use crate::error::{Error, Result};
use crate::operators::{membership_in_dual, membership_in_space, SymbolSpec, ToeplitzOperator, Variant};
use crate::spaces::{
    check_subadditivity, nuclearity_verdict, ExponentSequence, SpaceDescriptor, SpaceKind,
    StabilityReport,
};
use crate::verdict::{Certificate, Outcome, Verdict, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Continuity,
    Compactness,
}

impl Property {
    pub fn shape(self) -> Shape {
        match self {
            Property::Continuity => Shape::ForallKExistsM,
            Property::Compactness => Shape::ExistsMForallK,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartReport {
    pub name: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub name: String,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<StabilityReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorVerdict {
    pub theorem_id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<String>,
    pub property: Property,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub parts: Vec<PartReport>,
    pub hypothesis_reports: Vec<HypothesisReport>,
    pub window: Window,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl OperatorVerdict {
    pub fn holds(&self) -> bool {
        self.outcome.holds()
    }

    pub fn fails(&self) -> bool {
        self.outcome.fails()
    }

    pub fn is_inconclusive(&self) -> bool {
        self.outcome.is_inconclusive()
    }

    pub fn verdict(&self) -> Verdict {
        Verdict::new(self.outcome.clone(), &self.window)
    }
}

enum Membership<'a> {
    InCodomain(&'a SymbolSpec),
    InDomainDual(&'a SymbolSpec),
}

struct Route<'a> {
    id: &'static str,
    membership: Membership<'a>,
    n_start: NStart,
    growth_hypothesis: Option<(&'static str, &'a ExponentSequence)>,
    nuclear_codomain: bool,
}

fn triangular_route<'a>(op: &'a ToeplitzOperator, property: Property) -> Result<Route<'a>> {
    let compact = property == Property::Compactness;
    match op.variant {
        Variant::Lower => {
            let theta = op.lower_part().expect("validated");
            match &op.codomain {
                SpaceDescriptor::PowerSeriesFinite { .. } => Ok(Route {
                    id: if compact { "P3" } else { "P2" },
                    membership: Membership::InCodomain(theta),
                    n_start: NStart::One,
                    growth_hypothesis: None,
                    nuclear_codomain: compact,
                }),
                SpaceDescriptor::PowerSeriesInfinite { alpha } => Ok(Route {
                    id: if compact { "P6" } else { "P5" },
                    membership: Membership::InCodomain(theta),
                    n_start: NStart::K,
                    growth_hypothesis: Some(("codomain exponent", alpha)),
                    nuclear_codomain: compact,
                }),
                SpaceDescriptor::GeneralKoethe { .. } => Err(Error::Unsupported(
                    "lower triangular operator into a general Köthe space: only necessary \
                     conditions are known (missing: a characterisation for general codomains)"
                        .into(),
                )),
            }
        }
        Variant::Upper => {
            let theta = op.upper_part().expect("validated");
            match &op.domain {
                SpaceDescriptor::PowerSeriesInfinite { .. } => Ok(Route {
                    id: if compact { "P10" } else { "P9" },
                    membership: Membership::InDomainDual(theta),
                    n_start: NStart::One,
                    growth_hypothesis: None,
                    nuclear_codomain: true,
                }),
                SpaceDescriptor::PowerSeriesFinite { alpha } => Ok(Route {
                    id: if compact { "P13" } else { "P12" },
                    membership: Membership::InDomainDual(theta),
                    n_start: NStart::K,
                    growth_hypothesis: Some(("domain exponent", alpha)),
                    nuclear_codomain: compact,
                }),
                SpaceDescriptor::GeneralKoethe { .. } => Err(Error::Unsupported(
                    "upper triangular operator on a general Köthe space: only necessary \
                     conditions are known (missing: a characterisation for general domains)"
                        .into(),
                )),
            }
        }
        Variant::Full => unreachable!("full operators are split before routing"),
    }
}

/// Theorem identifier a verdict for `op` would be routed to.
pub fn route_id(op: &ToeplitzOperator, property: Property) -> Result<String> {
    match op.variant {
        Variant::Full => Ok(full_route(op, property)?.0.to_string()),
        _ => Ok(triangular_route(op, property)?.id.to_string()),
    }
}

fn growth_report(label: &str, alpha: &ExponentSequence, window: &Window) -> HypothesisReport {
    let name = format!("growth condition on {label}");
    match check_subadditivity(alpha, window.n, window.growth_m_max) {
        Ok(r) => HypothesisReport {
            name,
            outcome: r.to_verdict(alpha, window).outcome,
            growth: Some(r),
        },
        Err(e) => HypothesisReport {
            name,
            outcome: Outcome::Inconclusive {
                reason: e.to_string(),
            },
            growth: None,
        },
    }
}

fn nuclear_report(space: &SpaceDescriptor, window: &Window) -> HypothesisReport {
    HypothesisReport {
        name: "codomain nuclear".into(),
        outcome: nuclearity_verdict(space, window).outcome,
        growth: None,
    }
}

fn triangular_verdict(op: &ToeplitzOperator, property: Property, window: &Window) -> Result<OperatorVerdict> {
    let route = triangular_route(op, property)?;
    let (membership_name, membership, theta) = match route.membership {
        Membership::InCodomain(theta) => (
            "symbol in codomain",
            membership_in_space(theta, &op.codomain, window),
            theta,
        ),
        Membership::InDomainDual(theta) => (
            "symbol in dual of domain",
            membership_in_dual(theta, &op.domain, window)?,
            theta,
        ),
    };
    let cond = QuantifierCondition {
        shape: property.shape(),
        lhs: op.codomain.clone(),
        rhs: op.domain.clone(),
        n_start: route.n_start,
    };
    let condition = certify(&cond, window)?;
    let mut hypotheses = Vec::new();
    if let Some((label, alpha)) = route.growth_hypothesis {
        hypotheses.push(growth_report(label, alpha, window));
    }
    if route.nuclear_codomain {
        hypotheses.push(nuclear_report(&op.codomain, window));
    }
    let parts = vec![
        PartReport {
            name: membership_name.into(),
            outcome: membership.outcome,
        },
        PartReport {
            name: "weight condition".into(),
            outcome: condition.outcome,
        },
    ];
    let mut notes = Vec::new();
    let outcome = combine(property, &parts, &hypotheses, theta.sign(0) != 0.0, &mut notes);
    Ok(assemble(route.id.into(), Vec::new(), property, outcome, parts, hypotheses, window, notes))
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    theorem_id: String,
    components: Vec<String>,
    property: Property,
    outcome: Outcome,
    parts: Vec<PartReport>,
    hypothesis_reports: Vec<HypothesisReport>,
    window: &Window,
    notes: Vec<String>,
) -> OperatorVerdict {
    OperatorVerdict {
        theorem_id,
        components,
        property,
        certificate: outcome.certificate().cloned(),
        outcome,
        parts,
        hypothesis_reports,
        window: window.clone(),
        notes,
    }
}

/// Folds part and hypothesis outcomes. The last part is the weight
/// condition and carries the certificate.
fn combine(
    property: Property,
    parts: &[PartReport],
    hypotheses: &[HypothesisReport],
    diagonal_nonzero: bool,
    notes: &mut Vec<String>,
) -> Outcome {
    let nuclear_ok = hypotheses
        .iter()
        .filter(|h| h.name == "codomain nuclear")
        .all(|h| h.outcome.holds());
    let (condition, memberships) = parts.split_last().expect("at least one part");
    if let Some(p) = memberships.iter().find(|p| p.outcome.fails()) {
        notes.push(format!("{} fails, which rules out continuity", p.name));
        return p.outcome.clone();
    }
    if condition.outcome.fails() {
        if !diagonal_nonzero {
            notes.push("the weight condition is only necessary when θ_0 ≠ 0".into());
        } else if property == Property::Compactness && !nuclear_ok {
            notes.push(
                "the weight condition fails, but it is only necessary for compactness when the \
                 codomain is nuclear, which is not certified"
                    .into(),
            );
        } else {
            return condition.outcome.clone();
        }
    }
    let pending: Vec<&str> = parts
        .iter()
        .map(|p| (p.name.as_str(), &p.outcome))
        .chain(hypotheses.iter().map(|h| (h.name.as_str(), &h.outcome)))
        .filter(|(_, o)| !o.holds())
        .map(|(n, _)| n)
        .collect();
    if pending.is_empty() {
        condition.outcome.clone()
    } else {
        Outcome::Inconclusive {
            reason: format!("not certified on the window: {}", pending.join(", ")),
        }
    }
}

fn full_route(op: &ToeplitzOperator, property: Property) -> Result<(&'static str, bool)> {
    let _ = property;
    match (op.domain.kind(), op.codomain.kind()) {
        (SpaceKind::Finite, SpaceKind::Infinite) => Err(Error::NotWellDefined(
            "a Toeplitz operator with both triangular parts is not well defined from Λ_1(α) \
             to Λ_∞(β): the lower part needs Λ_1(α) ⊆ Λ_∞(β)"
                .into(),
        )),
        (SpaceKind::Finite, SpaceKind::Finite) => Ok(("combined-finite", true)),
        (SpaceKind::Infinite, SpaceKind::Infinite) => Ok(("combined-infinite", true)),
        (SpaceKind::Infinite, SpaceKind::Finite) => Ok(("combined-mixed", false)),
        _ => Err(Error::Unsupported(
            "full Toeplitz operators are characterised between power series spaces only \
             (missing: a theorem for general Köthe spaces)"
                .into(),
        )),
    }
}

fn full_verdict(op: &ToeplitzOperator, property: Property, window: &Window) -> Result<OperatorVerdict> {
    let (id, combined_condition) = full_route(op, property)?;
    let lower = triangular_verdict(&op.part(Variant::Lower)?, property, window)?;
    let upper = triangular_verdict(&op.part(Variant::Upper)?, property, window)?;
    let mut parts = Vec::new();
    for (tag, v) in [("lower", &lower), ("upper", &upper)] {
        for p in &v.parts {
            parts.push(PartReport {
                name: format!("{tag}: {}", p.name),
                outcome: p.outcome.clone(),
            });
        }
    }
    let mut hypotheses: Vec<HypothesisReport> = Vec::new();
    for h in lower.hypothesis_reports.iter().chain(&upper.hypothesis_reports) {
        if !hypotheses.iter().any(|x| x.name == h.name) {
            hypotheses.push(h.clone());
        }
    }
    let mut notes = Vec::new();
    let condition = if combined_condition {
        let cond = QuantifierCondition {
            shape: property.shape(),
            lhs: op.codomain.clone(),
            rhs: op.domain.clone(),
            n_start: NStart::K,
        };
        certify(&cond, window)?.outcome
    } else {
        notes.push("membership of both parts characterises the operator here".into());
        match (&lower.outcome, &upper.outcome) {
            (Outcome::Holds { .. }, Outcome::Holds { .. }) => lower.outcome.clone(),
            (Outcome::FailsOnWindow { .. }, _) => lower.outcome.clone(),
            (_, Outcome::FailsOnWindow { .. }) => upper.outcome.clone(),
            (Outcome::Inconclusive { .. }, _) => lower.outcome.clone(),
            _ => upper.outcome.clone(),
        }
    };
    if combined_condition && property == Property::Compactness && id == "combined-finite" {
        notes.push(
            "read with the hypotheses of its component routes: Λ_1(β) nuclear and the condition \
             on e^{-β_n/k}"
                .into(),
        );
    }
    parts.push(PartReport {
        name: "combined weight condition".into(),
        outcome: condition,
    });
    for (tag, v) in [("lower", &lower), ("upper", &upper)] {
        for n in &v.notes {
            notes.push(format!("{tag}: {n}"));
        }
    }
    let outcome = match (&lower.outcome, &upper.outcome) {
        (Outcome::FailsOnWindow { .. }, _) => lower.outcome.clone(),
        (_, Outcome::FailsOnWindow { .. }) => upper.outcome.clone(),
        _ => combine(property, &parts, &hypotheses, true, &mut notes),
    };
    Ok(assemble(
        id.into(),
        vec![lower.theorem_id.clone(), upper.theorem_id.clone()],
        property,
        outcome,
        parts,
        hypotheses,
        window,
        notes,
    ))
}

/// Verdict for `property`, with every part and hypothesis reported.
pub fn operator_verdict(op: &ToeplitzOperator, property: Property, window: &Window) -> Result<OperatorVerdict> {
    window.validate()?;
    op.validate()?;
    match op.variant {
        Variant::Full => full_verdict(op, property, window),
        _ => triangular_verdict(op, property, window),
    }
}

pub fn continuity_verdict(op: &ToeplitzOperator, window: &Window) -> Result<OperatorVerdict> {
    operator_verdict(op, Property::Continuity, window)
}

pub fn compactness_verdict(op: &ToeplitzOperator, window: &Window) -> Result<OperatorVerdict> {
    operator_verdict(op, Property::Compactness, window)
}
