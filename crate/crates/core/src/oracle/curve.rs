// SPDX-License-Identifier: Apache-2.0

//! Sup-ratio curves `sup_{n <= N} ‖P_N T e_n‖_k / ‖e_n‖_m` and the
//! oracle verdicts built from them.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::norms::ColumnNorms;
use crate::criteria::{downgrade_tabulated, scan_exists_forall, scan_forall_exists, Property};
use crate::error::{Error, Result};
use crate::logval::LogValue;
use crate::operators::{NormKind, ToeplitzOperator, Variant};
use crate::spaces::nuclearity_verdict;
use crate::verdict::{Outcome, Verdict, Window};

/// Tag carried by every oracle report: its Holds is evidence only.
pub const PLATEAU_TAG: &str = "plateau on window";

pub fn default_norm(variant: Variant) -> NormKind {
    match variant {
        Variant::Upper => NormKind::Sup,
        Variant::Lower | Variant::Full => NormKind::Sum,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub n: usize,
    pub log_ratio: LogValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioCurve {
    pub k: usize,
    pub m: usize,
    pub norm_kind: NormKind,
    pub points: Vec<CurvePoint>,
}

impl RatioCurve {
    pub const CSV_HEADER: &'static str = "N,k,m,log_ratio";

    pub fn csv_rows(&self) -> Vec<String> {
        self.points
            .iter()
            .map(|p| format!("{},{},{},{}", p.n, self.k, self.m, p.log_ratio.log()))
            .collect()
    }

    pub fn write_csv<W: Write>(&self, mut w: W, header: bool) -> std::io::Result<()> {
        if header {
            writeln!(w, "{}", Self::CSV_HEADER)?;
        }
        for row in self.csv_rows() {
            writeln!(w, "{row}")?;
        }
        Ok(())
    }

    /// Change of the curve between two checkpoints.
    pub fn growth_between(&self, from: usize, to: usize) -> Option<f64> {
        let at = |n| self.points.iter().find(|p| p.n == n).map(|p| p.log_ratio.log());
        let (a, b) = (at(from)?, at(to)?);
        Some(if a == b { 0.0 } else { b - a })
    }
}

/// Running sup of the column ratio at each checkpoint, each column
/// truncated at that checkpoint.
pub fn ratio_curve(
    op: &ToeplitzOperator,
    k: usize,
    m: usize,
    checkpoints: &[usize],
    norm_kind: NormKind,
) -> Result<RatioCurve> {
    if checkpoints.is_empty() || checkpoints.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("checkpoints", "must be nonempty and strictly increasing"));
    }
    if k == 0 || m == 0 {
        return Err(Error::invalid("grading index", "k and m start at 1"));
    }
    let mut norms = ColumnNorms::new(op, *checkpoints.last().unwrap(), norm_kind)?;
    curve_from(&mut norms, k, m, checkpoints)
}

pub(crate) fn curve_from(norms: &mut ColumnNorms<'_>, k: usize, m: usize, checkpoints: &[usize]) -> Result<RatioCurve> {
    let points = checkpoints
        .iter()
        .map(|&n| {
            Ok(CurvePoint {
                n,
                log_ratio: norms.ratio_sup(k, m, n)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(RatioCurve {
        k,
        m,
        norm_kind: norms.kind(),
        points,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub property: Property,
    pub norm_kind: NormKind,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Codomain nuclearity, attached to compactness probes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nuclearity: Option<Outcome>,
    pub tags: Vec<String>,
}

impl OracleVerdict {
    pub fn outcome(&self) -> &Outcome {
        &self.verdict.outcome
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }

    pub fn fails(&self) -> bool {
        self.verdict.fails()
    }

    pub fn is_inconclusive(&self) -> bool {
        self.verdict.is_inconclusive()
    }
}

/// Column-criterion probe for `property` with an explicit norm.
pub fn oracle_verdict(
    op: &ToeplitzOperator,
    property: Property,
    window: &Window,
    norm_kind: NormKind,
) -> Result<OracleVerdict> {
    window.validate()?;
    op.validate()?;
    let n = window.n;
    let mut norms = ColumnNorms::new(op, n, norm_kind)?;
    let mut probe = |k: usize, m: usize| norms.profile(k, m, n);
    let outcome = match property {
        Property::Continuity => scan_forall_exists(window, &mut probe)?,
        Property::Compactness => scan_exists_forall(window, &mut probe)?,
    };
    let verdict = downgrade_tabulated(
        Verdict::new(outcome, window),
        op.domain.is_finite_window() || op.codomain.is_finite_window(),
    );
    let mut tags = vec![PLATEAU_TAG.to_string()];
    let nuclearity = match property {
        Property::Continuity => None,
        Property::Compactness => {
            let nv = nuclearity_verdict(&op.codomain, window);
            if !nv.holds() {
                tags.push("hypothesis unverified".into());
            }
            Some(nv.outcome)
        }
    };
    Ok(OracleVerdict {
        property,
        norm_kind,
        verdict,
        nuclearity,
        tags,
    })
}

pub fn oracle_continuity(op: &ToeplitzOperator, window: &Window) -> Result<OracleVerdict> {
    oracle_verdict(op, Property::Continuity, window, default_norm(op.variant))
}

pub fn oracle_compactness(op: &ToeplitzOperator, window: &Window) -> Result<OracleVerdict> {
    oracle_verdict(op, Property::Compactness, window, default_norm(op.variant))
}
