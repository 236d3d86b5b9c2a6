// SPDX-License-Identifier: Apache-2.0

//! Task execution and artifact writing.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use koethe::criteria::{operator_verdict, tame_condition_certify, tameness_check, Property};
use koethe::operators::{apply_dense, apply_fast, membership_in_dual, membership_in_space};
use koethe::oracle::{cross_validate, default_norm, oracle_verdict, ratio_curve, Agreement, RatioCurve};
use koethe::spaces::{check_subadditivity, check_stable, nuclearity_verdict};

use crate::config::{ApplyMethod, ExperimentConfig, Format, Part, Task};
use crate::exit::{exit_code, CliError, Status};
use crate::vector::{format_vector, parse_vector};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    pub index: usize,
    pub command: String,
    pub status: Status,
    pub report: Value,
}

/// Everything one task produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub report: TaskReport,
    pub csv: Option<String>,
    pub vector: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub artifacts: Vec<Artifact>,
    pub exit_code: i32,
}

impl RunOutcome {
    pub fn summary(&self) -> Value {
        json!({
            "exit_code": self.exit_code,
            "tasks": self.artifacts.iter().map(|a| json!({
                "index": a.report.index,
                "command": a.report.command,
                "status": a.report.status,
            })).collect::<Vec<_>>(),
        })
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn agreement_status(a: Agreement) -> Status {
    match a {
        Agreement::Agree => Status::Ok,
        Agreement::OracleInconclusive | Agreement::TheoremInconclusive => Status::Inconclusive,
        Agreement::Conflict => Status::Conflict,
    }
}

/// Runs every task in order. Relative input paths resolve against `base`.
pub fn run_config(cfg: &ExperimentConfig, base: &Path) -> Result<RunOutcome, CliError> {
    cfg.validate()?;
    let mut artifacts = Vec::with_capacity(cfg.tasks.len());
    for (i, task) in cfg.tasks.iter().enumerate() {
        artifacts.push(run_task(cfg, i, task, base)?);
    }
    let statuses: Vec<Status> = artifacts.iter().map(|a| a.report.status).collect();
    Ok(RunOutcome {
        exit_code: exit_code(&statuses),
        artifacts,
    })
}

fn run_task(cfg: &ExperimentConfig, index: usize, task: &Task, base: &Path) -> Result<Artifact, CliError> {
    let path = format!("tasks[{index}]");
    let w = &cfg.window;
    let model = |e| CliError::model(path.clone(), e);
    let mut csv = None;
    let mut vector = None;
    let (status, report) = match task {
        Task::SpacesCheck { space } => {
            let s = cfg.space(&format!("{path}.space"), space)?;
            let nuclear = nuclearity_verdict(s, w);
            let mut statuses = vec![Status::from(nuclear.outcome.class())];
            let mut report = json!({ "nuclearity": nuclear });
            if let Some(alpha) = s.alpha() {
                let growth = check_subadditivity(alpha, w.n, w.growth_m_max).map_err(model)?;
                let gv = growth.to_verdict(alpha, w);
                statuses.push(Status::from(gv.outcome.class()));
                report["stability_ratio"] = to_value(&check_stable(alpha, w.n).map_err(model)?);
                report["growth_condition"] = to_value(&growth);
                report["growth_verdict"] = to_value(&gv);
            }
            (statuses.into_iter().max().unwrap_or(Status::Ok), report)
        }
        Task::Membership {
            symbol,
            part,
            space,
            dual,
        } => {
            let sym = cfg.symbol(&format!("{path}.symbol"), symbol)?;
            let s = cfg.space(&format!("{path}.space"), space)?;
            let spec = match part {
                Part::Lower => sym.lower.as_ref(),
                Part::Upper => sym.upper.as_ref(),
            }
            .ok_or_else(|| CliError::config(format!("{path}.part"), "the symbol has no such part"))?;
            let v = if *dual {
                membership_in_dual(spec, s, w).map_err(model)?
            } else {
                membership_in_space(spec, s, w)
            };
            (Status::from(v.outcome.class()), to_value(&v))
        }
        Task::Certify { operator, property } => {
            certify(cfg, &path, operator, *property)?
        }
        Task::CertifyContinuity { operator } => certify(cfg, &path, operator, Property::Continuity)?,
        Task::CertifyCompactness { operator } => certify(cfg, &path, operator, Property::Compactness)?,
        Task::Probe { operator, k, m, norm } => {
            let op = cfg.operator(&format!("{path}.operator"), operator)?;
            let kind = norm.unwrap_or_else(|| default_norm(op.variant));
            let cps = w.effective_checkpoints();
            let mut curves: Vec<RatioCurve> = Vec::new();
            for &kk in k {
                for &mm in m {
                    curves.push(ratio_curve(&op, kk, mm, &cps, kind).map_err(model)?);
                }
            }
            let mut text = format!("{}\n", RatioCurve::CSV_HEADER);
            for c in &curves {
                for row in c.csv_rows() {
                    text.push_str(&row);
                    text.push('\n');
                }
            }
            csv = Some(text);
            (Status::Ok, json!({ "curves": curves }))
        }
        Task::Oracle {
            operator,
            property,
            norm,
        } => {
            let op = cfg.operator(&format!("{path}.operator"), operator)?;
            let kind = norm.unwrap_or_else(|| default_norm(op.variant));
            let v = oracle_verdict(&op, *property, w, kind).map_err(model)?;
            (Status::from(v.outcome().class()), to_value(&v))
        }
        Task::Apply {
            operator,
            input,
            n,
            method,
        } => {
            let op = cfg.operator(&format!("{path}.operator"), operator)?;
            let file = resolve(base, input);
            let text = fs::read_to_string(&file).map_err(|source| CliError::Io {
                path: format!("{path}.input ({})", file.display()),
                source,
            })?;
            let x = parse_vector(&text).map_err(|e| CliError::config(format!("{path}.input"), e.to_string()))?;
            let n = n.unwrap_or(x.len());
            let y = match method {
                ApplyMethod::Dense => apply_dense(&op, &x, n),
                ApplyMethod::Fast => apply_fast(&op, &x, n),
            }
            .map_err(model)?;
            vector = Some(format_vector(&y.values));
            let status = if y.overflow {
                Status::Inconclusive
            } else {
                Status::Ok
            };
            (status, json!({ "n": n, "method": method, "overflow": y.overflow }))
        }
        Task::Tame {
            family,
            operator,
            s_map,
        } => {
            let op = cfg.operator(&format!("{path}.operator"), operator)?;
            let mut fam = cfg.families[family].clone();
            if let Some(seed) = cfg.seed {
                fam.seed = seed;
            }
            let v = tameness_check(&fam, s_map, &op, w).map_err(model)?;
            (Status::from(v.outcome.class()), to_value(&v))
        }
        Task::TameCondition {
            s_map,
            domain,
            codomain,
            direction,
        } => {
            let d = cfg.space(&format!("{path}.domain"), domain)?;
            let c = cfg.space(&format!("{path}.codomain"), codomain)?;
            let r = tame_condition_certify(s_map, d, c, *direction, w).map_err(model)?;
            (Status::from(r.verdict.outcome.class()), to_value(&r))
        }
        Task::CrossValidate { operator, property } => {
            let op = cfg.operator(&format!("{path}.operator"), operator)?;
            let props = match property {
                Some(p) => vec![*p],
                None => vec![Property::Continuity, Property::Compactness],
            };
            let mut reports = Vec::new();
            let mut status = Status::Ok;
            for p in props {
                let r = cross_validate(&op, p, w).map_err(model)?;
                status = status.max(agreement_status(r.agreement));
                reports.push(r);
            }
            (status, json!({ "reports": reports }))
        }
    };
    Ok(Artifact {
        report: TaskReport {
            index,
            command: task.command().into(),
            status,
            report,
        },
        csv,
        vector,
    })
}

fn certify(cfg: &ExperimentConfig, path: &str, operator: &str, property: Property) -> Result<(Status, Value), CliError> {
    let op = cfg.operator(&format!("{path}.operator"), operator)?;
    let v = operator_verdict(&op, property, &cfg.window).map_err(|e| CliError::model(path, e))?;
    Ok((Status::from(v.outcome.class()), to_value(&v)))
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Writes artifacts to the configured directory, or to `stdout` when none
/// is set.
pub fn write_artifacts(cfg: &ExperimentConfig, outcome: &RunOutcome, stdout: &mut dyn Write) -> Result<(), CliError> {
    let json_on = cfg.output.formats.contains(&Format::Json);
    let csv_on = cfg.output.formats.contains(&Format::Csv);
    let Some(dir) = &cfg.output.dir else {
        let io = |source| CliError::Io {
            path: "stdout".into(),
            source,
        };
        for a in &outcome.artifacts {
            if json_on {
                stdout.write_all(pretty(&serde_json::to_value(&a.report).expect("serializes")).as_bytes()).map_err(io)?;
            }
            if let (true, Some(c)) = (csv_on, &a.csv) {
                stdout.write_all(c.as_bytes()).map_err(io)?;
            }
            if let Some(v) = &a.vector {
                stdout.write_all(v.as_bytes()).map_err(io)?;
            }
        }
        return Ok(());
    };
    let write = |name: String, body: &str| -> Result<(), CliError> {
        let p = dir.join(name);
        fs::write(&p, body).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        })
    };
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    for a in &outcome.artifacts {
        let stem = format!("task-{:02}-{}", a.report.index, a.report.command);
        if json_on {
            write(format!("{stem}.json"), &pretty(&serde_json::to_value(&a.report).expect("serializes")))?;
        }
        if let (true, Some(c)) = (csv_on, &a.csv) {
            write(format!("{stem}.csv"), c)?;
        }
        if let Some(v) = &a.vector {
            write(format!("{stem}.txt"), v)?;
        }
    }
    write("summary.json".into(), &pretty(&outcome.summary()))
}
