// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use koethe::criteria::{FamilySpec, Property, SMap};
use koethe::operators::{NormKind, Symbol, ToeplitzOperator, Variant};
use koethe::spaces::SpaceDescriptor;
use koethe::Window;

use crate::exit::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

fn default_formats() -> Vec<Format> {
    vec![Format::Json, Format::Csv]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub dir: Option<PathBuf>,
    #[serde(default = "default_formats")]
    pub formats: Vec<Format>,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            dir: None,
            formats: default_formats(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorRef {
    pub variant: Variant,
    pub domain: String,
    pub codomain: String,
    pub symbol: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ApplyMethod {
    Dense,
    #[default]
    Fast,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    /// Nuclearity, stability and the subadditivity condition of one space.
    SpacesCheck { space: String },
    /// One part of a symbol against a space or its dual.
    Membership {
        symbol: String,
        part: Part,
        space: String,
        #[serde(default)]
        dual: bool,
    },
    Certify { operator: String, property: Property },
    #[serde(alias = "continuity")]
    CertifyContinuity { operator: String },
    #[serde(alias = "compactness")]
    CertifyCompactness { operator: String },
    /// Ratio curves for every listed `(k, m)` pair.
    Probe {
        operator: String,
        k: Vec<usize>,
        m: Vec<usize>,
        #[serde(default)]
        norm: Option<NormKind>,
    },
    Oracle {
        operator: String,
        property: Property,
        #[serde(default)]
        norm: Option<NormKind>,
    },
    Apply {
        operator: String,
        input: PathBuf,
        #[serde(default)]
        n: Option<usize>,
        #[serde(default)]
        method: ApplyMethod,
    },
    Tame {
        family: String,
        operator: String,
        s_map: SMap,
    },
    TameCondition {
        s_map: SMap,
        domain: String,
        codomain: String,
        direction: Variant,
    },
    /// Both properties when `property` is absent.
    CrossValidate {
        operator: String,
        #[serde(default)]
        property: Option<Property>,
    },
}

impl Task {
    pub fn command(&self) -> &'static str {
        match self {
            Task::SpacesCheck { .. } => "spaces-check",
            Task::Membership { .. } => "membership",
            Task::Certify { .. } => "certify",
            Task::CertifyContinuity { .. } => "certify-continuity",
            Task::CertifyCompactness { .. } => "certify-compactness",
            Task::Probe { .. } => "probe",
            Task::Oracle { .. } => "oracle",
            Task::Apply { .. } => "apply",
            Task::Tame { .. } => "tame",
            Task::TameCondition { .. } => "tame-condition",
            Task::CrossValidate { .. } => "cross-validate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub spaces: BTreeMap<String, SpaceDescriptor>,
    #[serde(default)]
    pub symbols: BTreeMap<String, Symbol>,
    #[serde(default)]
    pub operators: BTreeMap<String, OperatorRef>,
    #[serde(default)]
    pub families: BTreeMap<String, FamilySpec>,
    #[serde(default)]
    pub window: Window,
    /// Overrides every family seed when set.
    #[serde(default)]
    pub seed: Option<u64>,
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub output: OutputSpec,
}

/// Command-line settings layered over a config.
#[derive(Clone, Debug, Default, Args)]
pub struct Overrides {
    /// Directory for reports and data files (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Truncation N.
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true)]
    pub k_max: Option<usize>,
    #[arg(long, global = true)]
    pub m_max: Option<usize>,
    /// Seed for family sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Both,
}

impl ExperimentConfig {
    pub fn from_json_str(s: &str) -> Result<Self, CliError> {
        let cfg: ExperimentConfig =
            serde_json::from_str(s).map_err(|e| CliError::config("config", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply_overrides(&mut self, o: &Overrides) {
        if let Some(n) = o.n_max {
            self.window.n = n;
            self.window.checkpoints.retain(|&c| c < n);
            self.window.checkpoints.push(n);
        }
        if let Some(k) = o.k_max {
            self.window.k_max = k;
        }
        if let Some(m) = o.m_max {
            self.window.m_max = m;
        }
        if o.seed.is_some() {
            self.seed = o.seed;
        }
        if let Some(dir) = &o.out {
            self.output.dir = Some(dir.clone());
        }
        if let Some(f) = o.format {
            self.output.formats = match f {
                FormatArg::Json => vec![Format::Json],
                FormatArg::Csv => vec![Format::Csv],
                FormatArg::Both => default_formats(),
            };
        }
    }

    /// Checks every reference and every embedded object.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.tasks.is_empty() {
            return Err(CliError::config("tasks", "at least one task is required"));
        }
        self.window
            .validate()
            .map_err(|e| CliError::model("window", e))?;
        for (name, s) in &self.spaces {
            s.validate().map_err(|e| CliError::model(format!("spaces.{name}"), e))?;
        }
        for (name, s) in &self.symbols {
            s.validate().map_err(|e| CliError::model(format!("symbols.{name}"), e))?;
        }
        for (name, f) in &self.families {
            f.validate().map_err(|e| CliError::model(format!("families.{name}"), e))?;
        }
        for (name, o) in &self.operators {
            let path = format!("operators.{name}");
            self.space(&format!("{path}.domain"), &o.domain)?;
            self.space(&format!("{path}.codomain"), &o.codomain)?;
            self.symbol(&format!("{path}.symbol"), &o.symbol)?;
        }
        for (i, t) in self.tasks.iter().enumerate() {
            let path = format!("tasks[{i}]");
            match t {
                Task::SpacesCheck { space } => {
                    self.space(&format!("{path}.space"), space)?;
                }
                Task::Membership { symbol, space, .. } => {
                    self.symbol(&format!("{path}.symbol"), symbol)?;
                    self.space(&format!("{path}.space"), space)?;
                }
                Task::Certify { operator, .. }
                | Task::CertifyContinuity { operator }
                | Task::CertifyCompactness { operator }
                | Task::Oracle { operator, .. }
                | Task::Apply { operator, .. }
                | Task::CrossValidate { operator, .. } => {
                    self.operator_ref(&format!("{path}.operator"), operator)?;
                }
                Task::Probe { operator, k, m, .. } => {
                    self.operator_ref(&format!("{path}.operator"), operator)?;
                    if k.is_empty() || m.is_empty() || k.contains(&0) || m.contains(&0) {
                        return Err(CliError::config(
                            path,
                            "probe needs nonempty k and m lists with indices >= 1",
                        ));
                    }
                }
                Task::Tame {
                    family,
                    operator,
                    s_map,
                } => {
                    if !self.families.contains_key(family) {
                        return Err(CliError::config(
                            format!("{path}.family"),
                            format!("no family named {family:?}"),
                        ));
                    }
                    self.operator_ref(&format!("{path}.operator"), operator)?;
                    s_map
                        .validate()
                        .map_err(|e| CliError::model(format!("{path}.s_map"), e))?;
                }
                Task::TameCondition {
                    s_map,
                    domain,
                    codomain,
                    ..
                } => {
                    self.space(&format!("{path}.domain"), domain)?;
                    self.space(&format!("{path}.codomain"), codomain)?;
                    s_map
                        .validate()
                        .map_err(|e| CliError::model(format!("{path}.s_map"), e))?;
                }
            }
        }
        Ok(())
    }

    pub fn space(&self, path: &str, name: &str) -> Result<&SpaceDescriptor, CliError> {
        self.spaces
            .get(name)
            .ok_or_else(|| CliError::config(path, format!("no space named {name:?}")))
    }

    pub fn symbol(&self, path: &str, name: &str) -> Result<&Symbol, CliError> {
        self.symbols
            .get(name)
            .ok_or_else(|| CliError::config(path, format!("no symbol named {name:?}")))
    }

    fn operator_ref(&self, path: &str, name: &str) -> Result<&OperatorRef, CliError> {
        self.operators
            .get(name)
            .ok_or_else(|| CliError::config(path, format!("no operator named {name:?}")))
    }

    /// Resolves an operator reference into a checked operator.
    pub fn operator(&self, path: &str, name: &str) -> Result<ToeplitzOperator, CliError> {
        let r = self.operator_ref(path, name)?;
        let opath = format!("operators.{name}");
        ToeplitzOperator::new(
            r.variant,
            self.symbol(&format!("{opath}.symbol"), &r.symbol)?.clone(),
            self.space(&format!("{opath}.domain"), &r.domain)?.clone(),
            self.space(&format!("{opath}.codomain"), &r.codomain)?.clone(),
        )
        .map_err(|e| CliError::model(opath, e))
    }

    /// Empty config with a single task; references are filled in by the
    /// caller.
    pub fn with_task(task: Task) -> ExperimentConfig {
        ExperimentConfig {
            spaces: BTreeMap::new(),
            symbols: BTreeMap::new(),
            operators: BTreeMap::new(),
            families: BTreeMap::new(),
            window: Window::default(),
            seed: None,
            tasks: vec![task],
            output: OutputSpec::default(),
        }
    }

    /// Config holding one operator under fixed names and a single task.
    pub fn single_operator(op: &ToeplitzOperator, task: Task) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::with_task(task);
        cfg.spaces.insert("domain".into(), op.domain.clone());
        cfg.spaces.insert("codomain".into(), op.codomain.clone());
        cfg.symbols.insert("symbol".into(), op.symbol.clone());
        cfg.operators.insert(
            "op".into(),
            OperatorRef {
                variant: op.variant,
                domain: "domain".into(),
                codomain: "codomain".into(),
                symbol: "symbol".into(),
            },
        );
        cfg
    }
}
