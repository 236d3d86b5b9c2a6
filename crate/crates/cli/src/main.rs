// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use koethe::criteria::{FamilySpec, Property, SMap};
use koethe::operators::{NormKind, Symbol, ToeplitzOperator};
use koethe::spaces::SpaceDescriptor;
use koethe_cli::config::{ApplyMethod, ExperimentConfig, Overrides, Part, Task};
use koethe_cli::exit::{CliError, USAGE};
use koethe_cli::{run_config, write_artifacts};

#[derive(Parser)]
#[command(name = "koethe", version, about = "Toeplitz operators between Köthe spaces: verdicts, oracles and curves")]
struct Cli {
    /// Experiment config (JSON) to run.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of --config.
    Run,
    #[command(subcommand)]
    Spaces(SpacesCmd),
    #[command(subcommand)]
    Symbol(SymbolCmd),
    #[command(subcommand)]
    Operator(OperatorCmd),
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Theorem route against the column oracle.
    CrossValidate {
        #[arg(long)]
        operator: String,
        #[arg(long, value_parser = parse_property)]
        property: Option<Property>,
    },
}

#[derive(Subcommand)]
enum SpacesCmd {
    /// Nuclearity, stability and the subadditivity condition.
    Check {
        #[arg(long)]
        space: String,
    },
}

#[derive(Subcommand)]
enum SymbolCmd {
    Membership {
        #[arg(long)]
        symbol: String,
        #[arg(long, value_enum)]
        part: Part,
        #[arg(long)]
        space: String,
        /// Test against the dual space.
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Subcommand)]
enum OperatorCmd {
    Certify {
        #[arg(long)]
        operator: String,
        #[arg(long, value_parser = parse_property)]
        property: Property,
    },
    /// Sup-ratio curves as CSV.
    Probe {
        #[arg(long)]
        operator: String,
        #[arg(long, num_args = 1.., required = true)]
        k: Vec<usize>,
        #[arg(long, num_args = 1.., required = true)]
        m: Vec<usize>,
        #[arg(long, value_parser = parse_norm)]
        norm: Option<NormKind>,
    },
    Apply {
        #[arg(long)]
        operator: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = ApplyMethod::Fast)]
        method: ApplyMethod,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// S-tameness of a sampled family.
    Tame {
        #[arg(long)]
        family: String,
        #[arg(long)]
        operator: String,
        #[arg(long)]
        s_map: String,
    },
}

fn parse_property(s: &str) -> Result<Property, String> {
    match s {
        "continuity" => Ok(Property::Continuity),
        "compactness" => Ok(Property::Compactness),
        _ => Err(format!("expected continuity or compactness, got {s:?}")),
    }
}

fn parse_norm(s: &str) -> Result<NormKind, String> {
    match s {
        "sum" => Ok(NormKind::Sum),
        "sup" => Ok(NormKind::Sup),
        _ => Err(format!("expected sum or sup, got {s:?}")),
    }
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
fn json_arg(flag: &str, arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|source| CliError::Io {
        path: format!("--{flag} {arg}"),
        source,
    })
}

fn parse_arg<T>(flag: &str, arg: &str, parse: impl Fn(&str) -> koethe::Result<T>) -> Result<T, CliError> {
    parse(&json_arg(flag, arg)?).map_err(|e| CliError::model(format!("--{flag}"), e))
}

fn operator_arg(arg: &str) -> Result<ToeplitzOperator, CliError> {
    parse_arg("operator", arg, ToeplitzOperator::from_json_str)
}

fn direct_config(cmd: Command) -> Result<ExperimentConfig, CliError> {
    Ok(match cmd {
        Command::Run => return Err(CliError::Usage("run needs --config".into())),
        Command::Spaces(SpacesCmd::Check { space }) => {
            let s = parse_arg("space", &space, SpaceDescriptor::from_json_str)?;
            let mut cfg = ExperimentConfig::with_task(Task::SpacesCheck { space: "space".into() });
            cfg.spaces.insert("space".into(), s);
            cfg
        }
        Command::Symbol(SymbolCmd::Membership {
            symbol,
            part,
            space,
            dual,
        }) => {
            let sym = parse_arg("symbol", &symbol, Symbol::from_json_str)?;
            let s = parse_arg("space", &space, SpaceDescriptor::from_json_str)?;
            let mut cfg = ExperimentConfig::with_task(Task::Membership {
                symbol: "symbol".into(),
                part,
                space: "space".into(),
                dual,
            });
            cfg.symbols.insert("symbol".into(), sym);
            cfg.spaces.insert("space".into(), s);
            cfg
        }
        Command::Operator(OperatorCmd::Certify { operator, property }) => ExperimentConfig::single_operator(
            &operator_arg(&operator)?,
            Task::Certify {
                operator: "op".into(),
                property,
            },
        ),
        Command::Operator(OperatorCmd::Probe { operator, k, m, norm }) => ExperimentConfig::single_operator(
            &operator_arg(&operator)?,
            Task::Probe {
                operator: "op".into(),
                k,
                m,
                norm,
            },
        ),
        Command::Operator(OperatorCmd::Apply {
            operator,
            input,
            n,
            method,
        }) => ExperimentConfig::single_operator(
            &operator_arg(&operator)?,
            Task::Apply {
                operator: "op".into(),
                input,
                n,
                method,
            },
        ),
        Command::Family(FamilyCmd::Tame {
            family,
            operator,
            s_map,
        }) => {
            let fam: FamilySpec = serde_json::from_str(&json_arg("family", &family)?)
                .map_err(|e| CliError::config("--family", e.to_string()))?;
            let s = parse_arg("s-map", &s_map, SMap::from_json_str)?;
            let mut cfg = ExperimentConfig::single_operator(
                &operator_arg(&operator)?,
                Task::Tame {
                    family: "family".into(),
                    operator: "op".into(),
                    s_map: s,
                },
            );
            cfg.families.insert("family".into(), fam);
            cfg
        }
        Command::CrossValidate { operator, property } => ExperimentConfig::single_operator(
            &operator_arg(&operator)?,
            Task::CrossValidate {
                operator: "op".into(),
                property,
            },
        ),
    })
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let (mut cfg, base) = match (cli.config, cli.command) {
        (Some(path), None | Some(Command::Run)) => {
            let text = fs::read_to_string(&path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let cfg = ExperimentConfig::from_json_str(&text)?;
            let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
            (cfg, base)
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Usage("--config runs a whole experiment; drop the subcommand".into()))
        }
        (None, Some(cmd)) => (direct_config(cmd)?, PathBuf::from(".")),
        (None, None) => return Err(CliError::Usage("give --config <path> or a subcommand (see --help)".into())),
    };
    cfg.apply_overrides(&cli.overrides);
    cfg.validate()?;
    let outcome = run_config(&cfg, &base)?;
    write_artifacts(&cfg, &outcome, &mut std::io::stdout().lock())?;
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
