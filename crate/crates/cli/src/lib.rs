//! The `dsplogic` command line.
//!
//! Exit codes: 0 on success, 1 on a domain error (total conflict, infeasible
//! constraints, a failed check), 2 on a usage or parse error.

pub mod commands;
pub mod report;
pub mod reproduce;
pub mod scenario;

use std::io::Write;
use std::path::PathBuf;

use clap::{error::ErrorKind, Args, Parser, Subcommand};
use serde_json::json;

use crate::report::Report;
use crate::scenario::{LotteryScenario, NonpartitionScenario, OddsScenario, Scenario, VERSION};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(dsplogic::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<dsplogic::Error> for CliError {
    fn from(e: dsplogic::Error) -> Self {
        match e {
            dsplogic::Error::ParseNumber(m) => CliError::Usage(format!("invalid number: {m}")),
            other => CliError::Domain(other),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "dsplogic",
    version,
    about = "Dempster-Shafer combination next to probabilistic logic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Emit a single JSON document instead of tables.
    #[arg(long)]
    json: bool,
    /// Scenario file.
    #[arg(short = 'f', long = "file", value_name = "SCENARIO")]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orthogonal sum of two mass functions.
    Combine(Common),
    /// LP bounds on a probability or conditional probability.
    Bounds(Common),
    /// Agreement check on a shared partition.
    Agree(Common),
    /// Lottery with one ticket singled out by the first source.
    Lottery {
        #[command(flatten)]
        common: Common,
        /// Number of tickets.
        #[arg(long, conflicts_with = "file")]
        n: Option<u64>,
        /// First-source mass on the singled-out ticket.
        #[arg(long, conflicts_with = "file")]
        m1: Option<String>,
    },
    /// Two-hypothesis combination under a prior.
    Odds {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "file")]
        m1: Option<String>,
        #[arg(long, conflicts_with = "file")]
        m2: Option<String>,
        #[arg(long, conflicts_with = "file")]
        prior: Option<String>,
    },
    /// Overlapping focal sets and a witness assignment.
    Nonpartition(Common),
    /// Recompute every published example and compare.
    Paper {
        #[arg(long)]
        json: bool,
    },
}

fn required(value: Option<String>, name: &str) -> Result<String, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{name} (or pass -f SCENARIO)")))
}

fn load(path: &PathBuf, kind: &str) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let scenario = Scenario::parse(&text)?;
    if scenario.kind() != kind {
        return Err(CliError::Usage(format!(
            "scenario kind `{}` does not match subcommand `{kind}`",
            scenario.kind()
        )));
    }
    Ok(scenario)
}

fn from_file(common: &Common, kind: &str) -> Result<Scenario, CliError> {
    match &common.file {
        Some(path) => load(path, kind),
        None => Err(CliError::Usage(format!(
            "`{kind}` needs a scenario file: -f SCENARIO"
        ))),
    }
}

/// Resolves the command to a scenario, or `None` for the reproduction table.
fn resolve(command: Command) -> Result<(Option<Scenario>, bool), CliError> {
    Ok(match command {
        Command::Combine(c) => (Some(from_file(&c, "combine")?), c.json),
        Command::Bounds(c) => (Some(from_file(&c, "bounds")?), c.json),
        Command::Agree(c) => (Some(from_file(&c, "agree")?), c.json),
        Command::Nonpartition(c) => match &c.file {
            Some(path) => (Some(load(path, "nonpartition")?), c.json),
            None => (
                Some(Scenario::Nonpartition(NonpartitionScenario {
                    version: VERSION,
                })),
                c.json,
            ),
        },
        Command::Lottery { common, n, m1 } => match &common.file {
            Some(path) => (Some(load(path, "lottery")?), common.json),
            None => {
                let n =
                    n.ok_or_else(|| CliError::Usage("missing --n (or pass -f SCENARIO)".into()))?;
                let m1 = required(m1, "m1")?;
                (
                    Some(Scenario::Lottery(LotteryScenario {
                        version: VERSION,
                        n,
                        m1,
                    })),
                    common.json,
                )
            }
        },
        Command::Odds {
            common,
            m1,
            m2,
            prior,
        } => match &common.file {
            Some(path) => (Some(load(path, "odds")?), common.json),
            None => {
                let s = OddsScenario {
                    version: VERSION,
                    m1: required(m1, "m1")?,
                    m2: required(m2, "m2")?,
                    prior: required(prior, "prior")?,
                };
                (Some(Scenario::Odds(s)), common.json)
            }
        },
        Command::Paper { json } => (None, json),
    })
}

fn render(command: &str, scenario: Option<&Scenario>, report: &Report, json: bool) -> String {
    if !json {
        return report.text.clone();
    }
    let mut doc = json!({
        "command": command,
        "version": VERSION,
        "result": report.result,
        "ok": report.ok,
    });
    if let Some(s) = scenario {
        doc["scenario"] = serde_json::to_value(s).expect("scenario serializes");
    }
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };
    let outcome = resolve(cli.command).and_then(|(scenario, json)| match scenario {
        Some(s) => commands::execute(&s).map(|(normalized, report)| {
            (
                render(normalized.kind(), Some(&normalized), &report, json),
                report.ok,
            )
        }),
        None => reproduce::report().map(|report| (render("paper", None, &report, json), report.ok)),
    });
    match outcome {
        Ok((text, ok)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            if ok {
                0
            } else {
                let _ = writeln!(err, "error: a reported check did not hold");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
