//! Command-line surface: one subcommand per experiment plus `replay`.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Arg, ArgAction, ArgMatches};

use crate::config::{parse_config_text, CliConfig, Command, RawConfig, KEYS};
use crate::error::CliError;

/// What to execute and where to write it.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub config: CliConfig,
    pub output: Option<PathBuf>,
}

/// Outcome of argument parsing that is not an invocation.
#[derive(Debug)]
pub enum Early {
    /// Help or version text, printed to stdout with exit code 0.
    Info(String),
    Error(CliError),
}

fn flag_name(key: &str) -> String {
    key.replace('_', "-")
}

fn leak(s: String) -> &'static str {
    Box::leak(s.into_boxed_str())
}

fn experiment_args(cmd: clap::Command) -> clap::Command {
    let mut cmd = cmd
        .arg(
            Arg::new("config")
                .long("config")
                .value_name("FILE")
                .help("config file of `key = value` lines, or a CSV emitted earlier"),
        )
        .arg(
            Arg::new("output")
                .long("output")
                .short('o')
                .value_name("PATH")
                .help("write the CSV here instead of stdout"),
        );
    for (key, help) in KEYS {
        cmd = cmd.arg(
            Arg::new(*key)
                .long(leak(flag_name(key)))
                .value_name("VALUE")
                .action(ArgAction::Set)
                .help(*help),
        );
    }
    cmd
}

pub fn cli() -> clap::Command {
    let mut root = clap::Command::new("firefly")
        .about("Firefly algorithm runs, experiments and intermittent-search theory")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true);
    for c in Command::ALL {
        let about = match c {
            Command::Run => "optimize one objective with a seeded run and write its best-value trace",
            Command::QSweep => "sweep the exploit/explore ratio on the standing-wave function",
            Command::DimScaling => "iterations to reach the standing-wave optimum versus dimension, against theory",
            Command::Subdivision => "count four-peak maxima located by the final swarm",
            Command::EvalsBenchmark => "evaluations needed to reach an accuracy target",
            Command::Theory => "intermittent-search closed forms, one row per dimension",
        };
        root = root.subcommand(experiment_args(clap::Command::new(c.name()).about(about)));
    }
    root.subcommand(
        clap::Command::new("replay")
            .about("re-run the command recorded in an emitted CSV")
            .arg(Arg::new("csv").required(true).value_name("CSV"))
            .arg(Arg::new("output").long("output").short('o').value_name("PATH")),
    )
}

fn read_config_file(path: &str) -> Result<RawConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read config `{path}`: {e}")))?;
    parse_config_text(&text)
}

fn flags(m: &ArgMatches) -> Result<RawConfig, CliError> {
    let mut raw = RawConfig::default();
    for (key, _) in KEYS {
        if let Some(v) = m.get_one::<String>(key) {
            raw.set(key, v)?;
        }
    }
    Ok(raw)
}

/// Parses `argv` (program name first) into a resolved invocation.
pub fn parse_config<I, T>(argv: I) -> Result<Invocation, Early>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match cli().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            return Err(match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Early::Info(e.to_string()),
                _ => Early::Error(CliError::usage(e.to_string())),
            });
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let output = sub.get_one::<String>("output").map(PathBuf::from);
    let resolved = if name == "replay" {
        let path = sub.get_one::<String>("csv").expect("required");
        std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read `{path}`: {e}")))
            .and_then(|text| CliConfig::from_text(&text))
    } else {
        let command: Command = name.parse().map_err(Early::Error)?;
        let mut raw = match sub.get_one::<String>("config") {
            Some(path) => read_config_file(path).map_err(Early::Error)?,
            None => RawConfig::default(),
        };
        if let Some(recorded) = raw.entries.remove("command") {
            if recorded != command.name() {
                return Err(Early::Error(CliError::usage(format!(
                    "config file is for `{recorded}`, not `{command}`"
                ))));
            }
        }
        raw.merge(&flags(sub).map_err(Early::Error)?);
        CliConfig::resolve(command, &raw)
    };
    resolved.map(|config| Invocation { config, output }).map_err(Early::Error)
}
