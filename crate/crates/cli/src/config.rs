//! Resolved command configuration and its `key = value` text form.
//!
//! Values are layered: built-in defaults (domain-derived), then a config
//! file, then command-line flags. The rendered form lists every key with its
//! resolved value, so feeding it back reproduces the same configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use firefly_core::harness::experiments::{benchmark_parameters, BENCHMARK_POPULATION, BENCHMARK_T_MAX, Q_VALUES};
use firefly_core::objective;
use firefly_core::{FaParameters, NoiseKind};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Run,
    QSweep,
    DimScaling,
    Subdivision,
    EvalsBenchmark,
    Theory,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Run,
        Command::QSweep,
        Command::DimScaling,
        Command::Subdivision,
        Command::EvalsBenchmark,
        Command::Theory,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Run => "run",
            Command::QSweep => "q-sweep",
            Command::DimScaling => "dim-scaling",
            Command::Subdivision => "subdivision",
            Command::EvalsBenchmark => "evals-benchmark",
            Command::Theory => "theory",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::usage(format!("unknown command `{s}`")))
    }
}

/// Every key accepted in config files and, with `-` for `_`, as a flag.
pub const KEYS: &[(&str, &str)] = &[
    ("objective", "objective name: dejong, yang_forest, four_peak, standing_wave"),
    ("dim", "problem dimension"),
    ("n", "population size"),
    ("beta0", "attractiveness at zero distance"),
    ("gamma", "light-absorption coefficient"),
    ("alpha0", "initial randomness scale"),
    ("delta", "cooling factor in (0, 1]"),
    ("iters", "iteration budget t_max"),
    ("eval_budget", "maximum objective evaluations per run"),
    ("seed", "RNG seed of a single run"),
    ("noise", "noise distribution: gaussian or uniform_symmetric"),
    ("q", "exploit/explore iteration ratio (run, dim-scaling)"),
    ("q_values", "comma-separated ratios for q-sweep"),
    ("trials", "number of seeded trials"),
    ("base_seed", "seed of trial 0; trial k uses base_seed + k"),
    ("target", "accuracy target"),
    ("dims", "comma-separated dimensions (dim-scaling, theory)"),
    ("budget_factor", "dim-scaling iteration budget as a multiple of the theory time"),
    ("max_iters", "dim-scaling cap on the per-dimension iteration budget"),
    ("a", "target radius"),
    ("b", "search-region radius"),
    ("u", "mean search speed"),
    ("s", "random-walk step length"),
];

pub fn is_key(k: &str) -> bool {
    k == "command" || KEYS.iter().any(|(name, _)| *name == k)
}

/// Fully resolved configuration of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: Command,
    pub objective: String,
    pub dim: usize,
    /// Algorithm constants; `mode_schedule` stays empty here and is built from `q`.
    pub params: FaParameters,
    pub q: Option<f64>,
    pub q_values: Vec<f64>,
    pub trials: usize,
    pub base_seed: u64,
    pub target: f64,
    pub dims: Vec<usize>,
    pub budget_factor: f64,
    pub max_iters: usize,
    pub a: f64,
    pub b: f64,
    pub u: f64,
    pub s: f64,
}

/// Raw `key -> value` entries in precedence order (later wins).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub entries: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let key = key.trim().replace('-', "_");
        if !is_key(&key) {
            return Err(CliError::usage(format!("unknown key `{key}`")));
        }
        self.entries.insert(key, value.trim().to_string());
        Ok(())
    }

    pub fn merge(&mut self, other: &RawConfig) {
        for (k, v) in &other.entries {
            self.entries.insert(k.clone(), v.clone());
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

/// Marker prefix of configuration lines embedded in emitted CSV files.
pub const CSV_CONFIG_PREFIX: &str = "# config: ";

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
///
/// When the text holds embedded CSV metadata (lines starting with
/// `# config: `), only those lines are read, so an emitted CSV file can be
/// passed back as a config file.
pub fn parse_config_text(text: &str) -> Result<RawConfig, CliError> {
    let embedded: Vec<&str> = text
        .lines()
        .filter_map(|l| l.strip_prefix(CSV_CONFIG_PREFIX))
        .collect();
    let lines: Vec<&str> = if embedded.is_empty() {
        text.lines().collect()
    } else {
        embedded
    };
    let mut raw = RawConfig::default();
    for (no, line) in lines.iter().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("line {}: expected `key = value`, got `{line}`", no + 1)))?;
        raw.set(k, v)?;
    }
    Ok(raw)
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse::<T>()
        .map_err(|_| CliError::usage(format!("malformed value `{v}` for `{key}`")))
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>, CliError> {
    let items: Vec<T> = v
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(key, s))
        .collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err(CliError::usage(format!("`{key}` needs at least one value")));
    }
    Ok(items)
}

fn parse_optional_f64(key: &str, v: &str) -> Result<Option<f64>, CliError> {
    if v == "none" {
        Ok(None)
    } else {
        parse_value(key, v).map(Some)
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Command-specific starting point before file and flag values apply.
struct Preset {
    objective: &'static str,
    dim: usize,
    n: usize,
    iters: usize,
    trials: usize,
    q: Option<f64>,
    dims: Vec<usize>,
}

fn preset(command: Command) -> Preset {
    match command {
        Command::Run => Preset {
            objective: "",
            dim: 0,
            n: 25,
            iters: 1000,
            trials: 1,
            q: None,
            dims: vec![2],
        },
        Command::QSweep => Preset {
            objective: "standing_wave",
            dim: 2,
            n: 15,
            iters: 1000,
            trials: 25,
            q: None,
            dims: vec![2],
        },
        Command::DimScaling => Preset {
            objective: "standing_wave",
            dim: 2,
            n: DIM_SCALING_POPULATION,
            iters: 1000,
            trials: 5,
            q: Some(DIM_SCALING_Q),
            dims: vec![2, 3, 4, 5, 6, 8],
        },
        Command::Subdivision => Preset {
            objective: "four_peak",
            dim: 2,
            n: 25,
            iters: 20,
            trials: 100,
            q: None,
            dims: vec![2],
        },
        Command::EvalsBenchmark => Preset {
            objective: "",
            dim: 0,
            n: BENCHMARK_POPULATION,
            iters: BENCHMARK_T_MAX,
            trials: 10,
            q: None,
            dims: vec![2],
        },
        Command::Theory => Preset {
            objective: "standing_wave",
            dim: 2,
            n: 25,
            iters: 1000,
            trials: 1,
            q: None,
            dims: vec![1, 2, 3],
        },
    }
}

pub const DIM_SCALING_POPULATION: usize = 15;
pub const DIM_SCALING_Q: f64 = 0.2;
pub const DIM_SCALING_BUDGET_FACTOR: f64 = 1.0;
pub const DIM_SCALING_MAX_ITERS: usize = 2_000_000;

impl CliConfig {
    /// Resolves raw entries for `command` on top of the command's defaults.
    pub fn resolve(command: Command, raw: &RawConfig) -> Result<Self, CliError> {
        let pre = preset(command);
        let objective_name = raw.get("objective").unwrap_or(pre.objective).to_string();
        if objective_name.is_empty() {
            return Err(CliError::usage(format!("`{command}` needs --objective")));
        }
        let dim: usize = match raw.get("dim") {
            Some(v) => parse_value("dim", v)?,
            None if pre.dim > 0 => pre.dim,
            None => match objective_name.as_str() {
                "four_peak" => 2,
                _ => return Err(CliError::usage(format!("`{command}` needs --dim"))),
            },
        };
        let spec = objective::lookup(&objective_name, dim).map_err(|e| CliError::usage(e.to_string()))?;

        let mut params = match command {
            Command::EvalsBenchmark => benchmark_parameters(&spec.domain),
            _ => FaParameters::derive_defaults(&spec.domain),
        };
        let n = match raw.get("n") {
            Some(v) => parse_value("n", v)?,
            None => pre.n,
        };
        let iters = match raw.get("iters") {
            Some(v) => parse_value("iters", v)?,
            None => pre.iters,
        };
        params = params.with_budget(n, iters);
        if let Some(v) = raw.get("eval_budget") {
            params.eval_budget = parse_value("eval_budget", v)?;
        }
        if let Some(v) = raw.get("beta0") {
            params.beta0 = parse_value("beta0", v)?;
        }
        if let Some(v) = raw.get("gamma") {
            params.gamma = parse_value("gamma", v)?;
        }
        if let Some(v) = raw.get("alpha0") {
            params.alpha0 = parse_value("alpha0", v)?;
        }
        if let Some(v) = raw.get("delta") {
            params.delta = parse_value("delta", v)?;
        }
        if let Some(v) = raw.get("seed") {
            params.seed = parse_value("seed", v)?;
        }
        if let Some(v) = raw.get("noise") {
            params.noise_kind = v.parse::<NoiseKind>().map_err(|e| CliError::usage(e.to_string()))?;
        }

        let q = match raw.get("q") {
            Some(v) => parse_optional_f64("q", v)?,
            None => pre.q,
        };
        let q_values = match raw.get("q_values") {
            Some(v) => parse_list("q_values", v)?,
            None => Q_VALUES.to_vec(),
        };
        let trials = match raw.get("trials") {
            Some(v) => parse_value("trials", v)?,
            None => pre.trials,
        };
        let base_seed = match raw.get("base_seed") {
            Some(v) => parse_value("base_seed", v)?,
            None => 0,
        };
        let target = match raw.get("target") {
            Some(v) => parse_value("target", v)?,
            None => spec.target_accuracy,
        };
        let dims = match raw.get("dims") {
            Some(v) => parse_list("dims", v)?,
            None => pre.dims,
        };
        let budget_factor = match raw.get("budget_factor") {
            Some(v) => parse_value("budget_factor", v)?,
            None => DIM_SCALING_BUDGET_FACTOR,
        };
        let max_iters = match raw.get("max_iters") {
            Some(v) => parse_value("max_iters", v)?,
            None => DIM_SCALING_MAX_ITERS,
        };
        let geometry = |key: &str, default: f64| -> Result<f64, CliError> {
            raw.get(key).map_or(Ok(default), |v| parse_value(key, v))
        };

        let cfg = CliConfig {
            command,
            objective: spec.name.clone(),
            dim,
            params,
            q,
            q_values,
            trials,
            base_seed,
            target,
            dims,
            budget_factor,
            max_iters,
            a: geometry("a", std::f64::consts::FRAC_PI_2)?,
            b: geometry("b", 20.0)?,
            u: geometry("u", 1.0)?,
            s: geometry("s", 1.0)?,
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<(), CliError> {
        if self.command != Command::Theory {
            let mut p = self.params.clone();
            // Subdivision allows a single firefly; everything else is validated as is.
            if self.command == Command::Subdivision && p.n == 1 {
                p.n = 2;
                p.eval_budget = p.eval_budget.max(2);
            }
            p.validate().map_err(|e| CliError::usage(e.to_string()))?;
        }
        if self.trials == 0 {
            return Err(CliError::usage("`trials` must be at least 1"));
        }
        if let Some(q) = self.q {
            if !(q > 0.0 && q.is_finite()) {
                return Err(CliError::usage(format!("`q` must be positive, got {q}")));
            }
        }
        if self.q_values.iter().any(|q| !(*q > 0.0 && q.is_finite())) {
            return Err(CliError::usage("every entry of `q_values` must be positive"));
        }
        if self.dims.contains(&0) {
            return Err(CliError::usage("`dims` entries must be at least 1"));
        }
        if !(self.target >= 0.0) {
            return Err(CliError::usage(format!("`target` must be non-negative, got {}", self.target)));
        }
        if !(self.budget_factor > 0.0) {
            return Err(CliError::usage("`budget_factor` must be positive"));
        }
        Ok(())
    }

    /// Every key with its resolved value, one `key = value` per line.
    pub fn render(&self) -> String {
        let p = &self.params;
        let lines = [
            ("command", self.command.to_string()),
            ("objective", self.objective.clone()),
            ("dim", self.dim.to_string()),
            ("n", p.n.to_string()),
            ("beta0", p.beta0.to_string()),
            ("gamma", p.gamma.to_string()),
            ("alpha0", p.alpha0.to_string()),
            ("delta", p.delta.to_string()),
            ("iters", p.t_max.to_string()),
            ("eval_budget", p.eval_budget.to_string()),
            ("seed", p.seed.to_string()),
            ("noise", p.noise_kind.to_string()),
            ("q", self.q.map_or_else(|| "none".to_string(), |q| q.to_string())),
            ("q_values", join(&self.q_values)),
            ("trials", self.trials.to_string()),
            ("base_seed", self.base_seed.to_string()),
            ("target", self.target.to_string()),
            ("dims", join(&self.dims)),
            ("budget_factor", self.budget_factor.to_string()),
            ("max_iters", self.max_iters.to_string()),
            ("a", self.a.to_string()),
            ("b", self.b.to_string()),
            ("u", self.u.to_string()),
            ("s", self.s.to_string()),
        ];
        lines.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    /// Parses a rendered configuration, including its `command` line.
    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let raw = parse_config_text(text)?;
        let command = raw
            .get("command")
            .ok_or_else(|| CliError::usage("config has no `command` entry"))?
            .parse()?;
        Self::resolve(command, &raw)
    }
}
