use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use firefly_core::harness::experiments::{
    dim_scaling, evals_benchmark, q_sweep, subdivision_experiment, DimScalingConfig, QSweepConfig,
    SubdivisionConfig, SUBDIVISION_CLUSTER_RADIUS, SUBDIVISION_MATCH_RADIUS,
};
use firefly_core::harness::schedule::build_mode_schedule;
use firefly_core::harness::table::{fmt_f64, fmt_opt, Table};
use firefly_core::{objective, run, theory, StoppingRule};

use crate::args::Invocation;
use crate::config::{CliConfig, Command, CSV_CONFIG_PREFIX};
use crate::error::CliError;

/// The CSV of one command plus any position dumps `(suffix, contents)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub csv: String,
    pub dumps: Vec<(&'static str, String)>,
}

fn header(cfg: &CliConfig) -> Table {
    let mut t = Table::default();
    t.comment(format!("firefly {}", cfg.command));
    for line in cfg.render().lines() {
        t.comment(format!("config: {line}"));
    }
    debug_assert!(t.comments.iter().skip(1).all(|c| format!("# {c}").starts_with(CSV_CONFIG_PREFIX)));
    t
}

fn with_columns(mut t: Table, columns: &[&str]) -> Table {
    t.columns = columns.iter().map(|c| c.to_string()).collect();
    t
}

fn points(ps: &[Vec<f64>]) -> String {
    ps.iter()
        .map(|p| p.iter().map(|v| fmt_f64(*v)).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

fn or_na(v: firefly_core::Result<f64>) -> String {
    v.map(fmt_f64).unwrap_or_else(|_| "NA".into())
}

/// Per-dimension iteration budget: `budget_factor * tau_m(d)`, capped at `max_iters`.
pub fn dim_budget(cfg: &CliConfig, d: usize) -> Result<usize, CliError> {
    let tau = theory::mean_search_time(d, cfg.a, cfg.b, cfg.u)?;
    let budget = (cfg.budget_factor * tau).ceil();
    Ok((budget as usize).clamp(2, cfg.max_iters.max(2)))
}

/// Computes the command's output without touching the filesystem.
pub fn render_report(cfg: &CliConfig) -> Result<Report, CliError> {
    let mut dumps = Vec::new();
    let table = match cfg.command {
        Command::Run => {
            let obj = objective::lookup(&cfg.objective, cfg.dim)?;
            let mut params = cfg.params.clone();
            if let Some(q) = cfg.q {
                params.mode_schedule = Some(build_mode_schedule(q, params.t_max)?.tags);
            }
            let stop = if obj.has_known_optimum() {
                StoppingRule::Accuracy(cfg.target)
            } else {
                StoppingRule::Budget
            };
            let r = run(&obj, &params, stop)?;
            let mut t = with_columns(header(cfg), &["iteration", "best_value"]);
            t.comment(format!("result: best_value = {}", fmt_f64(r.best_value)));
            t.comment(format!(
                "result: best_position = {}",
                r.best_position.iter().map(|v| fmt_f64(*v)).collect::<Vec<_>>().join(" ")
            ));
            t.comment(format!("result: evals_used = {}", r.evals_used));
            t.comment(format!("result: iterations_used = {}", r.iterations_used));
            t.comment(format!("result: terminal_reason = {}", r.terminal_reason));
            for (i, v) in r.trace.iter().enumerate() {
                t.push_row(vec![i.to_string(), fmt_f64(*v)]);
            }
            t
        }
        Command::QSweep => {
            let qc = QSweepConfig {
                q_values: cfg.q_values.clone(),
                dim: cfg.dim,
                n_trials: cfg.trials,
                base_seed: cfg.base_seed,
                params: cfg.params.clone(),
            };
            let rows = q_sweep(&qc)?;
            let mut t = with_columns(
                header(cfg),
                &["q", "exploit_iterations", "explore_iterations", "median_best", "mean_best", "min_best"],
            );
            for r in rows {
                t.push_row(vec![
                    fmt_f64(r.q),
                    r.exploit_iterations.to_string(),
                    r.explore_iterations.to_string(),
                    fmt_f64(r.median_best),
                    fmt_f64(r.mean_best),
                    fmt_f64(r.min_best),
                ]);
            }
            t
        }
        Command::DimScaling => {
            let budgets = cfg.dims.iter().map(|&d| dim_budget(cfg, d)).collect::<Result<Vec<_>, _>>()?;
            let dc = DimScalingConfig {
                d_values: cfg.dims.clone(),
                iteration_budgets: budgets,
                n_trials: cfg.trials,
                base_seed: cfg.base_seed,
                n: cfg.params.n,
                q: cfg.q,
                delta: cfg.params.delta,
                target_accuracy: cfg.target,
                scenario: (cfg.a, cfg.b, cfg.u),
            };
            let rows = dim_scaling(&dc)?;
            let mut t = with_columns(
                header(cfg),
                &[
                    "d",
                    "trials",
                    "successes",
                    "censored",
                    "iteration_budget",
                    "mean_iterations",
                    "mean_iterations_censored",
                    "theory",
                    "ratio",
                ],
            );
            for r in rows {
                t.push_row(vec![
                    r.d.to_string(),
                    r.n_trials.to_string(),
                    r.successes.to_string(),
                    r.censored.to_string(),
                    r.iteration_budget.to_string(),
                    fmt_opt(r.mean_iterations),
                    fmt_f64(r.mean_iterations_censored),
                    fmt_f64(r.theory),
                    fmt_f64(r.ratio),
                ]);
            }
            t
        }
        Command::Subdivision => {
            let sc = SubdivisionConfig {
                n_trials: cfg.trials,
                base_seed: cfg.base_seed,
                params: cfg.params.clone(),
                cluster_radius: SUBDIVISION_CLUSTER_RADIUS,
                match_radius: SUBDIVISION_MATCH_RADIUS,
            };
            let rep = subdivision_experiment(&sc)?;
            let mut t = with_columns(header(cfg), &["trial", "seed", "peaks_found"]);
            t.comment(format!(
                "result: histogram = {}",
                rep.histogram.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")
            ));
            t.comment(format!("result: all_found_rate = {}", fmt_f64(rep.all_found_rate)));
            t.comment(format!("result: mean_evals = {}", fmt_f64(rep.mean_evals)));
            t.comment(format!("result: mean_clusters = {}", fmt_f64(rep.mean_clusters)));
            for (k, found) in rep.peaks_found.iter().enumerate() {
                t.push_row(vec![k.to_string(), (cfg.base_seed + k as u64).to_string(), found.to_string()]);
            }
            dumps.push(("initial", points(&rep.initial_positions)));
            dumps.push(("final", points(&rep.final_positions)));
            t
        }
        Command::EvalsBenchmark => {
            let obj = objective::lookup(&cfg.objective, cfg.dim)?;
            let rep = evals_benchmark(&obj, &cfg.params, cfg.target, cfg.trials, cfg.base_seed)?;
            let mut t = with_columns(
                header(cfg),
                &[
                    "objective",
                    "d",
                    "trials",
                    "success_rate",
                    "mean_evals",
                    "std_evals",
                    "median_best",
                    "ref_fa_mean",
                    "ref_fa_std",
                    "ref_ga_mean",
                    "ref_ga_std",
                    "ref_pso_mean",
                    "ref_pso_std",
                ],
            );
            for (k, r) in rep.records.iter().enumerate() {
                t.comment(format!(
                    "trial: {k} seed = {} success = {} evals = {} best = {}",
                    r.seed,
                    r.success,
                    r.evals_used,
                    fmt_f64(r.best_value)
                ));
            }
            let refs = rep.reference;
            let pick = |f: fn(&firefly_core::harness::ReferenceCounts) -> f64| refs.as_ref().map(f);
            let s = &rep.summary;
            t.push_row(vec![
                rep.objective.clone(),
                rep.dim.to_string(),
                s.n_trials.to_string(),
                fmt_f64(s.success_rate),
                fmt_opt(s.mean_evals),
                fmt_opt(s.std_evals),
                fmt_f64(s.median_best),
                fmt_opt(pick(|r| r.fa.0)),
                fmt_opt(pick(|r| r.fa.1)),
                fmt_opt(pick(|r| r.ga.0)),
                fmt_opt(pick(|r| r.ga.1)),
                fmt_opt(pick(|r| r.pso.0)),
                fmt_opt(pick(|r| r.pso.1)),
            ]);
            t
        }
        Command::Theory => {
            let d_coef = theory::diffusion_from_step(cfg.s)?;
            let mut t = with_columns(header(cfg), &["d", "mean_search_time"]);
            t.comment(format!("result: diffusion = {}", fmt_f64(d_coef)));
            t.comment(format!("result: optimal_ratio = {}", or_na(theory::optimal_ratio(d_coef, cfg.a, cfg.b))));
            t.comment(format!("result: tau_a_min = {}", or_na(theory::tau_a_min(d_coef, cfg.u, cfg.a, cfg.b))));
            t.comment(format!("result: tau_b_min = {}", or_na(theory::tau_b_min(cfg.a, cfg.u, cfg.b))));
            t.comment(format!(
                "result: exploration_fraction = {}",
                or_na(theory::exploration_fraction(cfg.b, cfg.a))
            ));
            for &d in &cfg.dims {
                let tau = theory::mean_search_time(d, cfg.a, cfg.b, cfg.u)?;
                t.push_row(vec![d.to_string(), fmt_f64(tau)]);
            }
            t
        }
    };
    Ok(Report { csv: table.to_csv(), dumps })
}

/// `results.csv` with suffix `final` becomes `results.final.dat`.
pub fn dump_path(output: &Path, suffix: &str) -> PathBuf {
    output.with_extension(format!("{suffix}.dat"))
}

/// Runs the invocation and writes the CSV (and dumps) to the output path or stdout.
pub fn execute(inv: &Invocation) -> Result<(), CliError> {
    let report = render_report(&inv.config)?;
    match &inv.output {
        Some(path) => {
            fs::write(path, &report.csv).map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
            for (suffix, body) in &report.dumps {
                let p = dump_path(path, suffix);
                fs::write(&p, body).map_err(|e| CliError::io(format!("writing {}", p.display()), e))?;
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(report.csv.as_bytes())
                .map_err(|e| CliError::io("writing stdout", e))?;
        }
    }
    Ok(())
}
