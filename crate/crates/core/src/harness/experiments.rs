//! The experiments: exploitation/exploration ratio sweep, swarm
//! subdivision on the four-peak function, evaluations-to-accuracy benchmarks
//! and the dimension-scaling comparison against intermittent-search theory.

use crate::error::{invalid, Result};
use crate::firefly::{StoppingRule, TerminalReason};
use crate::harness::cluster::cluster_final_positions;
use crate::harness::schedule::build_mode_schedule;
use crate::harness::trials::{mean, run_trials, run_trials_full, summarize, ExperimentSummary, TrialPlan, TrialRecord};
use crate::objective::{self, ObjectiveSpec};
use crate::params::{FaParameters, SearchDomain};
use crate::theory;

/// Ratio values of the standard sweep.
pub const Q_VALUES: [f64; 5] = [0.4, 0.3, 0.2, 0.1, 0.05];

#[derive(Debug, Clone, PartialEq)]
pub struct QSweepConfig {
    pub q_values: Vec<f64>,
    pub dim: usize,
    pub n_trials: usize,
    pub base_seed: u64,
    /// `n`, `t_max` and the remaining constants; the schedule is filled per `q`.
    pub params: FaParameters,
}

impl QSweepConfig {
    /// 15 fireflies, 1000 iterations, 25 trials per ratio on the 2-D standing wave.
    pub fn standard(base_seed: u64) -> Self {
        let obj = objective::lookup("standing_wave", 2).expect("registered objective");
        Self {
            q_values: Q_VALUES.to_vec(),
            dim: 2,
            n_trials: 25,
            base_seed,
            params: FaParameters::derive_defaults(&obj.domain).with_budget(15, 1000),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QSweepRow {
    pub q: f64,
    pub exploit_iterations: usize,
    pub explore_iterations: usize,
    pub median_best: f64,
    pub mean_best: f64,
    pub min_best: f64,
}

/// Runs the full budget for every ratio (no accuracy stop) and reports the
/// final best values. All ratios share the same trial seeds.
pub fn q_sweep(config: &QSweepConfig) -> Result<Vec<QSweepRow>> {
    if config.q_values.is_empty() {
        return Err(invalid("q_values", "need at least one ratio"));
    }
    let obj = objective::lookup("standing_wave", config.dim)?;
    config
        .q_values
        .iter()
        .map(|&q| {
            let schedule = build_mode_schedule(q, config.params.t_max)?;
            let mut params = config.params.clone();
            params.mode_schedule = Some(schedule.tags.clone());
            let plan = TrialPlan::new(config.n_trials, config.base_seed, StoppingRule::Budget);
            let (summary, records) = run_trials(&obj, &params, plan)?;
            let min_best = records.iter().map(|r| r.best_value).fold(f64::INFINITY, f64::min);
            Ok(QSweepRow {
                q,
                exploit_iterations: schedule.exploit_count(),
                explore_iterations: schedule.explore_count(),
                median_best: summary.median_best,
                mean_best: summary.mean_best,
                min_best,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubdivisionConfig {
    pub n_trials: usize,
    pub base_seed: u64,
    pub params: FaParameters,
    /// Greedy clustering radius applied to the final positions.
    pub cluster_radius: f64,
    /// A maximum counts as found when a cluster centroid lies this close.
    pub match_radius: f64,
}

pub const SUBDIVISION_CLUSTER_RADIUS: f64 = 0.3;
pub const SUBDIVISION_MATCH_RADIUS: f64 = 0.1;

impl SubdivisionConfig {
    /// `n` fireflies for `t_max` iterations with the domain-derived defaults.
    pub fn standard(n: usize, t_max: usize, n_trials: usize, base_seed: u64) -> Self {
        let obj = objective::four_peak_spec(2).expect("two-dimensional four-peak");
        Self {
            n_trials,
            base_seed,
            params: FaParameters::derive_defaults(&obj.domain).with_budget(n, t_max),
            cluster_radius: SUBDIVISION_CLUSTER_RADIUS,
            match_radius: SUBDIVISION_MATCH_RADIUS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubdivisionReport {
    /// Maxima found per trial, in trial order.
    pub peaks_found: Vec<usize>,
    /// `histogram[k]` is the number of trials that found exactly `k` maxima.
    pub histogram: Vec<usize>,
    pub all_found_rate: f64,
    pub mean_evals: f64,
    pub mean_clusters: f64,
    /// Initial and final positions of the first trial.
    pub initial_positions: Vec<Vec<f64>>,
    pub final_positions: Vec<Vec<f64>>,
}

/// Number of `targets` that have a cluster centroid within `match_radius`.
pub fn count_found(positions: &[Vec<f64>], targets: &[Vec<f64>], cluster_radius: f64, match_radius: f64) -> (usize, usize) {
    let clusters = cluster_final_positions(positions, cluster_radius);
    let r2 = match_radius * match_radius;
    let found = targets
        .iter()
        .filter(|t| {
            clusters
                .iter()
                .any(|c| crate::firefly::distance_sq(&c.centroid, t) <= r2)
        })
        .count();
    (found, clusters.len())
}

pub fn subdivision_experiment(config: &SubdivisionConfig) -> Result<SubdivisionReport> {
    let obj = objective::four_peak_spec(2)?;
    let mut params = config.params.clone();
    params.mode_schedule = None;
    // The experiment runs a fixed number of iterations even for populations
    // below the usual minimum of two.
    let runs = if params.n < 2 {
        single_firefly_runs(&obj, &params, config)?
    } else {
        run_trials_full(&obj, &params, TrialPlan::new(config.n_trials, config.base_seed, StoppingRule::Budget))?
    };
    let maxima = &obj.known_optima;
    let mut peaks_found = Vec::with_capacity(runs.len());
    let mut clusters = Vec::with_capacity(runs.len());
    for r in &runs {
        let (found, n_clusters) = count_found(&r.final_positions, maxima, config.cluster_radius, config.match_radius);
        peaks_found.push(found);
        clusters.push(n_clusters as f64);
    }
    let mut histogram = vec![0; maxima.len() + 1];
    for &k in &peaks_found {
        histogram[k] += 1;
    }
    let evals: Vec<f64> = runs.iter().map(|r| r.evals_used as f64).collect();
    Ok(SubdivisionReport {
        all_found_rate: histogram[maxima.len()] as f64 / runs.len() as f64,
        peaks_found,
        histogram,
        mean_evals: mean(&evals).unwrap_or(0.0),
        mean_clusters: mean(&clusters).unwrap_or(0.0),
        initial_positions: runs[0].initial_positions.clone(),
        final_positions: runs[0].final_positions.clone(),
    })
}

/// A lone firefly never sees a brighter peer, so it only random-walks.
fn single_firefly_runs(
    obj: &ObjectiveSpec,
    params: &FaParameters,
    config: &SubdivisionConfig,
) -> Result<Vec<crate::firefly::RunResult>> {
    use crate::firefly::{step, RunResult, SwarmState};
    use crate::rng::RngStream;
    if config.n_trials == 0 {
        return Err(invalid("n_trials", "need at least one trial"));
    }
    (0..config.n_trials)
        .map(|k| {
            let mut p = params.clone();
            p.seed = config.base_seed.wrapping_add(k as u64);
            p.eval_budget = p.n * (p.t_max + 1);
            let mut rng = RngStream::new(p.seed);
            let mut state = SwarmState::initialize(obj, &p, &mut rng)?;
            let initial_positions = state.positions.clone();
            let mut trace = vec![state.best_value];
            while state.iteration < p.t_max {
                step(&mut state, &p, obj, &mut rng)?;
                trace.push(state.best_value);
            }
            Ok(RunResult {
                best_position: state.best_position,
                best_value: state.best_value,
                evals_used: state.evals,
                iterations_used: state.iteration,
                trace,
                terminal_reason: TerminalReason::IterationBudget,
                initial_positions,
                final_positions: state.positions,
            })
        })
        .collect()
}

/// Reference evaluation counts (mean, standard deviation, success rate) for
/// the genetic algorithm, particle swarm and firefly runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceCounts {
    pub ga: (f64, f64, f64),
    pub pso: (f64, f64, f64),
    pub fa: (f64, f64, f64),
}

/// Reference counts for the sphere at d = 256 and the forest at d = 16.
pub fn reference_counts(name: &str, dim: usize) -> Option<ReferenceCounts> {
    match (name, dim) {
        ("dejong", 256) => Some(ReferenceCounts {
            ga: (25412.0, 1237.0, 1.0),
            pso: (17040.0, 1123.0, 1.0),
            fa: (5657.0, 730.0, 1.0),
        }),
        ("yang_forest", 16) => Some(ReferenceCounts {
            ga: (37079.0, 8920.0, 0.88),
            pso: (19725.0, 3204.0, 0.98),
            fa: (5152.0, 2493.0, 1.0),
        }),
        _ => None,
    }
}

/// Population of the evaluation-count benchmarks.
pub const BENCHMARK_POPULATION: usize = 18;
/// Iteration budget of the evaluation-count benchmarks (30 000 evaluations at 18 fireflies).
pub const BENCHMARK_T_MAX: usize = 1665;
pub const BENCHMARK_BETA0: f64 = 0.15;
pub const BENCHMARK_GAMMA: f64 = 0.001;
pub const BENCHMARK_ALPHA0: f64 = 0.15;
pub const BENCHMARK_DELTA: f64 = 0.991;

/// Parameters for the evaluation-count benchmarks. The domain-derived
/// `gamma = 1/sqrt(L)` leaves a 256-dimensional sphere swarm without any
/// attraction (pairwise distances are ~50), so these use near-global
/// attraction, a weak pull and slower cooling.
pub fn benchmark_parameters(domain: &SearchDomain) -> FaParameters {
    let mut p = FaParameters::derive_defaults(domain).with_budget(BENCHMARK_POPULATION, BENCHMARK_T_MAX);
    p.beta0 = BENCHMARK_BETA0;
    p.gamma = BENCHMARK_GAMMA;
    p.alpha0 = BENCHMARK_ALPHA0;
    p.delta = BENCHMARK_DELTA;
    p
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalsBenchmarkReport {
    pub objective: String,
    pub dim: usize,
    pub target_accuracy: f64,
    pub summary: ExperimentSummary,
    pub records: Vec<TrialRecord>,
    pub reference: Option<ReferenceCounts>,
}

/// Evaluations needed to bring the best value within `target_accuracy` of
/// the known optimum. Budget-exhausted trials count as failures.
pub fn evals_benchmark(
    objective: &ObjectiveSpec,
    params: &FaParameters,
    target_accuracy: f64,
    n_trials: usize,
    base_seed: u64,
) -> Result<EvalsBenchmarkReport> {
    if !objective.has_known_optimum() {
        return Err(invalid("objective", format!("`{}` has no known optimum", objective.name)));
    }
    let mut params = params.clone();
    params.mode_schedule = None;
    let plan = TrialPlan::new(n_trials, base_seed, StoppingRule::Accuracy(target_accuracy));
    let (summary, records) = run_trials(objective, &params, plan)?;
    Ok(EvalsBenchmarkReport {
        objective: objective.name.clone(),
        dim: objective.dim(),
        target_accuracy,
        summary,
        records,
        reference: reference_counts(&objective.name, objective.dim()),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimScalingConfig {
    pub d_values: Vec<usize>,
    /// Iteration budget per entry of `d_values`.
    pub iteration_budgets: Vec<usize>,
    pub n_trials: usize,
    pub base_seed: u64,
    pub n: usize,
    /// Exploit/explore ratio of the schedule; `None` runs plain cooling.
    pub q: Option<f64>,
    pub delta: f64,
    pub target_accuracy: f64,
    /// Intermittent-search geometry `(a, b, u)` for the theory column.
    pub scenario: (f64, f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimScalingRow {
    pub d: usize,
    pub n_trials: usize,
    pub successes: usize,
    /// Trials that exhausted the iteration budget.
    pub censored: usize,
    pub iteration_budget: usize,
    /// Mean over successful trials.
    pub mean_iterations: Option<f64>,
    /// Mean over all trials with censored trials counted at the budget; a
    /// lower bound on the uncensored mean.
    pub mean_iterations_censored: f64,
    pub theory: f64,
    /// `mean_iterations_censored / theory`.
    pub ratio: f64,
    pub summary: ExperimentSummary,
}

pub fn dim_scaling(config: &DimScalingConfig) -> Result<Vec<DimScalingRow>> {
    if config.d_values.is_empty() {
        return Err(invalid("d_values", "need at least one dimension"));
    }
    if config.iteration_budgets.len() != config.d_values.len() {
        return Err(invalid("iteration_budgets", "need one budget per dimension"));
    }
    let (a, b, u) = config.scenario;
    config
        .d_values
        .iter()
        .zip(&config.iteration_budgets)
        .map(|(&d, &budget)| {
            let obj = objective::lookup("standing_wave", d)?;
            let mut params = FaParameters::derive_defaults(&obj.domain).with_budget(config.n, budget);
            params.delta = config.delta;
            if let Some(q) = config.q {
                params.mode_schedule = Some(build_mode_schedule(q, budget)?.tags);
            }
            let plan = TrialPlan::new(config.n_trials, config.base_seed, StoppingRule::Accuracy(config.target_accuracy));
            let (summary, records) = run_trials(&obj, &params, plan)?;
            let censored = records.iter().filter(|r| !r.success).count();
            let all: Vec<f64> = records
                .iter()
                .map(|r| if r.success { r.iterations_used as f64 } else { budget as f64 })
                .collect();
            let theory = theory::mean_search_time(d, a, b, u)?;
            let mean_censored = mean(&all).unwrap_or(f64::NAN);
            Ok(DimScalingRow {
                d,
                n_trials: records.len(),
                successes: summary.successes,
                censored,
                iteration_budget: budget,
                mean_iterations: summary.mean_iterations,
                mean_iterations_censored: mean_censored,
                theory,
                ratio: mean_censored / theory,
                summary: summarize(&records),
            })
        })
        .collect()
}
