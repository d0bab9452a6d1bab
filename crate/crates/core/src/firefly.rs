//! Firefly update rules, swarm state and seeded runs.
//!
//! One iteration is an in-place double sweep over the population: firefly `i`
//! moves toward every strictly brighter firefly `j` (seeing positions already
//! updated earlier in the same sweep), or takes a pure random-walk step when no
//! peer is brighter. Positions are clamped to the domain after every move and
//! each firefly is re-evaluated once after its inner loop, so an iteration
//! costs exactly `n` evaluations.

use crate::error::{invalid, Error, Result};
use crate::objective::ObjectiveSpec;
use crate::params::{cooled, FaParameters};
use crate::rng::RngStream;

/// `beta0 * exp(-gamma * r^2)`.
pub fn attractiveness(beta0: f64, gamma: f64, r: f64) -> Result<f64> {
    for (name, v) in [("beta0", beta0), ("gamma", gamma), ("r", r)] {
        if !(v >= 0.0) {
            return Err(invalid(name, format!("must be non-negative, got {v}")));
        }
    }
    Ok(beta0 * (-gamma * r * r).exp())
}

/// `alpha0 * delta^t`.
pub fn cooled_alpha(alpha0: f64, delta: f64, t: usize) -> Result<f64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(invalid("delta", format!("must lie in (0, 1], got {delta}")));
    }
    Ok(cooled(alpha0, delta, t))
}

/// Squared Euclidean distance.
#[inline]
pub fn distance_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `x_i + beta0 exp(-gamma r_ij^2) (x_j - x_i) + alpha_t * noise`.
pub fn move_firefly(
    x_i: &[f64],
    x_j: &[f64],
    beta0: f64,
    gamma: f64,
    alpha_t: f64,
    noise: &[f64],
) -> Result<Vec<f64>> {
    if x_j.len() != x_i.len() || noise.len() != x_i.len() {
        return Err(Error::DimensionMismatch {
            expected: x_i.len(),
            actual: if x_j.len() != x_i.len() { x_j.len() } else { noise.len() },
        });
    }
    let mut out = x_i.to_vec();
    attract_in_place(&mut out, x_j, beta0, gamma, alpha_t, noise);
    Ok(out)
}

#[inline]
fn attract_in_place(x: &mut [f64], toward: &[f64], beta0: f64, gamma: f64, alpha: f64, noise: &[f64]) {
    let beta = beta0 * (-gamma * distance_sq(x, toward)).exp();
    for ((v, t), e) in x.iter_mut().zip(toward).zip(noise) {
        *v = *v + beta * (t - *v) + alpha * e;
    }
}

#[inline]
fn random_walk_in_place(x: &mut [f64], alpha: f64, noise: &[f64]) {
    for (v, e) in x.iter_mut().zip(noise) {
        *v += alpha * e;
    }
}

/// Positions, brightness values and counters of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    pub positions: Vec<Vec<f64>>,
    pub brightness: Vec<f64>,
    pub iteration: usize,
    pub evals: usize,
    pub best_position: Vec<f64>,
    pub best_value: f64,
    /// Set when the evaluation budget ran out in the middle of a sweep.
    pub terminated: bool,
}

impl SwarmState {
    /// Uniform random positions in the domain, each evaluated once.
    pub fn initialize(
        objective: &ObjectiveSpec,
        params: &FaParameters,
        rng: &mut RngStream,
    ) -> Result<Self> {
        let domain = &objective.domain;
        let positions: Vec<Vec<f64>> = (0..params.n)
            .map(|_| {
                domain
                    .lower()
                    .iter()
                    .zip(domain.upper())
                    .map(|(lo, hi)| rng.uniform(*lo, *hi))
                    .collect()
            })
            .collect();
        Self::from_positions(objective, positions)
    }

    /// Evaluates the given positions; used for initialization and for tests
    /// that need a hand-built swarm.
    pub fn from_positions(objective: &ObjectiveSpec, positions: Vec<Vec<f64>>) -> Result<Self> {
        if positions.is_empty() {
            return Err(invalid("n", "swarm must not be empty"));
        }
        let brightness = positions
            .iter()
            .map(|x| objective.evaluate(x))
            .collect::<Result<Vec<_>>>()?;
        let mut best = 0;
        for (k, v) in brightness.iter().enumerate() {
            if objective.sense.is_better(*v, brightness[best]) {
                best = k;
            }
        }
        Ok(Self {
            best_position: positions[best].clone(),
            best_value: brightness[best],
            evals: positions.len(),
            positions,
            brightness,
            iteration: 0,
            terminated: false,
        })
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Completed,
    /// The evaluation budget ran out before every firefly was processed.
    BudgetExhausted,
}

/// One full sweep over the population.
pub fn step(
    state: &mut SwarmState,
    params: &FaParameters,
    objective: &ObjectiveSpec,
    rng: &mut RngStream,
) -> Result<StepOutcome> {
    let n = state.n();
    let dim = objective.dim();
    let sense = objective.sense;
    let alpha = params.alpha_at(state.iteration);
    let mut noise = vec![0.0; dim];

    for i in 0..n {
        if state.evals >= params.eval_budget {
            state.terminated = true;
            return Ok(StepOutcome::BudgetExhausted);
        }
        let mut x_i = std::mem::take(&mut state.positions[i]);
        let own = state.brightness[i];
        let mut moved = false;
        for j in 0..n {
            if j == i || !sense.is_better(state.brightness[j], own) {
                continue;
            }
            rng.fill_noise(params.noise_kind, &mut noise);
            attract_in_place(&mut x_i, &state.positions[j], params.beta0, params.gamma, alpha, &noise);
            objective.domain.clamp(&mut x_i);
            moved = true;
        }
        if !moved {
            rng.fill_noise(params.noise_kind, &mut noise);
            random_walk_in_place(&mut x_i, alpha, &noise);
            objective.domain.clamp(&mut x_i);
        }
        let value = objective.evaluate(&x_i)?;
        state.evals += 1;
        state.brightness[i] = value;
        if sense.is_better(value, state.best_value) {
            state.best_value = value;
            state.best_position.clone_from(&x_i);
        }
        state.positions[i] = x_i;
    }
    state.iteration += 1;
    Ok(StepOutcome::Completed)
}

/// When a run stops early on accuracy. Iteration and evaluation budgets from
/// [`FaParameters`] always apply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StoppingRule {
    /// Run until `t_max` or `eval_budget`.
    Budget,
    /// Also stop once `|best - optimum_value| <= accuracy`.
    Accuracy(f64),
}

impl StoppingRule {
    /// Accuracy stop at the objective's own target.
    pub fn objective_target(objective: &ObjectiveSpec) -> Self {
        StoppingRule::Accuracy(objective.target_accuracy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminalReason {
    Accuracy,
    IterationBudget,
    EvaluationBudget,
}

impl std::fmt::Display for TerminalReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TerminalReason::Accuracy => "accuracy",
            TerminalReason::IterationBudget => "iteration_budget",
            TerminalReason::EvaluationBudget => "evaluation_budget",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_position: Vec<f64>,
    pub best_value: f64,
    pub evals_used: usize,
    pub iterations_used: usize,
    /// Best-so-far after initialization followed by one entry per iteration.
    pub trace: Vec<f64>,
    pub terminal_reason: TerminalReason,
    pub initial_positions: Vec<Vec<f64>>,
    pub final_positions: Vec<Vec<f64>>,
}

/// Runs the optimizer from a fresh seeded swarm until the stopping rule fires.
pub fn run(objective: &ObjectiveSpec, params: &FaParameters, stop: StoppingRule) -> Result<RunResult> {
    params.validate()?;
    let accuracy = match stop {
        StoppingRule::Budget => None,
        StoppingRule::Accuracy(tol) => {
            if tol.is_nan() || tol < 0.0 {
                return Err(invalid("target_accuracy", format!("must be non-negative, got {tol}")));
            }
            if !objective.has_known_optimum() {
                return Err(invalid(
                    "target_accuracy",
                    format!("objective `{}` has no known optimum", objective.name),
                ));
            }
            Some(tol)
        }
    };

    let mut rng = RngStream::new(params.seed);
    let mut state = SwarmState::initialize(objective, params, &mut rng)?;
    let initial_positions = state.positions.clone();
    let mut trace = vec![state.best_value];

    let reason = loop {
        if accuracy.is_some_and(|tol| objective.within(state.best_value, tol)) {
            break TerminalReason::Accuracy;
        }
        if state.iteration >= params.t_max {
            break TerminalReason::IterationBudget;
        }
        if state.terminated || state.evals >= params.eval_budget {
            break TerminalReason::EvaluationBudget;
        }
        let outcome = step(&mut state, params, objective, &mut rng)?;
        if outcome == StepOutcome::Completed {
            trace.push(state.best_value);
        }
    };

    Ok(RunResult {
        best_position: state.best_position,
        best_value: state.best_value,
        evals_used: state.evals,
        iterations_used: state.iteration,
        trace,
        terminal_reason: reason,
        initial_positions,
        final_positions: state.positions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{dejong_spec, four_peak_spec, Sense};
    use crate::params::{NoiseKind, SearchDomain};

    #[test]
    fn attractiveness_examples() {
        assert_eq!(attractiveness(1.0, 5.0, 0.0).unwrap(), 1.0);
        assert_eq!(attractiveness(1.0, 0.0, 100.0).unwrap(), 1.0);
        assert!((attractiveness(1.0, 1.0, 1.0).unwrap() - 0.367879).abs() < 1e-6);
        assert!(attractiveness(-1.0, 1.0, 1.0).is_err());
        assert!(attractiveness(1.0, -1.0, 1.0).is_err());
        assert!(attractiveness(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn cooling_examples() {
        assert_eq!(cooled_alpha(0.5, 0.97, 0).unwrap(), 0.5);
        assert!((cooled_alpha(0.5, 0.97, 1).unwrap() - 0.485).abs() < 1e-15);
        assert_eq!(cooled_alpha(0.5, 1.0, 1000).unwrap(), 0.5);
        assert!(cooled_alpha(0.5, 0.0, 1).is_err());
        assert!(cooled_alpha(0.5, 1.01, 1).is_err());
    }

    #[test]
    fn move_examples() {
        let xi = [1.0, -2.0, 0.5];
        let xj = [3.0, 4.0, -1.0];
        let eps = [0.1, -0.2, 0.3];
        assert_eq!(move_firefly(&xi, &xj, 0.0, 1.0, 0.0, &eps).unwrap(), xi.to_vec());
        assert_eq!(move_firefly(&xi, &xj, 1.0, 0.0, 0.0, &eps).unwrap(), xj.to_vec());
        let walked = move_firefly(&xi, &xj, 0.0, 1.0, 1.0, &eps).unwrap();
        let expected: Vec<f64> = xi.iter().zip(&eps).map(|(a, b)| a + b).collect();
        assert_eq!(walked, expected);
        assert!(move_firefly(&xi, &xj[..2], 1.0, 1.0, 1.0, &eps).is_err());
        assert!(move_firefly(&xi, &xj, 1.0, 1.0, 1.0, &eps[..1]).is_err());
    }

    fn line_objective() -> ObjectiveSpec {
        let domain = SearchDomain::cube(1, -10.0, 10.0).unwrap();
        ObjectiveSpec::new("line", domain, Sense::Minimize, |x: &[f64]| x[0]).with_optima(
            vec![vec![-10.0]],
            -10.0,
            1e-9,
        )
    }

    fn params_for(objective: &ObjectiveSpec, n: usize, t_max: usize) -> FaParameters {
        FaParameters::derive_defaults(&objective.domain).with_budget(n, t_max)
    }

    #[test]
    fn two_fireflies_dim_moves_toward_bright() {
        let obj = line_objective();
        let mut p = params_for(&obj, 2, 1);
        p.alpha0 = 0.0;
        p.gamma = 0.0;
        p.beta0 = 0.5;
        let mut state = SwarmState::from_positions(&obj, vec![vec![-4.0], vec![6.0]]).unwrap();
        let mut rng = RngStream::new(1);
        step(&mut state, &p, &obj, &mut rng).unwrap();
        // A (index 0) has no brighter peer and stays put with alpha = 0.
        assert_eq!(state.positions[0], vec![-4.0]);
        // B moves halfway to A.
        assert_eq!(state.positions[1], vec![1.0]);
        assert_eq!(state.evals, 4);
        assert_eq!(state.iteration, 1);
    }

    #[test]
    fn brightest_random_walks() {
        let obj = line_objective();
        let mut p = params_for(&obj, 2, 1);
        p.alpha0 = 1.0;
        p.noise_kind = NoiseKind::UniformSymmetric;
        let mut state = SwarmState::from_positions(&obj, vec![vec![-4.0], vec![6.0]]).unwrap();
        let mut rng = RngStream::new(5);
        let mut mirror = RngStream::new(5);
        step(&mut state, &p, &obj, &mut rng).unwrap();
        let e = mirror.noise(NoiseKind::UniformSymmetric, 1);
        assert_eq!(state.positions[0], vec![-4.0 + e[0]]);
    }

    #[test]
    fn identical_swarm_all_random_walk() {
        let obj = dejong_spec(2).unwrap();
        let mut p = params_for(&obj, 4, 1);
        p.alpha0 = 0.1;
        let start = vec![vec![1.0, 1.0]; 4];
        let mut state = SwarmState::from_positions(&obj, start.clone()).unwrap();
        let mut rng = RngStream::new(11);
        let mut mirror = RngStream::new(11);
        step(&mut state, &p, &obj, &mut rng).unwrap();
        // Firefly 0 random-walks first; only then can later fireflies see a brighter peer.
        let e0 = mirror.noise(NoiseKind::Gaussian, 2);
        let walked: Vec<f64> = start[0].iter().zip(&e0).map(|(a, b)| a + 0.1 * b).collect();
        assert_eq!(state.positions[0], walked);
    }

    #[test]
    fn budget_exhaustion_mid_sweep() {
        let obj = dejong_spec(2).unwrap();
        let mut p = params_for(&obj, 5, 10);
        p.eval_budget = 7;
        let mut rng = RngStream::new(2);
        let mut state = SwarmState::initialize(&obj, &p, &mut rng).unwrap();
        let out = step(&mut state, &p, &obj, &mut rng).unwrap();
        assert_eq!(out, StepOutcome::BudgetExhausted);
        assert!(state.terminated);
        assert_eq!(state.evals, 7);
        assert_eq!(state.iteration, 0);
    }

    #[test]
    fn zero_iterations_returns_initial_best() {
        let obj = dejong_spec(2).unwrap();
        let p = params_for(&obj, 6, 0);
        let r = run(&obj, &p, StoppingRule::Budget).unwrap();
        assert_eq!(r.terminal_reason, TerminalReason::IterationBudget);
        assert_eq!(r.iterations_used, 0);
        assert_eq!(r.evals_used, 6);
        assert_eq!(r.trace.len(), 1);
        assert_eq!(r.initial_positions, r.final_positions);
    }

    #[test]
    fn sphere_smoke_reaches_accuracy() {
        let obj = dejong_spec(2).unwrap();
        let mut p = params_for(&obj, 25, 2000);
        p.seed = 3;
        let r = run(&obj, &p, StoppingRule::objective_target(&obj)).unwrap();
        assert_eq!(r.terminal_reason, TerminalReason::Accuracy);
        assert!(r.best_value <= 1e-5);
        assert_eq!(r.evals_used, 25 * (r.iterations_used + 1));
    }

    #[test]
    fn run_is_deterministic() {
        let obj = four_peak_spec(2).unwrap();
        let mut p = params_for(&obj, 25, 20);
        p.seed = 99;
        let a = run(&obj, &p, StoppingRule::Budget).unwrap();
        let b = run(&obj, &p, StoppingRule::Budget).unwrap();
        let bits = |r: &RunResult| r.trace.iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
        assert_eq!(a, b);
    }

    #[test]
    fn accuracy_needs_known_optimum() {
        let domain = SearchDomain::cube(1, 0.0, 1.0).unwrap();
        let obj = ObjectiveSpec::new("free", domain, Sense::Minimize, |x: &[f64]| x[0]);
        let p = params_for(&obj, 3, 2);
        assert!(run(&obj, &p, StoppingRule::Accuracy(0.1)).is_err());
        assert!(run(&obj, &p, StoppingRule::Budget).is_ok());
    }

    #[test]
    fn objective_failure_propagates() {
        let domain = SearchDomain::cube(1, 0.0, 1.0).unwrap();
        let obj = ObjectiveSpec::new("nan", domain, Sense::Minimize, |_: &[f64]| f64::NAN);
        let p = params_for(&obj, 3, 2);
        assert!(matches!(
            run(&obj, &p, StoppingRule::Budget),
            Err(Error::NonFiniteObjective { .. })
        ));
    }
}
