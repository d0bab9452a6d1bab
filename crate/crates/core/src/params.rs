//! Algorithm constants and the search box they are scaled against.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Axis-aligned box `[lower[i], upper[i]]` in `d` dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchDomain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl SearchDomain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidDomain("dimension must be at least 1".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::InvalidDomain(format!(
                "{} lower bounds but {} upper bounds",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidDomain(format!(
                    "bounds [{lo}, {hi}] in dimension {i} are not an interval"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lo, hi]` repeated in every dimension.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Average scale `L`: the arithmetic mean of the per-dimension widths.
    pub fn scale(&self) -> f64 {
        let total: f64 = self.lower.iter().zip(&self.upper).map(|(lo, hi)| hi - lo).sum();
        total / self.dim() as f64
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    /// Componentwise clamp into the box.
    pub fn clamp(&self, x: &mut [f64]) {
        for (v, (lo, hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = v.clamp(*lo, *hi);
        }
    }
}

/// Distribution of the components of the random vector in the move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseKind {
    /// Standard normal per component.
    #[default]
    Gaussian,
    /// Uniform on `[-0.5, 0.5]` per component.
    UniformSymmetric,
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoiseKind::Gaussian => "gaussian",
            NoiseKind::UniformSymmetric => "uniform_symmetric",
        })
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(NoiseKind::Gaussian),
            "uniform_symmetric" | "uniform" => Ok(NoiseKind::UniformSymmetric),
            other => Err(invalid("noise_kind", format!("unknown noise kind `{other}`"))),
        }
    }
}

/// Iteration-level search mode used by exploitation/exploration schedules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exploit,
    Explore,
}

/// Step-size multiplier applied to the cooled randomness in exploit iterations.
pub const EXPLOIT_ALPHA_FACTOR: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct FaParameters {
    /// Population size.
    pub n: usize,
    /// Attractiveness at zero distance.
    pub beta0: f64,
    /// Light-absorption coefficient.
    pub gamma: f64,
    /// Initial randomness scale.
    pub alpha0: f64,
    /// Cooling factor, `alpha_t = alpha0 * delta^t`.
    pub delta: f64,
    pub t_max: usize,
    pub eval_budget: usize,
    pub seed: u64,
    pub noise_kind: NoiseKind,
    /// Optional per-iteration tags; when present its length equals `t_max`.
    pub mode_schedule: Option<Vec<Mode>>,
}

pub const DEFAULT_POPULATION: usize = 25;
pub const DEFAULT_DELTA: f64 = 0.97;
pub const DEFAULT_T_MAX: usize = 1000;

impl FaParameters {
    /// Defaults scaled to the domain: `alpha0 = 0.01 L`, `gamma = 1/sqrt(L)`,
    /// `beta0 = 1`, `delta = 0.97`, `n = 25`.
    pub fn derive_defaults(domain: &SearchDomain) -> Self {
        let scale = domain.scale();
        let t_max = DEFAULT_T_MAX;
        Self {
            n: DEFAULT_POPULATION,
            beta0: 1.0,
            gamma: 1.0 / scale.sqrt(),
            alpha0: 0.01 * scale,
            delta: DEFAULT_DELTA,
            t_max,
            eval_budget: DEFAULT_POPULATION * (t_max + 1),
            seed: 0,
            noise_kind: NoiseKind::Gaussian,
            mode_schedule: None,
        }
    }

    /// Sets `n` and `t_max` and resizes the evaluation budget to exactly
    /// `n * (t_max + 1)`, the cost of a full run.
    pub fn with_budget(mut self, n: usize, t_max: usize) -> Self {
        self.n = n;
        self.t_max = t_max;
        self.eval_budget = n * (t_max + 1);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(invalid("n", format!("population must be at least 2, got {}", self.n)));
        }
        check_non_negative("beta0", self.beta0)?;
        check_non_negative("gamma", self.gamma)?;
        check_non_negative("alpha0", self.alpha0)?;
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(invalid("delta", format!("must lie in (0, 1], got {}", self.delta)));
        }
        if self.eval_budget < self.n {
            return Err(invalid(
                "eval_budget",
                format!(
                    "budget {} cannot cover the {} initial evaluations",
                    self.eval_budget, self.n
                ),
            ));
        }
        if let Some(schedule) = &self.mode_schedule {
            if schedule.len() != self.t_max {
                return Err(invalid(
                    "mode_schedule",
                    format!("length {} differs from t_max {}", schedule.len(), self.t_max),
                ));
            }
        }
        Ok(())
    }

    /// Randomness scale used in iteration `t`, including the schedule's mode.
    pub fn alpha_at(&self, t: usize) -> f64 {
        let mode = self
            .mode_schedule
            .as_ref()
            .and_then(|s| s.get(t).copied());
        match mode {
            None => cooled(self.alpha0, self.delta, t),
            Some(Mode::Exploit) => EXPLOIT_ALPHA_FACTOR * cooled(self.alpha0, self.delta, t),
            Some(Mode::Explore) => self.alpha0,
        }
    }
}

fn check_non_negative(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("must be finite and non-negative, got {v}")))
    }
}

#[inline]
pub(crate) fn cooled(alpha0: f64, delta: f64, t: usize) -> f64 {
    alpha0 * delta.powf(t as f64)
}
