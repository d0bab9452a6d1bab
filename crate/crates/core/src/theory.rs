//! Closed-form results of the intermittent search strategy: optimal balance
//! between the detection phase (`tau_a`) and the relocation phase (`tau_b`),
//! the minimal phase durations, and mean search times by dimension.
//!
//! Every formula except the mean search time needs `ln(b/a) > 1/2`; inside
//! that band the expressions change sign or blow up, so they are rejected.

use crate::error::{Error, Result};

/// Prefactor of the `d >= 3` mean search time, `2.2 (b/u) (b/a)^(d-1)`.
pub const HIGH_DIM_PREFACTOR: f64 = 2.2;

/// Inputs to the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntermittentScenario {
    /// Target radius.
    pub a: f64,
    /// Search-region radius.
    pub b: f64,
    /// Mean relocation speed.
    pub u: f64,
    /// Random-walk step length.
    pub step: f64,
    /// Diffusion coefficient of the detection phase.
    pub diffusion: f64,
    pub dim: usize,
}

impl IntermittentScenario {
    /// Scenario whose diffusion coefficient comes from the walk step, `D = s^2 / 2`.
    pub fn from_step(a: f64, b: f64, u: f64, step: f64, dim: usize) -> Result<Self> {
        let s = Self {
            a,
            b,
            u,
            step,
            diffusion: diffusion_from_step(step)?,
            dim,
        };
        s.validate()?;
        Ok(s)
    }

    /// `a = pi/2`, `b = 20`, `u = 1` with a unit step, the standing-wave setup.
    pub fn standing_wave(dim: usize) -> Self {
        Self::from_step(std::f64::consts::FRAC_PI_2, 20.0, 1.0, 1.0, dim)
            .expect("constant scenario is valid")
    }

    pub fn validate(&self) -> Result<()> {
        check_radii("scenario", self.a, self.b)?;
        if !(self.u > 0.0) {
            return Err(domain("scenario", format!("speed u must be positive, got {}", self.u)));
        }
        if !(self.diffusion > 0.0) {
            return Err(domain(
                "scenario",
                format!("diffusion D must be positive, got {}", self.diffusion),
            ));
        }
        if self.dim == 0 {
            return Err(domain("scenario", "dimension must be at least 1"));
        }
        Ok(())
    }

    pub fn optimal_ratio(&self) -> Result<f64> {
        optimal_ratio(self.diffusion, self.a, self.b)
    }

    pub fn tau_a_min(&self) -> Result<f64> {
        tau_a_min(self.diffusion, self.u, self.a, self.b)
    }

    pub fn tau_b_min(&self) -> Result<f64> {
        tau_b_min(self.a, self.u, self.b)
    }

    pub fn mean_search_time(&self) -> Result<f64> {
        mean_search_time(self.dim, self.a, self.b, self.u)
    }

    pub fn exploration_fraction(&self) -> Result<f64> {
        exploration_fraction(self.b, self.a)
    }
}

fn domain(formula: &'static str, reason: impl Into<String>) -> Error {
    Error::TheoryDomain {
        formula,
        reason: reason.into(),
    }
}

fn check_radii(formula: &'static str, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(domain(formula, format!("target radius a must be positive, got {a}")));
    }
    if !(b > a) {
        return Err(domain(formula, format!("need b > a, got a = {a}, b = {b}")));
    }
    Ok((b / a).ln())
}

/// `ln(b/a)`, required to exceed 1/2.
fn log_ratio(formula: &'static str, a: f64, b: f64) -> Result<f64> {
    let l = check_radii(formula, a, b)?;
    if !(l > 0.5) {
        return Err(domain(formula, format!("need ln(b/a) > 1/2, got {l}")));
    }
    Ok(l)
}

#[inline]
fn balance_kernel(log_ba: f64) -> f64 {
    let k = 2.0 - 1.0 / log_ba;
    1.0 / (k * k)
}

/// Diffusion coefficient of an isotropic 2-D walk with step `s`: `s^2 / 2`.
pub fn diffusion_from_step(s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(domain("diffusion_from_step", format!("step must be non-negative, got {s}")));
    }
    Ok(s * s / 2.0)
}

/// Optimal `tau_a / tau_b^2 = (D/a^2) / (2 - 1/ln(b/a))^2`.
pub fn optimal_ratio(diffusion: f64, a: f64, b: f64) -> Result<f64> {
    let l = log_ratio("optimal_ratio", a, b)?;
    Ok(diffusion / (a * a) * balance_kernel(l))
}

/// `tau_a^min = (D / 2u^2) ln^2(b/a) / (2 ln(b/a) - 1)`.
pub fn tau_a_min(diffusion: f64, u: f64, a: f64, b: f64) -> Result<f64> {
    let l = log_ratio("tau_a_min", a, b)?;
    if !(u > 0.0) {
        return Err(domain("tau_a_min", format!("speed u must be positive, got {u}")));
    }
    Ok(diffusion / (2.0 * u * u) * (l * l) / (2.0 * l - 1.0))
}

/// `tau_b^min = (a/u) sqrt(ln(b/a) - 1/2)`.
pub fn tau_b_min(a: f64, u: f64, b: f64) -> Result<f64> {
    let l = log_ratio("tau_b_min", a, b)?;
    if !(u > 0.0) {
        return Err(domain("tau_b_min", format!("speed u must be positive, got {u}")));
    }
    Ok(a / u * (l - 0.5).sqrt())
}

/// Mean search time by dimension:
///
/// * `d = 1`: `(2b/u) sqrt(b / 3a)`
/// * `d = 2`: `(2b^2 / au) sqrt(ln(b/a))`
/// * `d >= 3`: `(2.2 b/u) (b/a)^(d-1)`, exact for `d = 3` and extrapolated beyond.
pub fn mean_search_time(dim: usize, a: f64, b: f64, u: f64) -> Result<f64> {
    let l = check_radii("mean_search_time", a, b)?;
    if !(u > 0.0) {
        return Err(domain("mean_search_time", format!("speed u must be positive, got {u}")));
    }
    match dim {
        0 => Err(domain("mean_search_time", "dimension must be at least 1")),
        1 => Ok(2.0 * b / u * (b / (3.0 * a)).sqrt()),
        2 => Ok(2.0 * b * b / (a * u) * l.sqrt()),
        d => Ok(HIGH_DIM_PREFACTOR * b / u * (b / a).powi(d as i32 - 1)),
    }
}

/// Exploitation fraction `p_e = 1 / (2 (2 - 1/ln(R/a))^2)`.
///
/// Identical to [`optimal_ratio`] with `D = a^2 / 2`.
pub fn exploration_fraction(radius: f64, a: f64) -> Result<f64> {
    let l = log_ratio("exploration_fraction", a, radius)?;
    Ok(0.5 * balance_kernel(l))
}
