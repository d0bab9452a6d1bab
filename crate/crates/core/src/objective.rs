//! Benchmark objectives with their domains, known optima and accuracy targets.

use std::f64::consts::{E, PI};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::params::SearchDomain;

/// Optimization direction. Brightness ordering follows it directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    /// `true` when `a` is strictly better than `b`. NaN is never better.
    #[inline]
    pub fn is_better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Minimize => a < b,
            Sense::Maximize => a > b,
        }
    }

    /// The worst possible value, used to seed best-so-far searches.
    pub fn worst(self) -> f64 {
        match self {
            Sense::Minimize => f64::INFINITY,
            Sense::Maximize => f64::NEG_INFINITY,
        }
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Minimize => "minimize",
            Sense::Maximize => "maximize",
        })
    }
}

pub type ObjectiveFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A named, bounded objective with its known optima.
#[derive(Clone)]
pub struct ObjectiveSpec {
    pub name: String,
    pub domain: SearchDomain,
    pub sense: Sense,
    pub known_optima: Vec<Vec<f64>>,
    pub optimum_value: f64,
    pub target_accuracy: f64,
    func: ObjectiveFn,
}

impl fmt::Debug for ObjectiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjectiveSpec")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("sense", &self.sense)
            .field("optimum_value", &self.optimum_value)
            .field("target_accuracy", &self.target_accuracy)
            .finish_non_exhaustive()
    }
}

impl ObjectiveSpec {
    pub fn new(
        name: impl Into<String>,
        domain: SearchDomain,
        sense: Sense,
        func: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            domain,
            sense,
            known_optima: Vec::new(),
            optimum_value: f64::NAN,
            target_accuracy: f64::NAN,
            func: Arc::new(func),
        }
    }

    pub fn with_optima(mut self, optima: Vec<Vec<f64>>, value: f64, accuracy: f64) -> Self {
        self.known_optima = optima;
        self.optimum_value = value;
        self.target_accuracy = accuracy;
        self
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn has_known_optimum(&self) -> bool {
        self.optimum_value.is_finite()
    }

    /// Evaluates at `x`, rejecting points of the wrong dimension or outside the domain.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        check_domain(&self.name, &self.domain, x)?;
        let v = (self.func)(x);
        if v.is_nan() {
            return Err(Error::NonFiniteObjective {
                objective: self.name.clone(),
            });
        }
        Ok(v)
    }

    /// `|value - optimum_value| <= accuracy`.
    pub fn within(&self, value: f64, accuracy: f64) -> bool {
        (value - self.optimum_value).abs() <= accuracy
    }
}

fn check_domain(name: &str, domain: &SearchDomain, x: &[f64]) -> Result<()> {
    for (i, (v, (lo, hi))) in x
        .iter()
        .zip(domain.lower().iter().zip(domain.upper()))
        .enumerate()
    {
        if !(*lo <= *v && *v <= *hi) {
            return Err(Error::OutOfDomain {
                objective: name.to_string(),
                index: i,
                value: *v,
            });
        }
    }
    Ok(())
}

fn check_cube(name: &str, half_width: f64, x: &[f64]) -> Result<()> {
    for (i, v) in x.iter().enumerate() {
        if !(v.abs() <= half_width) {
            return Err(Error::OutOfDomain {
                objective: name.to_string(),
                index: i,
                value: *v,
            });
        }
    }
    Ok(())
}

/// Bounds used for the sphere function.
pub const DEJONG_HALF_WIDTH: f64 = 5.12;
pub const FOREST_HALF_WIDTH: f64 = 2.0 * PI;
pub const FOUR_PEAK_HALF_WIDTH: f64 = 10.0;
pub const STANDING_WAVE_HALF_WIDTH: f64 = 20.0;
pub const STANDING_WAVE_BETA: f64 = 15.0;

/// Accuracy target for the sphere and forest benchmarks.
pub const EVAL_ACCURACY: f64 = 1e-5;
/// Five decimal places.
pub const FIVE_DECIMALS: f64 = 1e-5;

/// Sphere function `sum x_i^2`, minimum 0 at the origin.
pub fn dejong(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// Forest function `(sum |x_i|) * exp(-sum sin(x_i^2))` on `[-2pi, 2pi]^d`.
pub fn yang_forest(x: &[f64]) -> Result<f64> {
    check_cube("yang_forest", FOREST_HALF_WIDTH, x)?;
    Ok(forest_unchecked(x))
}

fn forest_unchecked(x: &[f64]) -> f64 {
    let abs_sum: f64 = x.iter().map(|v| v.abs()).sum();
    let sin_sum: f64 = x.iter().map(|v| (v * v).sin()).sum();
    abs_sum * (-sin_sum).exp()
}

/// Four-peak function `(sum |x_i|) * exp(-sum x_i^2)` on `[-10, 10]^d`, maximized.
pub fn four_peak(x: &[f64]) -> Result<f64> {
    check_cube("four_peak", FOUR_PEAK_HALF_WIDTH, x)?;
    Ok(four_peak_unchecked(x))
}

fn four_peak_unchecked(x: &[f64]) -> f64 {
    let abs_sum: f64 = x.iter().map(|v| v.abs()).sum();
    let sq_sum: f64 = x.iter().map(|v| v * v).sum();
    abs_sum * (-sq_sum).exp()
}

/// Standing-wave function on `[-20, 20]^d`:
/// `1 + (exp(-sum (x_i/beta)^10) - 2 exp(-sum (x_i - pi)^2)) * prod cos^2 x_i`.
pub fn standing_wave(x: &[f64], beta: f64) -> Result<f64> {
    check_cube("standing_wave", STANDING_WAVE_HALF_WIDTH, x)?;
    Ok(standing_wave_unchecked(x, beta))
}

fn standing_wave_unchecked(x: &[f64], beta: f64) -> f64 {
    let mut pow_sum = 0.0;
    let mut shift_sum = 0.0;
    let mut cos_prod = 1.0;
    for &v in x {
        pow_sum += (v / beta).powi(10);
        shift_sum += (v - PI) * (v - PI);
        let c = v.cos();
        cos_prod *= c * c;
    }
    1.0 + ((-pow_sum).exp() - 2.0 * (-shift_sum).exp()) * cos_prod
}

pub fn dejong_spec(d: usize) -> Result<ObjectiveSpec> {
    let domain = SearchDomain::cube(d, -DEJONG_HALF_WIDTH, DEJONG_HALF_WIDTH)?;
    Ok(ObjectiveSpec::new("dejong", domain, Sense::Minimize, dejong).with_optima(
        vec![vec![0.0; d]],
        0.0,
        EVAL_ACCURACY,
    ))
}

pub fn yang_forest_spec(d: usize) -> Result<ObjectiveSpec> {
    let domain = SearchDomain::cube(d, -FOREST_HALF_WIDTH, FOREST_HALF_WIDTH)?;
    Ok(
        ObjectiveSpec::new("yang_forest", domain, Sense::Minimize, forest_unchecked).with_optima(
            vec![vec![0.0; d]],
            0.0,
            EVAL_ACCURACY,
        ),
    )
}

/// Maxima of the two-dimensional four-peak function.
pub fn four_peak_maxima() -> Vec<Vec<f64>> {
    vec![
        vec![0.5, 0.5],
        vec![0.5, -0.5],
        vec![-0.5, 0.5],
        vec![-0.5, -0.5],
    ]
}

/// `1/sqrt(e)`, the common value of the four maxima.
pub fn four_peak_max_value() -> f64 {
    1.0 / E.sqrt()
}

pub fn four_peak_spec(d: usize) -> Result<ObjectiveSpec> {
    if d != 2 {
        return Err(Error::UnsupportedDimension {
            name: "four_peak".into(),
            supported: 2,
            requested: d,
        });
    }
    let domain = SearchDomain::cube(2, -FOUR_PEAK_HALF_WIDTH, FOUR_PEAK_HALF_WIDTH)?;
    Ok(
        ObjectiveSpec::new("four_peak", domain, Sense::Maximize, four_peak_unchecked)
            .with_optima(four_peak_maxima(), four_peak_max_value(), EVAL_ACCURACY),
    )
}

pub fn standing_wave_spec(d: usize, beta: f64) -> Result<ObjectiveSpec> {
    let domain = SearchDomain::cube(d, -STANDING_WAVE_HALF_WIDTH, STANDING_WAVE_HALF_WIDTH)?;
    // The exact value at (pi, ..., pi) is -d * (pi/beta)^10, about -1.6e-7 per
    // dimension for beta = 15; the nominal minimum 0 is kept within tolerance.
    Ok(ObjectiveSpec::new("standing_wave", domain, Sense::Minimize, move |x: &[f64]| {
        standing_wave_unchecked(x, beta)
    })
    .with_optima(vec![vec![PI; d]], 0.0, FIVE_DECIMALS))
}

pub const OBJECTIVE_NAMES: [&str; 4] = ["dejong", "yang_forest", "four_peak", "standing_wave"];

/// Looks an objective up by name. `forest` is accepted for `yang_forest`.
pub fn lookup(name: &str, d: usize) -> Result<ObjectiveSpec> {
    if d == 0 {
        return Err(Error::InvalidDomain("dimension must be at least 1".into()));
    }
    match name {
        "dejong" | "sphere" => dejong_spec(d),
        "yang_forest" | "forest" => yang_forest_spec(d),
        "four_peak" => four_peak_spec(d),
        "standing_wave" => standing_wave_spec(d, STANDING_WAVE_BETA),
        other => Err(Error::UnknownObjective(other.to_string())),
    }
}

/// All four benchmarks at dimension `d`; the four-peak entry is always two-dimensional.
pub fn registry(d: usize) -> Result<Vec<ObjectiveSpec>> {
    Ok(vec![
        dejong_spec(d)?,
        yang_forest_spec(d)?,
        four_peak_spec(2)?,
        standing_wave_spec(d, STANDING_WAVE_BETA)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dejong_values() {
        assert_eq!(dejong(&[0.0; 7]), 0.0);
        assert_eq!(dejong(&[1.0, 1.0, 1.0, 1.0]), 4.0);
        let x = [0.3, -1.2, 4.0];
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert_eq!(dejong(&x), dejong(&neg));
    }

    #[test]
    fn forest_values() {
        assert_eq!(yang_forest(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
        let v = yang_forest(&[1.0, 0.0]).unwrap();
        assert!((v - 0.431076).abs() < 1e-6, "{v}");
        assert!(yang_forest(&[7.0, 0.0]).is_err());
    }

    #[test]
    fn four_peak_values() {
        let top = four_peak(&[0.5, 0.5]).unwrap();
        assert!((top - 0.606531).abs() < 1e-6);
        assert_eq!(four_peak(&[0.0, 0.0]).unwrap(), 0.0);
        for p in four_peak_maxima() {
            assert_eq!(four_peak(&p).unwrap(), top);
        }
        assert!(four_peak(&[10.5, 0.0]).is_err());
    }

    #[test]
    fn standing_wave_values() {
        let v = standing_wave(&[PI, PI], 15.0).unwrap();
        assert!(v.abs() < 1e-5);
        assert!(v < 0.0);
        let exact = (-2.0 * (PI / 15.0).powi(10)).exp() - 1.0;
        assert!((v - exact).abs() < 1e-15);
        let half = standing_wave(&[PI / 2.0, PI / 2.0], 15.0).unwrap();
        assert!((half - 1.0).abs() < 1e-15);
        assert!(standing_wave(&[0.0, -20.5], 15.0).is_err());
    }

    #[test]
    fn spec_rejects_out_of_domain() {
        let s = dejong_spec(2).unwrap();
        assert!(matches!(s.evaluate(&[6.0, 0.0]), Err(Error::OutOfDomain { index: 0, .. })));
        assert!(matches!(s.evaluate(&[0.0]), Err(Error::DimensionMismatch { .. })));
        assert_eq!(s.evaluate(&[1.0, 2.0]).unwrap(), 5.0);
    }

    #[test]
    fn registry_lookup() {
        let s = lookup("dejong", 256).unwrap();
        assert_eq!(s.dim(), 256);
        assert_eq!(s.target_accuracy, 1e-5);
        let fp = lookup("four_peak", 2).unwrap();
        assert_eq!(fp.known_optima.len(), 4);
        assert_eq!(fp.sense, Sense::Maximize);
        assert!(matches!(
            lookup("four_peak", 3),
            Err(Error::UnsupportedDimension { .. })
        ));
        let sw = lookup("standing_wave", 2).unwrap();
        assert_eq!(sw.domain.lower(), &[-20.0, -20.0]);
        assert_eq!(sw.domain.upper(), &[20.0, 20.0]);
        assert!(matches!(lookup("rastrigin", 2), Err(Error::UnknownObjective(_))));
        assert!(lookup("dejong", 0).is_err());
        assert_eq!(registry(4).unwrap().len(), 4);
    }

    #[test]
    fn known_optima_hit_targets() {
        for d in [1, 2, 4, 8] {
            for spec in registry(d).unwrap() {
                for x in &spec.known_optima {
                    let v = spec.evaluate(x).unwrap();
                    assert!(spec.within(v, spec.target_accuracy), "{} d={d}: {v}", spec.name);
                }
            }
        }
    }
}
