//! Independent transcriptions of the closed forms, written from the formulas
//! rather than from the library code, plus seeded input generators.

#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const N_RANDOM: usize = 10_000;
pub const REL_TOL: f64 = 1e-12;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else {
        (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
    }
}

pub fn point(r: &mut ChaCha8Rng, dim: usize, half_width: f64) -> Vec<f64> {
    (0..dim).map(|_| r.random_range(-half_width..=half_width)).collect()
}

pub fn attractiveness(beta0: f64, gamma: f64, r: f64) -> f64 {
    beta0 / (gamma * r.powi(2)).exp()
}

pub fn cooled(alpha0: f64, delta: f64, t: usize) -> f64 {
    alpha0 * (t as f64 * delta.ln()).exp()
}

pub fn sphere(x: &[f64]) -> f64 {
    let mut s = 0.0;
    for v in x {
        s += v.powi(2);
    }
    s
}

pub fn forest(x: &[f64]) -> f64 {
    let l1: f64 = x.iter().map(|v| v.abs()).sum();
    l1 * x.iter().map(|v| (-(v.powi(2)).sin()).exp()).product::<f64>()
}

pub fn four_peak(x: &[f64]) -> f64 {
    let l1: f64 = x.iter().map(|v| v.abs()).sum();
    let r2: f64 = x.iter().map(|v| v.powi(2)).sum();
    l1 / r2.exp()
}

pub fn standing_wave(x: &[f64], beta: f64) -> f64 {
    let far: f64 = x.iter().map(|v| (v / beta).powi(10)).sum();
    let near: f64 = x.iter().map(|v| (v - PI).powi(2)).sum();
    let prod: f64 = x.iter().map(|v| v.cos().powi(2)).product();
    1.0 + (-far).exp() * prod - 2.0 * (-near).exp() * prod
}

fn ratio_term(a: f64, b: f64) -> f64 {
    let l = (b / a).ln();
    (l / (2.0 * l - 1.0)).powi(2)
}

pub fn optimal_ratio(diffusion: f64, a: f64, b: f64) -> f64 {
    diffusion * ratio_term(a, b) / a.powi(2)
}

pub fn tau_a_min(diffusion: f64, u: f64, a: f64, b: f64) -> f64 {
    let l = (b / a).ln();
    diffusion * l.powi(2) / (2.0 * u.powi(2) * (2.0 * l - 1.0))
}

pub fn tau_b_min(a: f64, u: f64, b: f64) -> f64 {
    (a / u) * ((b / a).ln() - 0.5).sqrt()
}

pub fn mean_search_time(dim: usize, a: f64, b: f64, u: f64) -> f64 {
    match dim {
        1 => (2.0 * b / u) * (b / a / 3.0).sqrt(),
        2 => (2.0 * b.powi(2) / (a * u)) * (b / a).ln().sqrt(),
        d => 2.2 * (b / u) * ((d as f64 - 1.0) * (b / a).ln()).exp(),
    }
}

pub fn exploration_fraction(radius: f64, a: f64) -> f64 {
    0.5 * ratio_term(a, radius)
}

/// Radii with `ln(b/a)` in `(0.55, 5)`.
pub fn radii(r: &mut ChaCha8Rng) -> (f64, f64) {
    let a = r.random_range(0.05..5.0);
    (a, a * r.random_range(0.55f64..5.0).exp())
}
