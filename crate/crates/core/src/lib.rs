//! Firefly algorithm with benchmark objectives, intermittent-search closed
//! forms and a seeded experiment harness.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod firefly;
pub mod harness;
pub mod objective;
pub mod params;
pub mod rng;
pub mod theory;

pub use error::{Error, Result};
pub use firefly::{
    attractiveness, cooled_alpha, move_firefly, run, step, RunResult, StepOutcome, StoppingRule,
    SwarmState, TerminalReason,
};
pub use objective::{lookup, registry, ObjectiveSpec, Sense};
pub use params::{FaParameters, Mode, NoiseKind, SearchDomain};
pub use rng::RngStream;
pub use theory::IntermittentScenario;
