//! Command-line front end for the firefly optimizer.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod config;
pub mod error;
pub mod execute;

pub use args::{parse_config, Early, Invocation};
pub use config::{CliConfig, Command};
pub use error::CliError;
pub use execute::{execute, render_report, Report};
