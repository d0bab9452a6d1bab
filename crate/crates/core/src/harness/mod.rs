//! Seeded replication, statistics and the experiments built on them.

pub mod cluster;
pub mod experiments;
pub mod schedule;
pub mod table;
pub mod trials;

pub use cluster::{cluster_final_positions, Cluster};
pub use experiments::{
    dim_scaling, evals_benchmark, q_sweep, subdivision_experiment, DimScalingConfig, DimScalingRow,
    EvalsBenchmarkReport, QSweepConfig, QSweepRow, ReferenceCounts, SubdivisionConfig,
    SubdivisionReport,
};
pub use schedule::{build_mode_schedule, ModeSchedule};
pub use table::Table;
pub use trials::{run_trials, summarize, ExperimentSummary, TrialPlan, TrialRecord};
