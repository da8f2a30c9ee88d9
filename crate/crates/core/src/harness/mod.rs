//! Scenario configuration, experiment runners and result output for `upa-sim`.

pub mod config;
pub mod experiments;
pub mod output;

pub use config::{load_config, parse_config, ScenarioConfig};
pub use experiments::{run_experiment, run_runtime, run_subspace, run_sumrate, ExperimentKind, ExperimentResult};
pub use output::{emit_results, write_results, OutputFormat};
