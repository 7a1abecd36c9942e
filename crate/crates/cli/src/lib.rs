//! Command-line front end for the series-resonant matrix converter
//! simulator: configuration handling, simulation runs and sweeps, CSV/JSON
//! outputs, and the analytic efficiency calculator.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{
    cmd_dump_table, cmd_efficiency, cmd_simulate, cmd_sweep, efficiency_table, EfficiencyRow,
    SimulateOutput, SweepOutput, SweepRow,
};
pub use config::{build_config, default_config_toml, parse_set_arg};
pub use error::CliError;
pub use output::{analyze, run_id, AnalysisReport, RunManifest};
