//! Command-line front end: run configuration, seeded identity sweeps and
//! JSON/CSV reports. The `mbkit` binary is a thin argument parser over
//! [`commands`].

pub mod commands;
pub mod config;
pub mod report;
pub mod sweep;

pub use commands::{
    cmd_contour, cmd_eval, cmd_verify, ContourRequest, EvalRequest, Method, Outcome,
};
pub use config::{parse_complex, OutputFormat, RunConfig};
pub use sweep::{run_sweep, ExplicitParams, Identity};
