//! Command-line front end for the acphase verification suites.

pub mod commands;
pub mod report;
pub mod scenario;

pub use commands::{verify_algebra, verify_phase, RunOptions};
pub use report::{Record, RunReport, Status, Table, SCHEMA_VERSION};
pub use scenario::{ConfigError, Scenario};
