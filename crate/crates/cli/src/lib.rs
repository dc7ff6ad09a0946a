//! Experiment harness for the adaptive-operator evolutionary optimizer:
//! design catalog, single-run executor, campaign grid, CSV persistence,
//! statistical report generation, and the `opadapt` command-line tool.

pub mod analyze;
pub mod campaign;
pub mod cli;
pub mod config;
pub mod design;
pub mod runner;
