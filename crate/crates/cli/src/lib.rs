//! Sweep orchestration, config ingestion, CSV emission, and
//! MC-vs-analytic validation reports for the double-surface NOMA
//! toolkit. The `duoris` binary is a thin wrapper over this crate.

pub mod config;
pub mod csvio;
pub mod presets;
pub mod report;
pub mod sweep;
