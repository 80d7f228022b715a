//! IO companion for the core toolkit: plain-text configuration, CSV file
//! formats, and the check suites behind the `mta verify` subcommand.
//!
//! Everything here is deliberately std-only; the numerics live in
//! `mta-core`.

pub mod config;
pub mod csv;
pub mod suites;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
