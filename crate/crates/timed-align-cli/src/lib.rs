//! Conformance checking of CSV event logs against sequential timed models.
//!
//! The `timed-align` binary is a thin layer over [`commands`]; every command
//! produces a [`report::Report`] rendered as text, JSON or CSV.

pub mod commands;
pub mod error;
pub mod log;
pub mod report;

pub use error::CliError;
