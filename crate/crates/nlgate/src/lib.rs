//! Problem files, reports and the command implementations behind the
//! `nlgate` binary.

pub mod commands;
mod error;
pub mod problem;

pub use error::CliError;
