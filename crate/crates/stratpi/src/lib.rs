//! JSON formats, reports and the command-line front end for
//! [`stratpi_core`].

pub mod cli;
pub mod commands;
pub mod format;
pub mod report;

pub use cli::{run, Output};
pub use commands::RunConfig;
pub use report::{Exit, Report, SCHEMA};
