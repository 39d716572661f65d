//! Command-line front end and verification suites.

pub mod app;
pub mod error;
pub mod report;
pub mod suites;

pub use app::{run, Cli};
pub use error::{CliError, Result};
pub use report::{Check, SuiteReport};
