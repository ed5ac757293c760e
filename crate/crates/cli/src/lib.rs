//! Graph files, reports and command implementations behind the `tightcut`
//! binary.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use error::{CliError, Result};
