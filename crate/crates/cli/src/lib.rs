//! Command-line front end for the Gion shrine solver.
//!
//! Every command except `scan` and `plot` without `--output` produces an
//! [`OutputRecord`], rendered as JSON, CSV or text.

pub mod args;
pub mod commands;
pub mod plot;
pub mod record;

pub use commands::{run, Cli, Command, Failure, Output};
pub use record::{Format, OutputRecord};
