//! JSON front end for `formleb`.
//!
//! A request document names an operation (`kind`) and carries its operands;
//! the response is a canonical JSON document with result matrices, measures,
//! flags and diagnostics, or an error with a stable code.

pub mod app;
pub mod commands;
pub mod error;
pub mod input;
pub mod output;
pub mod selftest;

pub use app::{run, Execution};
pub use commands::run_command;
pub use error::{CliError, Stage};
pub use input::{parse_input, parse_input_with_default, CheckKind, Kind, ProblemInput};
pub use output::{emit_output, parse_output, ResultOutput, Status};
