//! Library side of the `nnirank2` command-line tool: matrix files,
//! rendering, subcommands and benchmark suites.

pub mod bench;
pub mod commands;
pub mod matrix_file;
pub mod render;

pub use commands::{CliError, CliResult, EXIT_INPUT, EXIT_NOT_RANK2, EXIT_OK};
pub use matrix_file::{format_matrix, parse_matrix, read_matrix, ParseError};
