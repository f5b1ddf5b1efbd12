//! Library surface of the `exponent-toolkit` binary.
//!
//! The binary itself only parses arguments and maps [`commands::CommandError`]
//! to exit codes; everything else lives here so integration tests can drive
//! the same code paths directly:
//!
//! - [`chart_file`]: the line-oriented chart interchange format,
//! - [`group_file`]: fixed-point data files for the equivariant bound,
//! - [`svg`]: static chart plots,
//! - [`commands`]: one function per subcommand.

pub mod chart_file;
pub mod commands;
pub mod group_file;
pub mod svg;

pub use chart_file::{parse_chart, render_chart, ChartFileError};
pub use commands::{atomic_write, CommandError};
pub use group_file::{parse_group_file, render_group_file, GroupFileError};
pub use svg::render_svg;
