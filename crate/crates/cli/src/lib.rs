//! Command-line front end for `hexbubble`: JSON and text records, CSV sweeps,
//! SVG figures and the self-test suite.

pub mod commands;
pub mod format;
pub mod record;
pub mod svg;
pub mod verify;

pub use commands::{exit_code, CliError};
pub use record::OutputRecord;
