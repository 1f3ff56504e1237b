//! Text front end for the workbench: a small definition language, a
//! workspace of named objects, and the commands the `qcw` binary runs.

pub mod cli;
pub mod error;
pub mod eval;
pub mod report;
pub mod syntax;
pub mod workspace;
pub mod writer;

pub use error::CliError;
pub use workspace::Workspace;
