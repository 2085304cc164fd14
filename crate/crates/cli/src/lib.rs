//! The `divkummer` command-line front end: JSON documents in, JSON reports out.

pub mod commands;
pub mod corpus;
pub mod doc;
pub mod gen;
pub mod report;
pub mod verify;

pub use commands::{run, Flags, COMMANDS};
pub use report::{execute, merge, render, EXIT_INPUT, EXIT_OK, EXIT_REFUSAL};
