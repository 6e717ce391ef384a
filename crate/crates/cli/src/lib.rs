//! Command-line front end for `pseudonull`: the hierarchy listing, symmetry
//! and bracket calculators, simulations and the verification suite.

pub mod args;
pub mod commands;
pub mod corpus;
pub mod error;
pub mod golden;
pub mod init;
pub mod io;
pub mod json;
pub mod measure;
pub mod report;
pub mod verify;

pub use args::Cli;
pub use commands::run;
pub use error::{CliError, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
