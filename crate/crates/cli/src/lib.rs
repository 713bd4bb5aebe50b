//! File formats, verification suites and command implementations behind the
//! `se2` binary.

pub mod cli;
pub mod error;
pub mod io;
pub mod report;
pub mod verify;

pub use error::{CliError, CliResult};
pub use report::{CheckKind, VerificationReport};
