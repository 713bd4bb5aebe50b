//! On-disk formats: CSV for circle functions, the `SE2F` binary container
//! for plane functions and wavelet fields, and binary PGM images.

pub mod csv;
pub mod pgm;
pub mod se2f;

use std::fs;
use std::path::Path;

use crate::error::{CliError, CliResult};

pub(crate) fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

pub(crate) fn write_bytes(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}
