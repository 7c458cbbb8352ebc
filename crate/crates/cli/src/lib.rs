//! Command-line driver for `valcalc-core`: JSON and CSV input and output, the
//! scan writer and the verification suites.

pub mod error;
pub mod grid;
pub mod io;
pub mod scan;
pub mod verify;

use valcalc_core::cluster::ClosureOptions;

use crate::error::CliError;

pub const ITER_CAP_VAR: &str = "VALCALC_ITER_CAP";

/// Closure options from the environment; an unset variable keeps the default cap.
pub fn closure_options_from_env() -> Result<ClosureOptions, CliError> {
    match std::env::var(ITER_CAP_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(ClosureOptions::default()),
        Err(e) => Err(CliError::Parse(format!("{ITER_CAP_VAR}: {e}"))),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => Ok(ClosureOptions { iteration_cap: Some(cap) }),
            _ => Err(CliError::Parse(format!("{ITER_CAP_VAR} must be a positive integer, got {s:?}"))),
        },
    }
}
