//! Front end for the `pwave-core` suites. Each command runs one suite,
//! writes a JSON or CSV document and fails with a distinct exit code when a
//! check is outside tolerance.

pub mod config;
pub mod error;
pub mod report;
pub mod suites;

pub use config::RunConfig;
pub use error::CliError;

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let outcome = suites::run_suite(cfg)?;
    outcome.emit(cfg)?;
    match outcome.failed() {
        0 => Ok(()),
        failed => Err(CliError::Tolerance { failed }),
    }
}
