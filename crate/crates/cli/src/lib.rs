//! Verification runs, CIQF field files and JSON reports behind the `ciq` binary.

pub mod ciqf;
pub mod config;
pub mod error;
pub mod report;
pub mod run;

pub use ciqf::{read_field_file, write_field_file, Field};
pub use config::{RunConfig, Scenario};
pub use error::{CliError, Result};
pub use report::VerificationReport;
pub use run::{run_basis_check, run_decompose, run_verify};
