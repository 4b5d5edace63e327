//! System registry, verification suites, reports and the command-line front
//! end for `coxword-core`.

pub mod cli;
pub mod error;
pub mod registry;
pub mod report;
pub mod suites;

pub use error::{HarnessError, Result};
pub use registry::{LoadedSystem, REGISTRY};
pub use report::{VerificationReport, ZRecord};
pub use suites::{run_suite, Bounds, RunOptions, SuiteId};
