//! Batch front end: reads a job document, runs one command, reports.

pub mod commands;
pub mod report;
pub mod spec;

use graphprod_core::Error;

pub use commands::{Command, Needs, Registry};
pub use report::Report;
pub use spec::{parse_spec, Job, JobSpec, Overrides};

pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_TRUNCATION: i32 = 3;
pub const EXIT_D_SQUARED: i32 = 4;

/// Parses, validates and runs a job.
pub fn run_text(text: &str, overrides: Overrides, registry: &Registry) -> anyhow::Result<Report> {
    let job = parse_spec(text)?.resolve(overrides)?;
    run(&job, registry)
}

pub fn run(job: &Job, registry: &Registry) -> anyhow::Result<Report> {
    let (results, passed) = registry.dispatch(job)?;
    Ok(Report {
        command: job.command.clone(),
        target: job.target.clone(),
        field: job.field.to_string(),
        n_max: job.n_max,
        s_max: job.s_max,
        results,
        passed,
    })
}

/// Exit status for a failed run.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::TruncationOverflow { .. }) => EXIT_TRUNCATION,
        Some(Error::DSquaredNonzero { .. }) => EXIT_D_SQUARED,
        _ => EXIT_INVALID,
    }
}
