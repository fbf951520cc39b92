//! Experiment harness for `logcheb`: error tables, α sweeps, reference
//! fixtures, and the pieces of the `logcheb` command-line tool.

// Reference values keep their full tabulated digits; `!(x > 0.0)` also rejects NaN.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod experiments;
pub mod fixtures;
pub mod report;

pub use experiments::{alpha_sweep, parse_alpha_grid, table};
pub use fixtures::Fixtures;
pub use report::{ErrorReport, Format, Metadata, ReportRow};

/// Rayon pool honouring `LOGCHEB_THREADS` (unset or 0: rayon's default).
pub fn thread_pool() -> anyhow::Result<rayon::ThreadPool> {
    let threads = match std::env::var("LOGCHEB_THREADS") {
        Ok(s) if !s.trim().is_empty() => s.trim().parse::<usize>().map_err(|_| {
            anyhow::anyhow!("LOGCHEB_THREADS must be a non-negative integer, got '{s}'")
        })?,
        _ => 0,
    };
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?)
}
