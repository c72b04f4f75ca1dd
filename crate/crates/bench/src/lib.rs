//! Benchmark harness around the `powersquare` solvers.
//!
//! Generates seeded ensembles, times each solve, optionally checks the
//! result against the Jacobi reference, and writes one CSV row per
//! (matrix, algorithm). Summaries and iteration histograms are computed from
//! those rows.

pub mod histogram;
pub mod record;
pub mod suite;
pub mod summary;

pub use histogram::{histogram, HistogramData, Scale};
pub use record::{read_csv, write_csv, Alg, BenchRecord, Mode};
pub use suite::{parse_sizes, run_suite, SizeSpec, SuiteConfig, DESK_SCALE, FULL_SCALE};
pub use summary::{summarize, SpeedupRow, Summary, SummaryRow};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("no converged runs for {0}")]
    EmptyData(String),
    #[error("invalid size spec `{0}`: expected n:count with n >= 2 and count >= 1")]
    InvalidSize(String),
    #[error(transparent)]
    Solver(#[from] powersquare::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;
