//! File-level workflow behind the command line: instance files, oracle files, resumable run
//! matrices written to CSV, and aggregate reports.

mod files;
mod matrix;
mod report;

pub use files::{cmd_gen, cmd_oracle, instance_file_name, load_instance, load_or_build_oracle, oracle_path};
pub use matrix::{cmd_run, AlgoSpec, CellFailure, RunMatrix, RunRow, RunSummary, RESULTS_FILE};
pub use report::{
    box_stats, cmd_report, delta_pairs, quantile, read_rows, BoxRow, DeltaReport, DeltaRow,
    ReportMode, ReportSummary,
};
