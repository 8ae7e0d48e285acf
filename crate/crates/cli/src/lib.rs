//! Command line and corpus sweeps for `regwitness-core`.

mod cli;
mod sweep;

pub use cli::{cli, cli_to, EXIT_OK, EXIT_USAGE, EXIT_VIOLATIONS, FIELD_ENV};
pub use sweep::{
    load_corpus, run_sweep, Attainment, Budgets, Corpus, Counts, Summary, SweepConfig, SweepReport, SweepRow, Timing,
};
