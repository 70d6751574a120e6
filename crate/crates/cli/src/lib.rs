//! File formats and the `rolecol` command line for `rolecol-core`.

pub mod cli;
pub mod formats;
