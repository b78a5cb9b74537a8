//! File formats, parallel drivers and the command line for `turanlab-core`.

pub mod cli;
pub mod formats;
pub mod parallel;

pub use turanlab_core as core;
