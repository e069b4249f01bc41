//! File formats, a parallel experiment runner and the `motionless` command
//! line on top of [`motionless_core`].

pub mod cli;
pub mod formats;
pub mod parallel;

pub use formats::FormatError;
