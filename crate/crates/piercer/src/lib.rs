//! Files, command line and drawings for `helly-core`.
//!
//! Instances are JSON documents (see [`document`]); every subcommand prints a
//! JSON report (see [`report`]). Colorful sweeps over many tuples run on all
//! cores through [`parallel`].

pub mod cli;
pub mod document;
pub mod parallel;
pub mod report;
pub mod svg;
