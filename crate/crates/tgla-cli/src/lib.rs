//! Command-line driver for `tgla`: JSON configs, check suites and reports.

pub mod config;
pub mod report;
pub mod run;
pub mod suites;
