//! File formats, catalog handling and the `groupeq` command line.

pub mod catalog;
pub mod cli;
pub mod commands;
pub mod config;
pub mod formats;
pub mod parallel;
