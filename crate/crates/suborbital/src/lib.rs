//! Graph export, verification suites and the `suborbital` command-line
//! tool, built on [`suborbital_core`].

pub mod cli;
pub mod graph_io;
pub mod report;
pub mod verify;

pub use suborbital_core;
