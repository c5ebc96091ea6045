//! Command implementations for the `noloopwb` binary.

pub mod commands;
pub mod corpus_run;
pub mod graph;
