//! Command-line front end, prime corpus loading and the benchmark harness.

pub mod bench;
pub mod cli;
pub mod corpus;
pub mod report;
