//! Parallel driver, reports and command-line front end for `brickcount-core`.
//!
//! Searches are split into subtrees at a fixed depth and the subtrees are
//! handed to worker threads. Tallies are merged in subtree order, so every
//! count is identical for any number of workers.

pub mod cli;
pub mod driver;
pub mod report;
pub mod verify;
