//! File I/O, experiment orchestration, and reporting around the `rvmis`
//! library.

pub mod dimacs;
pub mod experiment;
pub mod report;
