//! Independent-set approximation algorithms driven by per-vertex
//! recoverable-value accounting, together with the exact oracles needed to
//! verify every guarantee on desk-scale instances.
//!
//! All guarantee arithmetic (LP objectives, ratio bounds, recoverable
//! values) is carried out in exact rational arithmetic; floating point only
//! appears in statistical summaries of randomized trials.

pub mod avg2;
pub mod classic;
pub mod gen;
pub mod graph;
pub mod kcolored;
pub mod layered;
pub mod lp;
pub mod oracle;
pub mod ratio;
pub mod reductions;

pub use graph::{Graph, IndependentSet, RVReport, VertexWeights};
pub use ratio::Rational;
