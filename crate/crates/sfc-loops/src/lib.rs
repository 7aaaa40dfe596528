//! Cache-oblivious parallel loops over space-filling curves.
//!
//! The crate traverses nested iteration spaces along Hilbert, Z-order or
//! Peano curves, partitions the traversal into balanced work packets and
//! executes them on a work-stealing worker pool. On top of the loop engine
//! sit three data-mining kernels (ε-similarity join, k-means, blocked
//! matrix multiplication), an LRU cache simulator that quantifies the
//! locality of different traversal orders, and a benchmark/verification
//! harness exposed through the `sfc-loops` binary.

pub mod cache;
pub mod curve;
pub mod data;
pub mod engine;
pub mod error;
pub mod harness;
pub mod kernels;

pub use error::{Error, Result};
