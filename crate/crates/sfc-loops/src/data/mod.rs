//! Deterministic data plumbing: the fixed seeded generator, synthetic
//! dataset generators and CSV point I/O.

mod csv;
mod gen;
mod rng;

pub use csv::{read_points, write_points};
pub use gen::{generate, DatasetSpec, Generator};
pub use rng::SplitMix64;
