//! Fully-associative LRU cache simulator: replays the memory-access
//! pattern of a traversal and counts misses, quantifying how much
//! locality a traversal order preserves.

mod lru;
mod pattern;
mod sim;

pub use lru::{Access, CacheConfig, LruCache, MissStats};
pub use pattern::{AccessPattern, KMeansPattern, MatmulPattern, SelfJoinPattern};
pub use sim::{compare_orders, simulate, write_report_csv, CompareRow, SimOrder};
