//! Loop engine: curve-ordered traversal of bounded, shaped domains,
//! block-granular work packets, and multi-worker execution with dynamic
//! work stealing.

mod domain;
mod embed;
mod packet;
mod parallel;
mod traverse;
mod vtime;

pub use domain::{DomainShape, LoopDomain};
pub use packet::{partition, WorkPacket, DEFAULT_BLOCK_BITS};
pub use parallel::{parallel_execute, ScheduleReport};
pub use traverse::{count_valid, traverse, traverse_with, CollectVisitor, CountVisitor, Visitor};
pub use vtime::simulate_schedule;
