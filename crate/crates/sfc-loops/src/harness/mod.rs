//! Command implementations behind the CLI: dataset generation, kernel
//! drivers with oracle verification, cache-simulation reports and the
//! benchmark suite. Each driver returns a [`RunReport`]; the binary prints
//! it as one JSON line and maps errors to the exit-code contract.

mod bench;
mod commands;

pub use bench::{run_bench, BenchLine, BenchRun, BenchSuite};
pub use commands::{
    run_cachesim, run_gen, run_join, run_kmeans, run_matmul, run_schedule, CachesimArgs, GenArgs,
    JoinArgs, KmeansArgs, MatmulArgs, ScheduleArgs,
};

use crate::engine::ScheduleReport;

/// Outcome of the optional oracle check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    VerifiedExact,
    /// Verified within the stated tolerance (stringified, e.g. "1e-12").
    VerifiedTolerance(String),
    Skipped,
}

impl serde::Serialize for Verification {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verification::VerifiedExact => s.serialize_str("verified-exact"),
            Verification::VerifiedTolerance(tol) => {
                s.serialize_str(&format!("verified-tolerance({tol})"))
            }
            Verification::Skipped => s.serialize_str("skipped"),
        }
    }
}

/// One JSON line describing a command run. Wall time covers only the
/// kernel phase; file I/O and data generation are excluded.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub parameters: serde_json::Value,
    pub wall_seconds: f64,
    /// Command-specific work items per second (candidate pairs for join,
    /// point-centroid products for k-means, flops for matmul, rows for
    /// gen, simulated accesses for cachesim).
    pub throughput: f64,
    pub workers: usize,
    pub curve: String,
    pub verification: Verification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ScheduleReport>,
}

impl RunReport {
    pub fn new(command: &str, parameters: serde_json::Value) -> Self {
        RunReport {
            schema: 1,
            command: command.to_string(),
            parameters,
            wall_seconds: 0.0,
            throughput: 0.0,
            workers: 1,
            curve: String::new(),
            verification: Verification::Skipped,
            schedule: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
