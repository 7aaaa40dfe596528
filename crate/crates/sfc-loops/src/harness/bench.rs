//! Benchmark suites: a JSON file lists a dataset and a series of join
//! runs; each run prints one JSON line with wall time, throughput and,
//! when the suite contains a naive baseline, its speedup against it.

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::data::{generate, DatasetSpec, Generator};
use crate::error::{Error, Result};
use crate::kernels::{epsilon_join, naive_join, JoinParams};

#[derive(Clone, Debug, Deserialize)]
pub struct BenchDataset {
    pub generator: String,
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
    #[serde(default)]
    pub clusters: Option<usize>,
    #[serde(default)]
    pub sigma: Option<f64>,
}

impl BenchDataset {
    fn to_spec(&self) -> Result<DatasetSpec> {
        let generator = match self.generator.as_str() {
            "uniform" => Generator::UniformCube,
            "gmix" => Generator::GaussianMixture {
                clusters: self.clusters.unwrap_or(4),
                sigma: self.sigma.unwrap_or(0.05),
            },
            other => {
                return Err(Error::Spec(format!(
                    "bench dataset generator must be uniform or gmix, got {other}"
                )))
            }
        };
        Ok(DatasetSpec {
            generator,
            n: self.n,
            dim: self.dim,
            seed: self.seed,
        })
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct BenchRun {
    pub name: String,
    /// "naive" or "sfc".
    pub kind: String,
    #[serde(default)]
    pub curve: Option<String>,
    #[serde(default)]
    pub workers: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct BenchSuite {
    #[serde(default)]
    pub schema: Option<u32>,
    pub dataset: BenchDataset,
    pub eps: f64,
    #[serde(default)]
    pub block_bits: Option<u32>,
    pub runs: Vec<BenchRun>,
}

/// One emitted JSON line per run.
#[derive(Clone, Debug, Serialize)]
pub struct BenchLine {
    pub schema: u32,
    pub name: String,
    pub kind: String,
    pub curve: String,
    pub workers: usize,
    pub wall_seconds: f64,
    pub throughput: f64,
    pub pairs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub speedup_vs_baseline: Option<f64>,
}

pub fn load_suite(path: &Path) -> Result<BenchSuite> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        line: e.line(),
        message: e.to_string(),
    })
}

/// Execute a suite; returns the lines in run order. The baseline is the
/// first run of kind "naive"; without one, absolute times only.
pub fn run_bench(path: &Path) -> Result<Vec<BenchLine>> {
    let suite = load_suite(path)?;
    let points = generate(&suite.dataset.to_spec()?)?;
    let candidates = points.n() as f64 * (points.n() as f64 - 1.0) / 2.0;
    let mut lines = Vec::with_capacity(suite.runs.len());
    let mut baseline: Option<f64> = None;
    for run in &suite.runs {
        let (wall, pairs, curve, workers) = match run.kind.as_str() {
            "naive" => {
                let t0 = Instant::now();
                let res = naive_join(&points, suite.eps)?;
                (t0.elapsed().as_secs_f64(), res.len(), "none".to_string(), 1)
            }
            "sfc" => {
                let family = run
                    .curve
                    .as_deref()
                    .unwrap_or("hilbert")
                    .parse::<crate::curve::CurveFamily>()?;
                let spec = crate::curve::CurveSpec::new(family, 2, 1)?;
                let params = JoinParams {
                    workers: run.workers.unwrap_or(1),
                    block_bits: suite.block_bits.unwrap_or(crate::engine::DEFAULT_BLOCK_BITS),
                    reorder_dims: false,
                };
                let t0 = Instant::now();
                let res = epsilon_join(&points, suite.eps, &spec, &params)?;
                (
                    t0.elapsed().as_secs_f64(),
                    res.len(),
                    family.name().to_string(),
                    params.workers,
                )
            }
            other => {
                return Err(Error::Spec(format!(
                    "bench run kind must be naive or sfc, got {other}"
                )))
            }
        };
        if baseline.is_none() && run.kind == "naive" {
            baseline = Some(wall);
        }
        lines.push(BenchLine {
            schema: 1,
            name: run.name.clone(),
            kind: run.kind.clone(),
            curve,
            workers,
            wall_seconds: wall,
            throughput: candidates / wall.max(1e-9),
            pairs,
            speedup_vs_baseline: baseline.map(|b| b / wall.max(1e-9)),
        });
    }
    Ok(lines)
}
