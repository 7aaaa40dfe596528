//! One function per CLI subcommand, testable without a process spawn.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::json;

use super::{RunReport, Verification};
use crate::cache::{
    compare_orders, write_report_csv, CacheConfig, KMeansPattern, MatmulPattern, SelfJoinPattern,
    SimOrder,
};
use crate::curve::{CurveFamily, CurveSpec};
use crate::data::{generate, read_points, write_points, DatasetSpec, Generator};
use crate::engine::{self, DomainShape, LoopDomain};
use crate::error::{Error, Result};
use crate::kernels::{
    epsilon_join_reported, kmeans_traced, matmul_reported, max_relative_error, naive_join,
    naive_matmul, reference_kmeans, JoinParams, KMeansParams, Matrix, MatmulParams,
};

fn curve_spec(family: CurveFamily, dim: usize) -> Result<CurveSpec> {
    // engine re-derives the embedding order; 1 keeps sides valid
    CurveSpec::new(family, dim.max(2), 1)
}

#[derive(Clone, Debug)]
pub struct GenArgs {
    pub generator: String,
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub header: bool,
    pub clusters: usize,
    pub sigma: f64,
    pub periods: Vec<u64>,
    pub noise: f64,
    pub stride: usize,
}

pub fn run_gen(args: &GenArgs) -> Result<RunReport> {
    let generator = match args.generator.as_str() {
        "uniform" => Generator::UniformCube,
        "gmix" => Generator::GaussianMixture {
            clusters: args.clusters,
            sigma: args.sigma,
        },
        "signal" => Generator::SignalWindows {
            periods: args.periods.clone(),
            noise: args.noise,
            stride: args.stride,
        },
        other => return Err(Error::Spec(format!("unknown generator: {other}"))),
    };
    let spec = DatasetSpec {
        generator,
        n: args.n,
        dim: args.dim,
        seed: args.seed,
    };
    let t0 = Instant::now();
    let points = generate(&spec)?;
    let wall = t0.elapsed().as_secs_f64();
    write_points(&args.out, &points, args.header)?;
    let mut report = RunReport::new(
        "gen",
        json!({
            "generator": args.generator,
            "n": args.n,
            "d": args.dim,
            "seed": args.seed,
            "out": args.out.display().to_string(),
        }),
    );
    report.wall_seconds = wall;
    report.throughput = args.n as f64 / wall.max(1e-9);
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct JoinArgs {
    pub input: PathBuf,
    pub eps: f64,
    pub curve: CurveFamily,
    pub workers: usize,
    pub block_bits: u32,
    pub verify: bool,
    pub reorder_dims: bool,
    pub out: Option<PathBuf>,
}

fn write_pairs_csv(path: &Path, pairs: &[(u32, u32)], dists: Option<&[f64]>) -> Result<()> {
    use std::io::Write;
    let file = std::fs::File::create(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut w = std::io::BufWriter::new(file);
    for (idx, (i, j)) in pairs.iter().enumerate() {
        let line = match dists {
            Some(d) => format!("{i},{j},{}\n", d[idx]),
            None => format!("{i},{j}\n"),
        };
        w.write_all(line.as_bytes()).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        })?;
    }
    Ok(())
}

pub fn run_join(args: &JoinArgs) -> Result<RunReport> {
    let points = read_points(&args.input)?;
    let spec = curve_spec(args.curve, 2)?;
    let params = JoinParams {
        workers: args.workers,
        block_bits: args.block_bits,
        reorder_dims: args.reorder_dims,
    };
    let t0 = Instant::now();
    let (mut result, schedule) = epsilon_join_reported(&points, args.eps, &spec, &params)?;
    let wall = t0.elapsed().as_secs_f64();
    result.sort();

    let mut report = RunReport::new(
        "join",
        json!({
            "input": args.input.display().to_string(),
            "eps": args.eps,
            "block_bits": args.block_bits,
            "n": points.n(),
            "d": points.dim(),
            "pairs": result.len(),
        }),
    );
    report.workers = args.workers;
    report.curve = args.curve.name().to_string();
    report.wall_seconds = wall;
    let candidates = points.n() as f64 * (points.n() as f64 - 1.0) / 2.0;
    report.throughput = candidates / wall.max(1e-9);
    report.schedule = schedule;

    if args.verify {
        let oracle = naive_join(&points, args.eps)?;
        let got = result.sorted_pairs();
        let want = oracle.sorted_pairs();
        if got != want {
            let diff = first_difference(&got, &want);
            return Err(Error::VerifyFailed(format!(
                "join differs from naive oracle at pair {diff:?} ({} vs {} pairs)",
                got.len(),
                want.len()
            )));
        }
        report.verification = Verification::VerifiedExact;
    }
    if let Some(out) = &args.out {
        write_pairs_csv(out, &result.pairs, result.distances.as_deref())?;
    }
    Ok(report)
}

/// First pair present in exactly one of the two sorted sets.
fn first_difference(a: &[(u32, u32)], b: &[(u32, u32)]) -> Option<(u32, u32)> {
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => return Some(a[i]),
            std::cmp::Ordering::Greater => return Some(b[j]),
        }
    }
    a.get(i).or_else(|| b.get(j)).copied()
}

#[derive(Clone, Debug)]
pub struct KmeansArgs {
    pub input: PathBuf,
    pub k: usize,
    pub iters: u32,
    pub tol: f64,
    pub seed: u64,
    pub curve: CurveFamily,
    pub workers: usize,
    pub block_bits: u32,
    pub verify: bool,
    pub out: Option<PathBuf>,
}

pub fn run_kmeans(args: &KmeansArgs) -> Result<RunReport> {
    let points = read_points(&args.input)?;
    let spec = curve_spec(args.curve, 2)?;
    let params = KMeansParams {
        k: args.k,
        max_iters: args.iters,
        tol: args.tol,
        seed: args.seed,
        workers: args.workers,
        block_bits: args.block_bits,
    };
    let t0 = Instant::now();
    let (model, trace) = kmeans_traced(&points, &spec, &params)?;
    let wall = t0.elapsed().as_secs_f64();

    let mut report = RunReport::new(
        "kmeans",
        json!({
            "input": args.input.display().to_string(),
            "k": args.k,
            "iters": args.iters,
            "tol": args.tol,
            "seed": args.seed,
            "n": points.n(),
            "d": points.dim(),
            "iterations": model.iterations,
            "inertia": model.inertia,
        }),
    );
    report.workers = args.workers;
    report.curve = args.curve.name().to_string();
    report.wall_seconds = wall;
    report.throughput = points.n() as f64 * args.k as f64 * model.iterations as f64
        / wall.max(1e-9);
    report.schedule = trace.last_schedule.clone();

    if args.verify {
        let (_, oracle) = reference_kmeans(&points, &params)?;
        if trace.assignments != oracle.assignments {
            let iter = trace
                .assignments
                .iter()
                .zip(&oracle.assignments)
                .position(|(a, b)| a != b)
                .map_or(trace.assignments.len(), |i| i + 1);
            return Err(Error::VerifyFailed(format!(
                "k-means assignments diverge from naive Lloyd at iteration {iter}"
            )));
        }
        report.verification = Verification::VerifiedExact;
    }
    if let Some(out) = &args.out {
        let payload = serde_json::to_string_pretty(&model).expect("model serializes");
        std::fs::write(out, payload).map_err(|e| Error::Io {
            path: out.display().to_string(),
            source: e,
        })?;
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct MatmulArgs {
    /// (m, k, n): A is m×k, B is k×n.
    pub sizes: (usize, usize, usize),
    pub seed: u64,
    pub curve: CurveFamily,
    pub workers: usize,
    pub tile_bits: u32,
    pub verify: bool,
}

pub fn run_matmul(args: &MatmulArgs) -> Result<RunReport> {
    let (m, k, n) = args.sizes;
    let a = Matrix::random(m, k, args.seed)?;
    let b = Matrix::random(k, n, args.seed.wrapping_add(1))?;
    let spec = curve_spec(args.curve, 2)?;
    let params = MatmulParams {
        workers: args.workers,
        tile_bits: args.tile_bits,
    };
    let t0 = Instant::now();
    let (c, schedule) = matmul_reported(&a, &b, &spec, &params)?;
    let wall = t0.elapsed().as_secs_f64();

    let mut report = RunReport::new(
        "matmul",
        json!({
            "m": m, "k": k, "n": n,
            "seed": args.seed,
            "tile_bits": args.tile_bits,
        }),
    );
    report.workers = args.workers;
    report.curve = args.curve.name().to_string();
    report.wall_seconds = wall;
    report.throughput = 2.0 * m as f64 * n as f64 * k as f64 / wall.max(1e-9);
    report.schedule = Some(schedule);

    if args.verify {
        let want = naive_matmul(&a, &b)?;
        let err = max_relative_error(&c, &want);
        if err > 1e-12 {
            return Err(Error::VerifyFailed(format!(
                "matmul relative error {err:e} exceeds 1e-12"
            )));
        }
        report.verification = Verification::VerifiedTolerance("1e-12".into());
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct CachesimArgs {
    pub patterns: Vec<String>,
    pub orders: Vec<SimOrder>,
    pub capacities: Vec<usize>,
    pub line: u64,
    pub n: usize,
    pub dim: usize,
    pub k: usize,
    pub block_points: usize,
    /// Square matmul side for the matmul pattern.
    pub msize: usize,
    pub tile: usize,
    pub out: Option<PathBuf>,
}

pub fn run_cachesim(args: &CachesimArgs) -> Result<RunReport> {
    let selfjoin = SelfJoinPattern {
        n_points: args.n,
        dim: args.dim,
        block_points: args.block_points,
    };
    let matmul = MatmulPattern {
        m: args.msize,
        n: args.msize,
        p: args.msize,
        tile: args.tile,
    };
    let kmeans = KMeansPattern {
        n_points: args.n,
        dim: args.dim,
        k: args.k,
        block_points: args.block_points,
    };
    let mut patterns: Vec<&dyn crate::cache::AccessPattern> = Vec::new();
    for name in &args.patterns {
        match name.as_str() {
            "selfjoin" => patterns.push(&selfjoin),
            "matmul" => patterns.push(&matmul),
            "kmeans" => patterns.push(&kmeans),
            other => return Err(Error::Spec(format!("unknown pattern: {other}"))),
        }
    }
    let configs: Vec<CacheConfig> = args
        .capacities
        .iter()
        .map(|&c| CacheConfig::new(c, args.line))
        .collect::<Result<_>>()?;

    let t0 = Instant::now();
    let rows = compare_orders(&patterns, &args.orders, &configs)?;
    let wall = t0.elapsed().as_secs_f64();
    let accesses: u64 = rows.iter().map(|r| r.accesses).sum();

    if let Some(out) = &args.out {
        write_report_csv(out, &rows)?;
    } else {
        println!("curve,pattern,capacity,line,accesses,misses");
        for r in &rows {
            println!(
                "{},{},{},{},{},{}",
                r.curve, r.pattern, r.capacity, r.line, r.accesses, r.misses
            );
        }
    }

    let mut report = RunReport::new(
        "cachesim",
        json!({
            "patterns": args.patterns,
            "orders": args.orders.iter().map(|o| o.name()).collect::<Vec<_>>(),
            "capacities": args.capacities,
            "line": args.line,
            "rows": rows.len(),
        }),
    );
    report.wall_seconds = wall;
    report.throughput = accesses as f64 / wall.max(1e-9);
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct ScheduleArgs {
    pub bounds: Vec<u64>,
    pub shape: DomainShape,
    pub curve: CurveFamily,
    pub monotone_dims: Vec<usize>,
    pub workers: usize,
    pub block_bits: u32,
    pub steal: bool,
    /// "unit" or "index": per-tuple virtual cost model.
    pub cost: String,
}

/// Virtual-time schedule report for a domain traversal (no wall clocks).
pub fn run_schedule(args: &ScheduleArgs) -> Result<RunReport> {
    let domain = LoopDomain::new(&args.bounds, args.shape)?;
    let spec = curve_spec(args.curve, domain.dim())?.with_monotone_dims(&args.monotone_dims)?;
    type CostFn = Box<dyn Fn(u64, &[u64]) -> u64>;
    let cost_fn: CostFn = match args.cost.as_str() {
        "unit" => Box::new(|_, _| 1u64),
        "index" => Box::new(|order, _| order),
        other => return Err(Error::Spec(format!("unknown cost model: {other}"))),
    };
    let schedule = engine::simulate_schedule(
        &domain,
        &spec,
        args.workers,
        args.block_bits,
        args.steal,
        &*cost_fn,
    )?;
    let mut report = RunReport::new(
        "schedule",
        json!({
            "bounds": args.bounds,
            "shape": format!("{:?}", args.shape),
            "monotone_dims": args.monotone_dims,
            "block_bits": args.block_bits,
            "steal": args.steal,
            "cost": args.cost,
            "domain_size": domain.size(),
        }),
    );
    report.workers = args.workers;
    report.curve = args.curve.name().to_string();
    report.schedule = Some(schedule);
    Ok(report)
}
