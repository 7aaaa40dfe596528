//! `sfc-loops` — benchmark and verification harness for curve-ordered
//! parallel loops and their kernels.
//!
//! Every command prints one JSON report line on stdout. Exit codes:
//! 0 success/verified, 1 verification or runtime failure, 2 usage or
//! input parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sfc_loops::cache::SimOrder;
use sfc_loops::curve::CurveFamily;
use sfc_loops::engine::{DomainShape, DEFAULT_BLOCK_BITS};
use sfc_loops::error::Error;
use sfc_loops::harness;

#[derive(Parser)]
#[command(
    name = "sfc-loops",
    about = "Cache-oblivious parallel loops over space-filling curves: \
             data generators, join/k-means/matmul kernels with oracle \
             verification, an LRU locality simulator and schedule reports",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonExec {
    /// Curve family for the traversal order: hilbert | zorder | peano.
    #[arg(long, default_value = "hilbert", value_parser = parse_curve)]
    curve: CurveFamily,
    /// Worker threads (defaults to SFC_LOOPS_WORKERS or 1).
    #[arg(long, env = "SFC_LOOPS_WORKERS", default_value_t = 1)]
    workers: usize,
    /// log2 of the scheduling/point-block granularity.
    #[arg(long, default_value_t = DEFAULT_BLOCK_BITS)]
    block_bits: u32,
}

fn parse_curve(s: &str) -> Result<CurveFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_order(s: &str) -> Result<SimOrder, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic dataset CSV.
    Gen {
        /// uniform | gmix | signal
        #[arg(long, default_value = "uniform")]
        generator: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Write a header row.
        #[arg(long, default_value_t = false)]
        header: bool,
        /// gmix: number of mixture components.
        #[arg(long, default_value_t = 4)]
        clusters: usize,
        /// gmix: per-coordinate standard deviation.
        #[arg(long, default_value_t = 0.05)]
        sigma: f64,
        /// signal: sinusoid periods in samples, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "16")]
        periods: Vec<u64>,
        /// signal: gaussian noise level.
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        /// signal: window stride in samples.
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// ε-similarity join over a CSV of points.
    Join {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        eps: f64,
        #[command(flatten)]
        exec: CommonExec,
        /// Check the result against the naive O(n^2) oracle.
        #[arg(long, default_value_t = false)]
        verify: bool,
        /// Super-EGO style descending-variance dimension reordering.
        #[arg(long, default_value_t = false)]
        reorder_dims: bool,
        /// Write pairs as "i,j,dist" sorted by (i,j).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lloyd k-means over a CSV of points.
    Kmeans {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 50)]
        iters: u32,
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        exec: CommonExec,
        /// Check per-iteration assignments against naive Lloyd.
        #[arg(long, default_value_t = false)]
        verify: bool,
        /// Write the model (centroids, assignments, inertia) as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Blocked matrix multiplication on seeded random matrices.
    Matmul {
        /// Sizes as MxKxN (A is MxK, B is KxN) or a single N for square.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        exec: CommonExec,
        /// log2 of the square tile side.
        #[arg(long, default_value_t = 5)]
        tile_bits: u32,
        /// Check max relative error vs the naive triple loop (<= 1e-12).
        #[arg(long, default_value_t = false)]
        verify: bool,
    },
    /// LRU miss-count comparison of traversal orders.
    Cachesim {
        /// selfjoin | matmul | kmeans (comma separated).
        #[arg(long, value_delimiter = ',', default_value = "selfjoin")]
        patterns: Vec<String>,
        /// hilbert | zorder | peano | rowmajor (comma separated).
        #[arg(long, value_delimiter = ',', default_value = "hilbert,zorder,rowmajor", value_parser = parse_order)]
        curves: Vec<SimOrder>,
        /// Cache capacities in lines (comma separated).
        #[arg(long, value_delimiter = ',', default_value = "64")]
        capacities: Vec<usize>,
        /// Line size in elements (power of two).
        #[arg(long, default_value_t = 64)]
        line: u64,
        #[arg(long, default_value_t = 4096)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        d: usize,
        #[arg(long, default_value_t = 8)]
        k: usize,
        /// Points per block in the selfjoin/kmeans patterns.
        #[arg(long, default_value_t = 64)]
        block_points: usize,
        /// Square matrix side for the matmul pattern.
        #[arg(long, default_value_t = 256)]
        msize: usize,
        /// Tile side for the matmul pattern.
        #[arg(long, default_value_t = 32)]
        tile: usize,
        /// Write the CSV report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Virtual-time schedule report for a shaped domain traversal.
    Schedule {
        /// Loop bounds, e.g. 64x64 or 16x16x16.
        #[arg(long)]
        bounds: String,
        /// full | tri | band:<b>
        #[arg(long, default_value = "full")]
        shape: String,
        #[command(flatten)]
        exec: CommonExec,
        /// Dimensions forced nondecreasing, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "")]
        monotone_dims: Vec<String>,
        /// Disable work stealing (static split baseline).
        #[arg(long = "no-steal", default_value_t = false)]
        no_steal: bool,
        /// Per-tuple virtual cost: unit | index.
        #[arg(long, default_value = "unit")]
        cost: String,
    },
    /// Run a JSON benchmark suite; one JSON line per run.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        /// Write JSON lines here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_sizes(s: &str) -> Result<(usize, usize, usize), Error> {
    let parts: Vec<&str> = s.split('x').collect();
    let parse = |p: &str| {
        p.trim()
            .parse::<usize>()
            .map_err(|_| Error::Spec(format!("bad size component {p:?} in {s:?}")))
    };
    match parts.as_slice() {
        [m, k, n] => Ok((parse(m)?, parse(k)?, parse(n)?)),
        [n] => {
            let n = parse(n)?;
            Ok((n, n, n))
        }
        _ => Err(Error::Spec(format!("sizes must be MxKxN or N, got {s:?}"))),
    }
}

fn parse_bounds(s: &str) -> Result<Vec<u64>, Error> {
    s.split('x')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::Spec(format!("bad bound {p:?} in {s:?}")))
        })
        .collect()
}

fn parse_shape(s: &str) -> Result<DomainShape, Error> {
    match s {
        "full" => Ok(DomainShape::Full),
        "tri" | "triangular" => Ok(DomainShape::Triangular),
        other => match other.strip_prefix("band:") {
            Some(b) => b
                .parse::<u64>()
                .map(DomainShape::Band)
                .map_err(|_| Error::Spec(format!("bad band width in {s:?}"))),
            None => Err(Error::Spec(format!(
                "shape must be full, tri or band:<b>, got {s:?}"
            ))),
        },
    }
}

fn parse_dims(raw: &[String]) -> Result<Vec<usize>, Error> {
    let mut dims = Vec::new();
    for part in raw {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        dims.push(
            part.parse::<usize>()
                .map_err(|_| Error::Spec(format!("bad monotone dimension {part:?}")))?,
        );
    }
    Ok(dims)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Gen {
            generator,
            n,
            d,
            seed,
            out,
            header,
            clusters,
            sigma,
            periods,
            noise,
            stride,
        } => {
            let report = harness::run_gen(&harness::GenArgs {
                generator,
                n,
                dim: d,
                seed,
                out,
                header,
                clusters,
                sigma,
                periods,
                noise,
                stride,
            })?;
            println!("{}", report.to_json());
        }
        Command::Join {
            input,
            eps,
            exec,
            verify,
            reorder_dims,
            out,
        } => {
            let report = harness::run_join(&harness::JoinArgs {
                input,
                eps,
                curve: exec.curve,
                workers: exec.workers,
                block_bits: exec.block_bits,
                verify,
                reorder_dims,
                out,
            })?;
            println!("{}", report.to_json());
        }
        Command::Kmeans {
            input,
            k,
            iters,
            tol,
            seed,
            exec,
            verify,
            out,
        } => {
            let report = harness::run_kmeans(&harness::KmeansArgs {
                input,
                k,
                iters,
                tol,
                seed,
                curve: exec.curve,
                workers: exec.workers,
                block_bits: exec.block_bits,
                verify,
                out,
            })?;
            println!("{}", report.to_json());
        }
        Command::Matmul {
            sizes,
            seed,
            exec,
            tile_bits,
            verify,
        } => {
            let report = harness::run_matmul(&harness::MatmulArgs {
                sizes: parse_sizes(&sizes)?,
                seed,
                curve: exec.curve,
                workers: exec.workers,
                tile_bits,
                verify,
            })?;
            println!("{}", report.to_json());
        }
        Command::Cachesim {
            patterns,
            curves,
            capacities,
            line,
            n,
            d,
            k,
            block_points,
            msize,
            tile,
            out,
        } => {
            let report = harness::run_cachesim(&harness::CachesimArgs {
                patterns,
                orders: curves,
                capacities,
                line,
                n,
                dim: d,
                k,
                block_points,
                msize,
                tile,
                out,
            })?;
            println!("{}", report.to_json());
        }
        Command::Schedule {
            bounds,
            shape,
            exec,
            monotone_dims,
            no_steal,
            cost,
        } => {
            let report = harness::run_schedule(&harness::ScheduleArgs {
                bounds: parse_bounds(&bounds)?,
                shape: parse_shape(&shape)?,
                curve: exec.curve,
                monotone_dims: parse_dims(&monotone_dims)?,
                workers: exec.workers,
                block_bits: exec.block_bits,
                steal: !no_steal,
                cost,
            })?;
            println!("{}", report.to_json());
        }
        Command::Bench { suite, out } => {
            let lines = harness::run_bench(&suite)?;
            let mut payload = String::new();
            for line in &lines {
                payload.push_str(&serde_json::to_string(line).expect("line serializes"));
                payload.push('\n');
            }
            match out {
                Some(path) => std::fs::write(&path, payload).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    source: e,
                })?,
                None => print!("{payload}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::Spec(_) => ExitCode::from(2),
                Error::VerifyFailed(_) => ExitCode::from(1),
                _ => ExitCode::from(1),
            }
        }
    }
}
