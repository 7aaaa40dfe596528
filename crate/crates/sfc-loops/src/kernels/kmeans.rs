//! Lloyd k-means with block-parallel assignment.
//!
//! The assignment step traverses the (point-block × centroid-block) FULL
//! domain through the loop engine; each worker keeps a per-point running
//! (best distance, best id) table and tables merge elementwise with the
//! fixed tie rule (smaller distance wins, equal distance → lowest centroid
//! id), so assignments are schedule-independent. The update step is a
//! sequential per-cluster mean in ascending point order; empty clusters
//! keep their previous centroid.

use super::points::PointSet;
use crate::curve::CurveSpec;
use crate::data::SplitMix64;
use crate::engine::{self, LoopDomain, Visitor};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct KMeansParams {
    pub k: usize,
    pub max_iters: u32,
    /// Stop when no centroid moved farther than this (Euclidean).
    pub tol: f64,
    pub seed: u64,
    pub workers: usize,
    /// log2 of points per block in the assignment traversal.
    pub block_bits: u32,
}

impl Default for KMeansParams {
    fn default() -> Self {
        KMeansParams {
            k: 2,
            max_iters: 50,
            tol: 0.0,
            seed: 0,
            workers: 1,
            block_bits: engine::DEFAULT_BLOCK_BITS,
        }
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct KMeansModel {
    /// k × dim, row-major.
    pub centroids: Vec<f64>,
    pub k: usize,
    pub dim: usize,
    pub assignments: Vec<u32>,
    /// Sum of squared distances to the assigned centroid, from the final
    /// assignment step.
    pub inertia: f64,
    pub iterations: u32,
}

/// Per-iteration assignment and inertia trace, for oracle comparison.
#[derive(Clone, Debug, Default)]
pub struct KMeansTrace {
    pub assignments: Vec<Vec<u32>>,
    pub inertias: Vec<f64>,
    /// Schedule of the final assignment pass (engine runs only).
    pub last_schedule: Option<engine::ScheduleReport>,
}

/// Initial centroids: k distinct points chosen by the seeded generator.
/// Shared input for both the engine kernel and the reference oracle.
pub fn init_centroids(points: &PointSet, k: usize, seed: u64) -> Vec<f64> {
    let mut rng = SplitMix64::new(seed);
    let ids = rng.sample_distinct(points.n(), k);
    let mut out = Vec::with_capacity(k * points.dim());
    for id in ids {
        out.extend_from_slice(points.row(id));
    }
    out
}

struct AssignVisitor<'a> {
    points: &'a PointSet,
    centroids: &'a [f64],
    k: usize,
    bs: usize,
}

impl AssignVisitor<'_> {
    fn blocks_of(&self, count: usize) -> u64 {
        count.div_ceil(self.bs).max(1) as u64
    }
}

impl Visitor for AssignVisitor<'_> {
    /// (best squared distance, best centroid id) per point.
    type Acc = Vec<(f64, u32)>;

    fn init(&self) -> Self::Acc {
        vec![(f64::INFINITY, u32::MAX); self.points.n()]
    }

    fn visit(&self, tuple: &[u64], acc: &mut Self::Acc) -> Result<()> {
        let dim = self.points.dim();
        let p0 = tuple[0] as usize * self.bs;
        let p1 = (p0 + self.bs).min(self.points.n());
        let c0 = tuple[1] as usize * self.bs;
        let c1 = (c0 + self.bs).min(self.k);
        for (p, best) in acc[p0..p1].iter_mut().enumerate().map(|(i, b)| (p0 + i, b)) {
            let row = self.points.row(p);
            for c in c0..c1 {
                let cent = &self.centroids[c * dim..(c + 1) * dim];
                let dsq = super::points::dist_sq(row, cent);
                if dsq < best.0 || (dsq == best.0 && (c as u32) < best.1) {
                    *best = (dsq, c as u32);
                }
            }
        }
        Ok(())
    }

    fn merge(&self, mut left: Self::Acc, right: Self::Acc) -> Self::Acc {
        for (l, r) in left.iter_mut().zip(right) {
            if r.0 < l.0 || (r.0 == l.0 && r.1 < l.1) {
                *l = r;
            }
        }
        left
    }
}

fn assign(
    points: &PointSet,
    centroids: &[f64],
    k: usize,
    spec: &CurveSpec,
    params: &KMeansParams,
) -> Result<(Vec<u32>, f64, engine::ScheduleReport)> {
    let visitor = AssignVisitor {
        points,
        centroids,
        k,
        bs: 1usize << params.block_bits,
    };
    let domain = LoopDomain::full(&[
        visitor.blocks_of(points.n()),
        visitor.blocks_of(k),
    ])?;
    let (table, report) =
        engine::parallel_execute(&domain, spec, &visitor, params.workers, 0)?;
    let mut inertia = 0.0;
    let mut assignments = Vec::with_capacity(points.n());
    for (dsq, id) in table {
        inertia += dsq;
        assignments.push(id);
    }
    Ok((assignments, inertia, report))
}

/// Per-cluster means in ascending point order; empty clusters keep the
/// previous centroid. Returns (new centroids, max displacement).
fn update_centroids(
    points: &PointSet,
    assignments: &[u32],
    old: &[f64],
    k: usize,
) -> (Vec<f64>, f64) {
    let dim = points.dim();
    let mut sums = vec![0.0f64; k * dim];
    let mut counts = vec![0u64; k];
    for (p, &a) in assignments.iter().enumerate() {
        let c = a as usize;
        counts[c] += 1;
        let row = points.row(p);
        for (t, &x) in row.iter().enumerate() {
            sums[c * dim + t] += x;
        }
    }
    let mut max_disp = 0.0f64;
    for c in 0..k {
        if counts[c] == 0 {
            sums[c * dim..(c + 1) * dim].copy_from_slice(&old[c * dim..(c + 1) * dim]);
            continue;
        }
        let mut disp_sq = 0.0;
        for t in 0..dim {
            sums[c * dim + t] /= counts[c] as f64;
            let d = sums[c * dim + t] - old[c * dim + t];
            disp_sq += d * d;
        }
        max_disp = max_disp.max(disp_sq.sqrt());
    }
    (sums, max_disp)
}

/// Lloyd iterations through the loop engine, with a per-iteration trace.
pub fn kmeans_traced(
    points: &PointSet,
    spec: &CurveSpec,
    params: &KMeansParams,
) -> Result<(KMeansModel, KMeansTrace)> {
    let k = params.k;
    if k == 0 || k > points.n() {
        return Err(Error::Contract(format!(
            "k must satisfy 1 <= k <= n ({} points), got {k}",
            points.n()
        )));
    }
    if params.tol < 0.0 {
        return Err(Error::Contract("tol must be >= 0".into()));
    }
    if params.workers == 0 {
        return Err(Error::Contract("workers must be >= 1".into()));
    }
    let mut centroids = init_centroids(points, k, params.seed);
    let mut trace = KMeansTrace::default();
    let mut assignments = Vec::new();
    let mut inertia = 0.0;
    let mut iterations = 0;
    for _ in 0..params.max_iters.max(1) {
        let (a, i, report) = assign(points, &centroids, k, spec, params)?;
        assignments = a;
        inertia = i;
        trace.last_schedule = Some(report);
        iterations += 1;
        trace.assignments.push(assignments.clone());
        trace.inertias.push(inertia);
        let (next, disp) = update_centroids(points, &assignments, &centroids, k);
        centroids = next;
        if disp <= params.tol {
            break;
        }
    }
    Ok((
        KMeansModel {
            centroids,
            k,
            dim: points.dim(),
            assignments,
            inertia,
            iterations,
        },
        trace,
    ))
}

pub fn kmeans(points: &PointSet, spec: &CurveSpec, params: &KMeansParams) -> Result<KMeansModel> {
    kmeans_traced(points, spec, params).map(|(m, _)| m)
}

/// Reference oracle: plain single-loop Lloyd with the same seeded
/// initialization and tie rule, no engine involvement.
pub fn reference_kmeans(
    points: &PointSet,
    params: &KMeansParams,
) -> Result<(KMeansModel, KMeansTrace)> {
    let k = params.k;
    if k == 0 || k > points.n() {
        return Err(Error::Contract(format!(
            "k must satisfy 1 <= k <= n ({} points), got {k}",
            points.n()
        )));
    }
    let dim = points.dim();
    let mut centroids = init_centroids(points, k, params.seed);
    let mut trace = KMeansTrace::default();
    let mut assignments = vec![0u32; points.n()];
    let mut inertia = 0.0;
    let mut iterations = 0;
    for _ in 0..params.max_iters.max(1) {
        inertia = 0.0;
        for (p, slot) in assignments.iter_mut().enumerate() {
            let row = points.row(p);
            let mut best = (f64::INFINITY, u32::MAX);
            for c in 0..k {
                let dsq = super::points::dist_sq(row, &centroids[c * dim..(c + 1) * dim]);
                if dsq < best.0 || (dsq == best.0 && (c as u32) < best.1) {
                    best = (dsq, c as u32);
                }
            }
            *slot = best.1;
            inertia += best.0;
        }
        iterations += 1;
        trace.assignments.push(assignments.clone());
        trace.inertias.push(inertia);
        let (next, disp) = update_centroids(points, &assignments, &centroids, k);
        centroids = next;
        if disp <= params.tol {
            break;
        }
    }
    Ok((
        KMeansModel {
            centroids,
            k,
            dim,
            assignments,
            inertia,
            iterations,
        },
        trace,
    ))
}
