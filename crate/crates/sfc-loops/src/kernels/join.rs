//! ε-similarity join: all pairs within Euclidean distance ε (inclusive).
//!
//! Points are sorted into epsilon grid order and split into blocks of
//! 2^block_bits consecutive points. Cross-block pairs traverse the strict
//! upper-triangular block-pair domain in curve order through the loop
//! engine; same-block pairs traverse the diagonal. A block pair whose cell
//! ranges are more than one cell apart in any dimension cannot contain a
//! qualifying pair and is skipped. The inner kernel sweeps dimension-major
//! block buffers, so distances accumulate in ascending dimension order —
//! the exact summation order of the naive oracle.

use super::ego::{self, cell};
use super::points::{dist_sq, PointSet};
use crate::curve::CurveSpec;
use crate::engine::{self, DomainShape, LoopDomain, Visitor};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct JoinParams {
    pub workers: usize,
    /// log2 of points per block.
    pub block_bits: u32,
    /// Super-EGO style descending-variance dimension reordering of the
    /// sort key and prune metadata (distances always accumulate in natural
    /// dimension order). Off by default.
    pub reorder_dims: bool,
}

impl Default for JoinParams {
    fn default() -> Self {
        JoinParams {
            workers: 1,
            block_bits: engine::DEFAULT_BLOCK_BITS,
            reorder_dims: false,
        }
    }
}

/// Set of qualifying pairs, ids normalized to i < j, with distances.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct JoinResult {
    pub pairs: Vec<(u32, u32)>,
    pub distances: Option<Vec<f64>>,
}

impl JoinResult {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Sort by (i, j), keeping distances aligned.
    pub fn sort(&mut self) {
        match self.distances.take() {
            None => self.pairs.sort_unstable(),
            Some(d) => {
                let mut rows: Vec<((u32, u32), f64)> =
                    self.pairs.iter().copied().zip(d).collect();
                rows.sort_unstable_by_key(|r| r.0);
                self.pairs = rows.iter().map(|r| r.0).collect();
                self.distances = Some(rows.into_iter().map(|r| r.1).collect());
            }
        }
    }

    /// Sorted pair set, for equality checks.
    pub fn sorted_pairs(&self) -> Vec<(u32, u32)> {
        let mut p = self.pairs.clone();
        p.sort_unstable();
        p
    }
}

/// Block metadata and dimension-major buffers over the sorted points.
struct Blocks {
    bs: usize,
    nb: usize,
    dim: usize,
    n: usize,
    /// Dimension-major within each block: coordinate t of local point q in
    /// block b sits at `start(b)*dim + t*len(b) + q`.
    buf: Vec<f64>,
    /// Per block, per (possibly reordered) dimension: min and max cell.
    min_cell: Vec<i64>,
    max_cell: Vec<i64>,
    /// Sorted position -> original point id.
    orig: Vec<u32>,
}

impl Blocks {
    fn start(&self, b: usize) -> usize {
        b * self.bs
    }

    fn len(&self, b: usize) -> usize {
        (self.n - self.start(b)).min(self.bs)
    }

    fn dim_row(&self, b: usize, t: usize) -> &[f64] {
        let s = self.start(b);
        let l = self.len(b);
        let base = s * self.dim + t * l;
        &self.buf[base..base + l]
    }

    /// True when no pair across blocks `bi`, `bj` can satisfy the
    /// threshold: some dimension's cell ranges are more than one cell
    /// apart, so coordinates differ by more than ε there.
    fn non_joinable(&self, bi: usize, bj: usize) -> bool {
        let (mi, ma) = (&self.min_cell, &self.max_cell);
        for t in 0..self.dim {
            let a = bi * self.dim + t;
            let b = bj * self.dim + t;
            if mi[b] - ma[a] > 1 || mi[a] - ma[b] > 1 {
                return true;
            }
        }
        false
    }

    fn build(points: &PointSet, eps: f64, block_bits: u32, dim_order: &[usize]) -> Blocks {
        let (n, dim) = (points.n(), points.dim());
        let bs = 1usize << block_bits;
        let nb = n.div_ceil(bs);
        let mut buf = vec![0.0f64; n * dim];
        let mut min_cell = vec![i64::MAX; nb * dim];
        let mut max_cell = vec![i64::MIN; nb * dim];
        for b in 0..nb {
            let s = b * bs;
            let l = (n - s).min(bs);
            for q in 0..l {
                let row = points.row(s + q);
                for (t, &x) in row.iter().enumerate() {
                    buf[s * dim + t * l + q] = x;
                }
                for (t, &axis) in dim_order.iter().enumerate() {
                    let c = cell(row[axis], eps);
                    let slot = b * dim + t;
                    min_cell[slot] = min_cell[slot].min(c);
                    max_cell[slot] = max_cell[slot].max(c);
                }
            }
        }
        Blocks {
            bs,
            nb,
            dim,
            n,
            buf,
            min_cell,
            max_cell,
            orig: Vec::new(),
        }
    }
}

struct PairAcc {
    pairs: Vec<(u32, u32)>,
    dists: Vec<f64>,
    scratch: Vec<f64>,
}

/// Emit all qualifying (a, q) pairs between block `bi` and the local range
/// `[q0, len_j)` of block `bj` (bi == bj with q0 = a+1 handles intra-block
/// pairs without duplicates).
fn sweep_blocks(
    blocks: &Blocks,
    eps_sq: f64,
    bi: usize,
    bj: usize,
    intra: bool,
    acc: &mut PairAcc,
) {
    let len_i = blocks.len(bi);
    let len_j = blocks.len(bj);
    let dim = blocks.dim;
    for a in 0..len_i {
        let q0 = if intra { a + 1 } else { 0 };
        if q0 >= len_j {
            continue;
        }
        let span = len_j - q0;
        acc.scratch.clear();
        acc.scratch.resize(span, 0.0);
        for t in 0..dim {
            let xa = blocks.dim_row(bi, t)[a];
            let row = &blocks.dim_row(bj, t)[q0..];
            for (s, &xq) in acc.scratch.iter_mut().zip(row) {
                let d = xa - xq;
                *s += d * d;
            }
        }
        let ga = blocks.start(bi) + a;
        for (off, &dsq) in acc.scratch.iter().enumerate() {
            if dsq <= eps_sq {
                let gq = blocks.start(bj) + q0 + off;
                let (mut i, mut j) = (blocks.orig[ga], blocks.orig[gq]);
                if i > j {
                    std::mem::swap(&mut i, &mut j);
                }
                acc.pairs.push((i, j));
                acc.dists.push(dsq.sqrt());
            }
        }
    }
}

struct CrossVisitor<'a> {
    blocks: &'a Blocks,
    eps_sq: f64,
}

impl Visitor for CrossVisitor<'_> {
    type Acc = PairAcc;

    fn init(&self) -> PairAcc {
        PairAcc {
            pairs: Vec::new(),
            dists: Vec::new(),
            scratch: Vec::new(),
        }
    }

    fn visit(&self, tuple: &[u64], acc: &mut PairAcc) -> Result<()> {
        let (bi, bj) = (tuple[0] as usize, tuple[1] as usize);
        if bi == bj {
            sweep_blocks(self.blocks, self.eps_sq, bi, bj, true, acc);
        } else if !self.blocks.non_joinable(bi, bj) {
            sweep_blocks(self.blocks, self.eps_sq, bi, bj, false, acc);
        }
        Ok(())
    }

    fn merge(&self, mut left: PairAcc, mut right: PairAcc) -> PairAcc {
        left.pairs.append(&mut right.pairs);
        left.dists.append(&mut right.dists);
        left
    }
}

/// Exact ε-join over the blocked, curve-ordered block-pair domain.
pub fn epsilon_join(
    points: &PointSet,
    eps: f64,
    spec: &CurveSpec,
    params: &JoinParams,
) -> Result<JoinResult> {
    epsilon_join_reported(points, eps, spec, params).map(|(r, _)| r)
}

/// [`epsilon_join`] plus the schedule report of the cross-block pass.
pub fn epsilon_join_reported(
    points: &PointSet,
    eps: f64,
    spec: &CurveSpec,
    params: &JoinParams,
) -> Result<(JoinResult, Option<engine::ScheduleReport>)> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::Contract(format!("epsilon must be > 0, got {eps}")));
    }
    if params.workers == 0 {
        return Err(Error::Contract("workers must be >= 1".into()));
    }
    if points.n() < 2 {
        return Ok((
            JoinResult {
                pairs: Vec::new(),
                distances: Some(Vec::new()),
            },
            None,
        ));
    }
    let dim = points.dim();
    let dim_order: Vec<usize> = if params.reorder_dims {
        descending_variance_order(points)
    } else {
        (0..dim).collect()
    };

    // sort ids by the (possibly dimension-reordered) epsilon grid order
    let order = if params.reorder_dims {
        reordered_ego(points, eps, &dim_order)?
    } else {
        ego::ego_order(points, eps)?
    };
    let sorted_rows: Vec<Vec<f64>> = order
        .perm
        .iter()
        .map(|&id| points.row(id as usize).to_vec())
        .collect();
    let sorted = PointSet::from_rows(&sorted_rows)?;
    let mut blocks = Blocks::build(&sorted, eps, params.block_bits, &dim_order);
    blocks.orig = order.perm.clone();

    let eps_sq = eps * eps;
    let nb = blocks.nb as u64;
    let visitor = CrossVisitor {
        blocks: &blocks,
        eps_sq,
    };

    // diagonal first, then the strict upper triangle; scheduling
    // granularity is one block pair (each carries a full sweep)
    let diag = LoopDomain::new(&[nb, nb], DomainShape::Band(0))?;
    let (mut acc, mut report) =
        engine::parallel_execute(&diag, spec, &visitor, params.workers, 0)?;
    if nb > 1 {
        let cross = LoopDomain::new(&[nb, nb], DomainShape::Triangular)?;
        let (cacc, creport) =
            engine::parallel_execute(&cross, spec, &visitor, params.workers, 0)?;
        acc = visitor.merge(acc, cacc);
        report = creport;
    }
    Ok((
        JoinResult {
            pairs: acc.pairs,
            distances: Some(acc.dists),
        },
        Some(report),
    ))
}

/// Reference oracle: double loop with the inclusive threshold.
pub fn naive_join(points: &PointSet, eps: f64) -> Result<JoinResult> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::Contract(format!("epsilon must be > 0, got {eps}")));
    }
    let eps_sq = eps * eps;
    let mut pairs = Vec::new();
    let mut dists = Vec::new();
    for i in 0..points.n() {
        for j in (i + 1)..points.n() {
            let dsq = dist_sq(points.row(i), points.row(j));
            if dsq <= eps_sq {
                pairs.push((i as u32, j as u32));
                dists.push(dsq.sqrt());
            }
        }
    }
    Ok(JoinResult {
        pairs,
        distances: Some(dists),
    })
}

/// Dimensions ordered by descending sample variance (stable on ties).
fn descending_variance_order(points: &PointSet) -> Vec<usize> {
    let (n, dim) = (points.n(), points.dim());
    let mut mean = vec![0.0f64; dim];
    for i in 0..n {
        for (t, &x) in points.row(i).iter().enumerate() {
            mean[t] += x;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut var = vec![0.0f64; dim];
    for i in 0..n {
        for (t, &x) in points.row(i).iter().enumerate() {
            let d = x - mean[t];
            var[t] += d * d;
        }
    }
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| var[b].partial_cmp(&var[a]).unwrap_or(std::cmp::Ordering::Equal));
    order
}

/// Epsilon grid order comparing cells along a dimension permutation.
fn reordered_ego(points: &PointSet, eps: f64, dim_order: &[usize]) -> Result<ego::EgoOrder> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::Contract(format!("epsilon must be > 0, got {eps}")));
    }
    let n = points.n();
    let mut cells: Vec<i64> = Vec::with_capacity(n * dim_order.len());
    for i in 0..n {
        let row = points.row(i);
        for &axis in dim_order {
            cells.push(cell(row[axis], eps));
        }
    }
    let d = dim_order.len();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.sort_by(|&a, &b| {
        cells[a as usize * d..(a as usize + 1) * d].cmp(&cells[b as usize * d..(b as usize + 1) * d])
    });
    Ok(ego::EgoOrder { eps, perm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveFamily;
    use crate::data::SplitMix64;

    fn spec2() -> CurveSpec {
        CurveSpec::new(CurveFamily::Hilbert, 2, 1).unwrap()
    }

    #[test]
    fn one_close_pair() {
        let p = PointSet::from_rows(&[
            vec![0.0, 0.0],
            vec![0.0, 0.5],
            vec![10.0, 10.0],
        ])
        .unwrap();
        let res = epsilon_join(&p, 1.0, &spec2(), &JoinParams::default()).unwrap();
        assert_eq!(res.sorted_pairs(), vec![(0, 1)]);
        let naive = naive_join(&p, 1.0).unwrap();
        assert_eq!(naive.sorted_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn identical_points_all_pairs() {
        let p = PointSet::from_rows(&vec![vec![1.0, 2.0]; 4]).unwrap();
        let res = epsilon_join(&p, 0.5, &spec2(), &JoinParams::default()).unwrap();
        assert_eq!(res.len(), 6);
        assert_eq!(naive_join(&p, 0.5).unwrap().len(), 6);
    }

    #[test]
    fn matches_oracle_small_random() {
        let mut rng = SplitMix64::new(5);
        for (n, dim, eps) in [(120usize, 2usize, 0.15), (200, 4, 0.5), (90, 8, 0.9)] {
            let values: Vec<f64> = (0..n * dim).map(|_| rng.next_f64()).collect();
            let p = PointSet::new(n, dim, values).unwrap();
            let naive = naive_join(&p, eps).unwrap();
            for workers in [1usize, 4] {
                let params = JoinParams {
                    workers,
                    block_bits: 4,
                    reorder_dims: false,
                };
                let res = epsilon_join(&p, eps, &spec2(), &params).unwrap();
                assert_eq!(
                    res.sorted_pairs(),
                    naive.sorted_pairs(),
                    "n={n} d={dim} eps={eps} workers={workers}"
                );
            }
        }
    }

    #[test]
    fn reorder_dims_keeps_result() {
        let mut rng = SplitMix64::new(11);
        let n = 150;
        let dim = 6;
        // one high-variance dimension to make the reorder nontrivial
        let values: Vec<f64> = (0..n * dim)
            .map(|i| {
                if i % dim == 3 {
                    rng.next_f64() * 10.0
                } else {
                    rng.next_f64()
                }
            })
            .collect();
        let p = PointSet::new(n, dim, values).unwrap();
        let naive = naive_join(&p, 1.2).unwrap();
        let params = JoinParams {
            workers: 2,
            block_bits: 4,
            reorder_dims: true,
        };
        let res = epsilon_join(&p, 1.2, &spec2(), &params).unwrap();
        assert_eq!(res.sorted_pairs(), naive.sorted_pairs());
    }

    #[test]
    fn scale_invariance_binary_factor() {
        let mut rng = SplitMix64::new(21);
        let n = 100;
        let values: Vec<f64> = (0..n * 3).map(|_| rng.next_f64()).collect();
        let p = PointSet::new(n, 3, values.clone()).unwrap();
        let scaled =
            PointSet::new(n, 3, values.iter().map(|v| v * 2.0).collect()).unwrap();
        let a = epsilon_join(&p, 0.4, &spec2(), &JoinParams::default()).unwrap();
        let b = epsilon_join(&scaled, 0.8, &spec2(), &JoinParams::default()).unwrap();
        assert_eq!(a.sorted_pairs(), b.sorted_pairs());
    }

    #[test]
    fn pruned_block_pairs_contain_no_qualifying_pair() {
        let mut rng = SplitMix64::new(31);
        let n = 160;
        let eps = 0.2;
        let values: Vec<f64> = (0..n * 2).map(|_| rng.next_f64() * 3.0).collect();
        let p = PointSet::new(n, 2, values).unwrap();
        let order = ego::ego_order(&p, eps).unwrap();
        let rows: Vec<Vec<f64>> = order
            .perm
            .iter()
            .map(|&id| p.row(id as usize).to_vec())
            .collect();
        let sorted = PointSet::from_rows(&rows).unwrap();
        let dim_order = [0usize, 1];
        let blocks = Blocks::build(&sorted, eps, 4, &dim_order);
        let eps_sq = eps * eps;
        let mut pruned = 0;
        for bi in 0..blocks.nb {
            for bj in (bi + 1)..blocks.nb {
                if !blocks.non_joinable(bi, bj) {
                    continue;
                }
                pruned += 1;
                for a in 0..blocks.len(bi) {
                    for q in 0..blocks.len(bj) {
                        let ga = blocks.start(bi) + a;
                        let gq = blocks.start(bj) + q;
                        assert!(
                            dist_sq(sorted.row(ga), sorted.row(gq)) > eps_sq,
                            "pruned pair ({ga},{gq}) qualifies"
                        );
                    }
                }
            }
        }
        assert!(pruned > 0, "test setup never pruned anything");
    }

    #[test]
    fn contract_errors() {
        let p = PointSet::from_rows(&[vec![0.0], vec![1.0]]).unwrap();
        assert!(epsilon_join(&p, 0.0, &spec2(), &JoinParams::default()).is_err());
        let bad = JoinParams {
            workers: 0,
            ..JoinParams::default()
        };
        assert!(epsilon_join(&p, 1.0, &spec2(), &bad).is_err());
    }
}
