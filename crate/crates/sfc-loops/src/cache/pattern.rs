//! Memory access patterns of the kernels, as deterministic functions from
//! a visited tuple to the element addresses it touches.

use crate::engine::LoopDomain;
use crate::error::Result;

pub trait AccessPattern: Sync {
    fn name(&self) -> &'static str;

    /// Block-index domain the pattern iterates over.
    fn domain(&self) -> Result<LoopDomain>;

    /// Element addresses touched by one visit, appended to `out`.
    fn addresses(&self, tuple: &[u64], out: &mut Vec<u64>);
}

/// Block self-join: tuple (bi, bj) reads the rows of both point blocks.
pub struct SelfJoinPattern {
    pub n_points: usize,
    pub dim: usize,
    pub block_points: usize,
}

impl SelfJoinPattern {
    fn push_block(&self, b: u64, out: &mut Vec<u64>) {
        let start = b as usize * self.block_points;
        let end = (start + self.block_points).min(self.n_points);
        for p in start..end {
            for t in 0..self.dim {
                out.push((p * self.dim + t) as u64);
            }
        }
    }

    fn blocks(&self) -> u64 {
        self.n_points.div_ceil(self.block_points) as u64
    }
}

impl AccessPattern for SelfJoinPattern {
    fn name(&self) -> &'static str {
        "selfjoin"
    }

    fn domain(&self) -> Result<LoopDomain> {
        LoopDomain::full(&[self.blocks(), self.blocks()])
    }

    fn addresses(&self, tuple: &[u64], out: &mut Vec<u64>) {
        self.push_block(tuple[0], out);
        self.push_block(tuple[1], out);
    }
}

/// Blocked matmul: tuple (I, J, K) touches tile (I,K) of A, tile (K,J) of
/// B and tile (I,J) of C, laid out consecutively in one address space.
pub struct MatmulPattern {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub tile: usize,
}

impl MatmulPattern {
    #[allow(clippy::too_many_arguments)]
    fn push_tile(
        &self,
        base: usize,
        cols: usize,
        rows_limit: usize,
        cols_limit: usize,
        ti: u64,
        tj: u64,
        out: &mut Vec<u64>,
    ) {
        let i0 = ti as usize * self.tile;
        let j0 = tj as usize * self.tile;
        for i in i0..(i0 + self.tile).min(rows_limit) {
            for j in j0..(j0 + self.tile).min(cols_limit) {
                out.push((base + i * cols + j) as u64);
            }
        }
    }
}

impl AccessPattern for MatmulPattern {
    fn name(&self) -> &'static str {
        "matmul"
    }

    fn domain(&self) -> Result<LoopDomain> {
        LoopDomain::full(&[
            self.m.div_ceil(self.tile) as u64,
            self.n.div_ceil(self.tile) as u64,
            self.p.div_ceil(self.tile) as u64,
        ])
    }

    fn addresses(&self, tuple: &[u64], out: &mut Vec<u64>) {
        let (ti, tj, tk) = (tuple[0], tuple[1], tuple[2]);
        let a_base = 0;
        let b_base = self.m * self.p;
        let c_base = b_base + self.p * self.n;
        self.push_tile(a_base, self.p, self.m, self.p, ti, tk, out);
        self.push_tile(b_base, self.n, self.p, self.n, tk, tj, out);
        self.push_tile(c_base, self.n, self.m, self.n, ti, tj, out);
    }
}

/// k-means assignment: tuple (pb, cb) reads a point block and a centroid
/// block (centroids live after the points).
pub struct KMeansPattern {
    pub n_points: usize,
    pub dim: usize,
    pub k: usize,
    pub block_points: usize,
}

impl AccessPattern for KMeansPattern {
    fn name(&self) -> &'static str {
        "kmeans"
    }

    fn domain(&self) -> Result<LoopDomain> {
        LoopDomain::full(&[
            self.n_points.div_ceil(self.block_points) as u64,
            self.k.div_ceil(self.block_points).max(1) as u64,
        ])
    }

    fn addresses(&self, tuple: &[u64], out: &mut Vec<u64>) {
        let p0 = tuple[0] as usize * self.block_points;
        let p1 = (p0 + self.block_points).min(self.n_points);
        for p in p0..p1 {
            for t in 0..self.dim {
                out.push((p * self.dim + t) as u64);
            }
        }
        let cbase = self.n_points * self.dim;
        let c0 = tuple[1] as usize * self.block_points;
        let c1 = (c0 + self.block_points).min(self.k);
        for c in c0..c1 {
            for t in 0..self.dim {
                out.push((cbase + c * self.dim + t) as u64);
            }
        }
    }
}
