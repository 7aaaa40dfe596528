//! Incremental curve walker.
//!
//! The walker keeps the digit of every recursion level together with the
//! subcube orientation entered at that level, like an explicit stack over
//! the curve's refinement tree. Advancing increments the deepest digit and
//! only re-derives the levels below a carry, so a full-grid walk performs
//! O(cells) level updates in total: amortized O(1) per step. `op_count`
//! exposes the number of level updates for verification.

use super::{hilbert, peano, zorder, CurveFamily, CurveIndex, CurveSpec, GridPoint, MAX_DIM};
use crate::error::{Error, Result};

#[derive(Clone, Copy)]
enum Frame {
    Hilbert(hilbert::Frame),
    ZOrder,
    Peano(peano::Parity),
}

impl Frame {
    fn root(family: CurveFamily) -> Frame {
        match family {
            CurveFamily::Hilbert => Frame::Hilbert(hilbert::Frame::ROOT),
            CurveFamily::ZOrder => Frame::ZOrder,
            CurveFamily::Peano => Frame::Peano(peano::Parity::ROOT),
        }
    }

    fn child(self, w: u64, dim: u32) -> Frame {
        match self {
            Frame::Hilbert(f) => Frame::Hilbert(f.child(w, dim)),
            Frame::ZOrder => Frame::ZOrder,
            Frame::Peano(p) => Frame::Peano(p.child(w)),
        }
    }

    /// Per-axis local digits of index digit `w` under this orientation.
    fn cell(self, w: u64, dim: u32, out: &mut [u64; MAX_DIM]) {
        match self {
            Frame::Hilbert(f) => {
                let l = f.cell(w, dim);
                for (j, o) in out.iter_mut().enumerate().take(dim as usize) {
                    *o = (l >> j) & 1;
                }
            }
            Frame::ZOrder => {
                for (j, o) in out.iter_mut().enumerate().take(dim as usize) {
                    *o = zorder::cell_of_digit(w, dim, j);
                }
            }
            Frame::Peano(p) => {
                let (c0, c1) = p.cell(w);
                out[0] = c0;
                out[1] = c1;
            }
        }
    }
}

/// Single-owner incremental walker along a curve.
pub struct CurveStepper {
    spec: CurveSpec,
    idx: CurveIndex,
    coords: [u64; MAX_DIM],
    digits: Vec<u64>,
    frames: Vec<Frame>,
    cells: Vec<[u64; MAX_DIM]>,
    weights: Vec<u64>,
    arity: u64,
    ops: u64,
}

impl CurveStepper {
    pub(crate) fn new(spec: &CurveSpec, start: CurveIndex) -> Result<Self> {
        if start >= spec.cells() {
            return Err(Error::IndexRange {
                index: start,
                cells: spec.cells(),
            });
        }
        let order = spec.order() as usize;
        let dim = spec.dim() as u32;
        let arity = match spec.family() {
            CurveFamily::Peano => 9,
            _ => 1u64 << dim,
        };
        let mut digits = vec![0u64; order];
        let mut rem = start;
        for lvl in (0..order).rev() {
            digits[lvl] = rem % arity;
            rem /= arity;
        }
        let mut frames = vec![Frame::root(spec.family()); order.max(1)];
        let mut cells = vec![[0u64; MAX_DIM]; order];
        let mut coords = [0u64; MAX_DIM];
        let mut weights = vec![1u64; order];
        let base = spec.family().base();
        for lvl in (0..order).rev() {
            if lvl + 1 < order {
                weights[lvl] = weights[lvl + 1] * base;
            }
        }
        for lvl in 0..order {
            if lvl > 0 {
                frames[lvl] = frames[lvl - 1].child(digits[lvl - 1], dim);
            }
            frames[lvl].cell(digits[lvl], dim, &mut cells[lvl]);
            for j in 0..spec.dim() {
                coords[j] += cells[lvl][j] * weights[lvl];
            }
        }
        Ok(CurveStepper {
            spec: spec.clone(),
            idx: start,
            coords,
            digits,
            frames,
            cells,
            weights,
            arity,
            ops: 0,
        })
    }

    pub fn index(&self) -> CurveIndex {
        self.idx
    }

    pub fn point(&self) -> GridPoint {
        GridPoint::new(&self.coords[..self.spec.dim()])
    }

    /// Coordinates of the current cell.
    pub fn coords(&self) -> &[u64] {
        &self.coords[..self.spec.dim()]
    }

    /// Number of per-level state updates performed by `advance` so far.
    pub fn op_count(&self) -> u64 {
        self.ops
    }

    /// Move to the next cell along the curve. Returns false at the end of
    /// the grid (position unchanged).
    pub fn advance(&mut self) -> bool {
        if self.idx + 1 >= self.spec.cells() {
            return false;
        }
        let order = self.spec.order() as usize;
        let dim = self.spec.dim();
        let mut lvl = order - 1;
        while self.digits[lvl] == self.arity - 1 {
            self.ops += 1;
            lvl -= 1;
        }
        self.digits[lvl] += 1;
        for l in lvl..order {
            self.ops += 1;
            if l > lvl {
                self.digits[l] = 0;
                self.frames[l] = self.frames[l - 1].child(self.digits[l - 1], dim as u32);
            }
            let old = self.cells[l];
            self.frames[l].cell(self.digits[l], dim as u32, &mut self.cells[l]);
            let w = self.weights[l];
            for ((coord, new), old) in self.coords[..dim]
                .iter_mut()
                .zip(&self.cells[l])
                .zip(&old)
            {
                *coord = *coord + new * w - old * w;
            }
        }
        self.idx += 1;
        true
    }
}
