//! Row-major point storage shared by the kernels.

use crate::error::{Error, Result};

/// Maximum point dimensionality accepted by the kernels.
pub const MAX_POINT_DIM: usize = 64;

/// `n` points of dimension `dim`, row-major 64-bit floats. Row id is the
/// point id. All values are finite; non-finite input is rejected at load.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    n: usize,
    dim: usize,
    values: Vec<f64>,
}

impl PointSet {
    pub fn new(n: usize, dim: usize, values: Vec<f64>) -> Result<Self> {
        if !(1..=MAX_POINT_DIM).contains(&dim) {
            return Err(Error::Spec(format!(
                "point dimension must be 1..={MAX_POINT_DIM}, got {dim}"
            )));
        }
        if values.len() != n * dim {
            return Err(Error::Spec(format!(
                "expected {} values for {n} x {dim} points, got {}",
                n * dim,
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Spec(format!(
                "non-finite value at point {}, dimension {}",
                pos / dim,
                pos % dim
            )));
        }
        Ok(PointSet { n, dim, values })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.len());
        let mut values = Vec::with_capacity(rows.len() * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::Spec("ragged rows in point set".into()));
            }
            values.extend_from_slice(r);
        }
        PointSet::new(rows.len(), dim, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Squared Euclidean distance, accumulated in ascending dimension
    /// order. Kernels and oracles share this exact summation order so
    /// threshold comparisons agree bit-for-bit.
    pub fn dist_sq(&self, i: usize, j: usize) -> f64 {
        dist_sq(self.row(i), self.row(j))
    }
}

/// Ascending-dimension squared distance between two coordinate slices.
pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        s += d * d;
    }
    s
}
