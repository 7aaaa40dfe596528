//! Epsilon grid order: points compared by their ε-grid cell vectors.

use super::points::PointSet;
use crate::error::{Error, Result};

/// A stable permutation of point ids sorted by lexicographic comparison of
/// per-dimension cells floor(x/ε). The comparison is a strict weak order:
/// irreflexive, asymmetric and transitive on distinct cell vectors.
#[derive(Clone, Debug)]
pub struct EgoOrder {
    pub eps: f64,
    pub perm: Vec<u32>,
}

/// Grid cell of a coordinate.
#[inline]
pub fn cell(x: f64, eps: f64) -> i64 {
    (x / eps).floor() as i64
}

/// Cell vector of one point.
pub fn cell_vector(row: &[f64], eps: f64) -> Vec<i64> {
    row.iter().map(|&x| cell(x, eps)).collect()
}

pub fn ego_order(points: &PointSet, eps: f64) -> Result<EgoOrder> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::Contract(format!("epsilon must be > 0, got {eps}")));
    }
    let dim = points.dim();
    let mut cells: Vec<i64> = Vec::with_capacity(points.n() * dim);
    for i in 0..points.n() {
        for &x in points.row(i) {
            cells.push(cell(x, eps));
        }
    }
    let mut perm: Vec<u32> = (0..points.n() as u32).collect();
    perm.sort_by(|&a, &b| {
        let ca = &cells[a as usize * dim..(a as usize + 1) * dim];
        let cb = &cells[b as usize * dim..(b as usize + 1) * dim];
        ca.cmp(cb)
    });
    Ok(EgoOrder { eps, perm })
}
