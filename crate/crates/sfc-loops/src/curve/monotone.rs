//! Slab-major composite ordering for partially monotone traversals.
//!
//! Some loop bodies require selected indices to be processed in
//! nondecreasing order. The composite key makes those coordinates the major
//! key (lexicographic, ascending dimension index) and orders each residual
//! slab by the curve restricted to the remaining dimensions, preserving
//! locality inside a slab.

use super::{CurveFamily, CurveSpec, GridPoint};
use crate::error::{Error, Result};

/// Orderable slab-major key; fits in 64 bits whenever the owning grid does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotoneKey(pub u64);

/// Ordering of one residual slab.
pub(crate) enum ResidualOrder {
    /// No residual dimensions: slabs are single cells.
    Unit,
    /// One residual dimension: the coordinate itself.
    Identity,
    /// Two or more residual dimensions: the restricted curve.
    Curve(CurveSpec),
}

impl ResidualOrder {
    pub(crate) fn new(family: CurveFamily, residual_dims: usize, order: u32) -> Result<Self> {
        match residual_dims {
            0 => Ok(ResidualOrder::Unit),
            1 => Ok(ResidualOrder::Identity),
            // Peano is 2-D, so its residual is always Unit or Identity; the
            // general case only arises for the binary families.
            n => CurveSpec::new(family, n, order).map(ResidualOrder::Curve),
        }
    }

    pub(crate) fn cells(&self, side: u64) -> u64 {
        match self {
            ResidualOrder::Unit => 1,
            ResidualOrder::Identity => side,
            ResidualOrder::Curve(spec) => spec.cells(),
        }
    }

    pub(crate) fn encode(&self, coords: &[u64]) -> u64 {
        match self {
            ResidualOrder::Unit => 0,
            ResidualOrder::Identity => coords[0],
            ResidualOrder::Curve(spec) => spec.encode(coords),
        }
    }

    pub(crate) fn decode(&self, idx: u64, coords: &mut [u64]) {
        match self {
            ResidualOrder::Unit => {}
            ResidualOrder::Identity => coords[0] = idx,
            ResidualOrder::Curve(spec) => spec.decode(idx, coords),
        }
    }
}

pub(crate) fn monotone_index(spec: &CurveSpec, p: &GridPoint) -> Result<MonotoneKey> {
    if spec.monotone_dims().is_empty() {
        return Err(Error::Contract(
            "monotone_index requires a nonempty monotone dimension set; \
             use point_to_index for plain curve order"
                .into(),
        ));
    }
    if p.dim() != spec.dim() {
        return Err(Error::DimMismatch {
            expected: spec.dim(),
            got: p.dim(),
        });
    }
    for (axis, &c) in p.coords().iter().enumerate() {
        if c >= spec.side() {
            return Err(Error::CoordRange {
                dim: axis,
                value: c,
                side: spec.side(),
            });
        }
    }
    let mono = spec.monotone_dims();
    let residual_dims: Vec<usize> = (0..spec.dim()).filter(|d| !mono.contains(d)).collect();
    let residual = ResidualOrder::new(spec.family(), residual_dims.len(), spec.order())?;

    let mut major = 0u64;
    for &d in mono {
        major = major * spec.side() + p.get(d);
    }
    let mut res_coords = [0u64; super::MAX_DIM];
    for (i, &d) in residual_dims.iter().enumerate() {
        res_coords[i] = p.get(d);
    }
    let minor = residual.encode(&res_coords[..residual_dims.len()]);
    Ok(MonotoneKey(major * residual.cells(spec.side()) + minor))
}
