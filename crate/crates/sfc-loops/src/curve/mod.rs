//! Space-filling curve mappings over d-dimensional grids.
//!
//! Three families are provided: Hilbert (Gray-code construction, 2 ≤ d ≤ 6),
//! Z-order (bit interleaving, 2 ≤ d ≤ 6) and Peano (base-3 serpentine, d = 2).
//! Every family is a bijection between `[0, side^d)` and the grid cells, with
//! a fixed orientation convention: index 0 is always the origin, and for d = 2
//! the first four Hilbert cells are (0,0), (0,1), (1,1), (1,0).
//!
//! Curve indices are 64-bit; specs whose grid would overflow a `u64` are
//! rejected at construction.

mod hilbert;
pub(crate) mod monotone;
mod peano;
mod stepper;
mod zorder;

pub use monotone::MonotoneKey;
pub use stepper::CurveStepper;

use crate::error::{Error, Result};

/// Maximum supported grid dimension.
pub const MAX_DIM: usize = 6;

/// Position along a curve. 64-bit: a spec is only constructible when
/// `side^d` fits in this width.
pub type CurveIndex = u64;

/// The curve families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveFamily {
    Hilbert,
    ZOrder,
    Peano,
}

impl CurveFamily {
    /// Grid side for a curve of this family at `order`.
    pub fn base(self) -> u64 {
        match self {
            CurveFamily::Hilbert | CurveFamily::ZOrder => 2,
            CurveFamily::Peano => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveFamily::Hilbert => "hilbert",
            CurveFamily::ZOrder => "zorder",
            CurveFamily::Peano => "peano",
        }
    }
}

impl std::str::FromStr for CurveFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hilbert" => Ok(CurveFamily::Hilbert),
            "zorder" | "z-order" | "morton" => Ok(CurveFamily::ZOrder),
            "peano" => Ok(CurveFamily::Peano),
            other => Err(Error::Spec(format!("unknown curve family: {other}"))),
        }
    }
}

/// A point of the grid, `dim` coordinates each in `[0, side)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridPoint {
    dim: u8,
    coords: [u64; MAX_DIM],
}

impl GridPoint {
    pub fn new(coords: &[u64]) -> Self {
        assert!(coords.len() <= MAX_DIM, "too many coordinates");
        let mut buf = [0u64; MAX_DIM];
        buf[..coords.len()].copy_from_slice(coords);
        GridPoint {
            dim: coords.len() as u8,
            coords: buf,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords[..self.dim as usize]
    }

    pub fn get(&self, axis: usize) -> u64 {
        self.coords()[axis]
    }
}

impl std::fmt::Debug for GridPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.coords())
    }
}

/// A validated curve specification: family, dimension, order and the set of
/// dimensions that must be visited in nondecreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    family: CurveFamily,
    dim: usize,
    order: u32,
    side: u64,
    cells: u64,
    monotone_dims: Vec<usize>,
}

impl CurveSpec {
    /// Build a spec. `order` is the recursion depth: side = 2^order for
    /// Hilbert/Z-order, 3^order for Peano.
    pub fn new(family: CurveFamily, dim: usize, order: u32) -> Result<Self> {
        match family {
            CurveFamily::Hilbert | CurveFamily::ZOrder => {
                if !(2..=MAX_DIM).contains(&dim) {
                    return Err(Error::Spec(format!(
                        "{} requires 2 <= d <= {MAX_DIM}, got {dim}",
                        family.name()
                    )));
                }
            }
            CurveFamily::Peano => {
                if dim != 2 {
                    return Err(Error::Spec(format!("peano requires d = 2, got {dim}")));
                }
            }
        }
        let side = family
            .base()
            .checked_pow(order)
            .ok_or_else(|| Error::Spec(format!("side {}^{order} overflows u64", family.base())))?;
        let cells = side
            .checked_pow(dim as u32)
            .ok_or_else(|| Error::Spec(format!("grid {side}^{dim} overflows u64")))?;
        Ok(CurveSpec {
            family,
            dim,
            order,
            side,
            cells,
            monotone_dims: Vec::new(),
        })
    }

    /// Smallest-order spec of `family` whose side covers `extent` cells per
    /// dimension.
    pub fn minimal(family: CurveFamily, dim: usize, extent: u64) -> Result<Self> {
        let base = family.base();
        let mut order = 0u32;
        let mut side = 1u64;
        while side < extent {
            side = side
                .checked_mul(base)
                .ok_or_else(|| Error::Spec(format!("extent {extent} overflows u64 grid")))?;
            order += 1;
        }
        CurveSpec::new(family, dim, order)
    }

    /// Restrict the traversal so the given dimensions are visited in
    /// nondecreasing coordinate order (see [`CurveSpec::monotone_index`]).
    pub fn with_monotone_dims(mut self, dims: &[usize]) -> Result<Self> {
        let mut sorted: Vec<usize> = dims.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&d| d >= self.dim) {
            return Err(Error::Spec(format!(
                "monotone dimension {bad} out of range for d = {}",
                self.dim
            )));
        }
        self.monotone_dims = sorted;
        Ok(self)
    }

    pub fn family(&self) -> CurveFamily {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Grid side length per dimension.
    pub fn side(&self) -> u64 {
        self.side
    }

    /// Total number of grid cells (`side^dim`).
    pub fn cells(&self) -> u64 {
        self.cells
    }

    pub fn monotone_dims(&self) -> &[usize] {
        &self.monotone_dims
    }

    /// Map a curve index to its grid cell.
    pub fn index_to_point(&self, idx: CurveIndex) -> Result<GridPoint> {
        if idx >= self.cells {
            return Err(Error::IndexRange {
                index: idx,
                cells: self.cells,
            });
        }
        let mut coords = [0u64; MAX_DIM];
        self.decode(idx, &mut coords[..self.dim]);
        Ok(GridPoint {
            dim: self.dim as u8,
            coords,
        })
    }

    /// Exact inverse of [`CurveSpec::index_to_point`].
    pub fn point_to_index(&self, p: &GridPoint) -> Result<CurveIndex> {
        if p.dim() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: p.dim(),
            });
        }
        for (axis, &c) in p.coords().iter().enumerate() {
            if c >= self.side {
                return Err(Error::CoordRange {
                    dim: axis,
                    value: c,
                    side: self.side,
                });
            }
        }
        Ok(self.encode(p.coords()))
    }

    /// Incremental walker positioned at `start`.
    pub fn stepper(&self, start: CurveIndex) -> Result<CurveStepper> {
        CurveStepper::new(self, start)
    }

    /// Composite slab-major key: monotone coordinates (ascending dimension
    /// index) form the major key, the curve order of the remaining
    /// dimensions the minor key. Sorting the grid by this key yields a
    /// traversal where every monotone coordinate tuple is lexicographically
    /// nondecreasing.
    pub fn monotone_index(&self, p: &GridPoint) -> Result<MonotoneKey> {
        monotone::monotone_index(self, p)
    }

    /// Decode without range checks; `coords` must have length `dim`.
    pub(crate) fn decode(&self, idx: CurveIndex, coords: &mut [u64]) {
        match self.family {
            CurveFamily::Hilbert => hilbert::index_to_point(self.dim as u32, self.order, idx, coords),
            CurveFamily::ZOrder => zorder::index_to_point(self.dim as u32, self.order, idx, coords),
            CurveFamily::Peano => peano::index_to_point(self.order, idx, coords),
        }
    }

    /// Encode without range checks; `coords` must have length `dim`.
    pub(crate) fn encode(&self, coords: &[u64]) -> CurveIndex {
        match self.family {
            CurveFamily::Hilbert => hilbert::point_to_index(self.dim as u32, self.order, coords),
            CurveFamily::ZOrder => zorder::point_to_index(self.dim as u32, self.order, coords),
            CurveFamily::Peano => peano::point_to_index(self.order, coords),
        }
    }
}
