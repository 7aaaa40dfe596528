//! Embedding of a bounded domain into a curve-ordered grid.
//!
//! The engine re-derives the curve order so the grid side is the smallest
//! power of the family base covering the largest bound; cells outside the
//! bounds are skipped during traversal. When the spec carries monotone
//! dimensions, the traversal order is the slab-major composite order
//! instead of the raw curve: monotone coordinates sweep lexicographically
//! and each slab is filled in residual-curve order.

use crate::curve::monotone::ResidualOrder;
use crate::curve::{CurveSpec, CurveStepper, MAX_DIM};
use crate::engine::LoopDomain;
use crate::error::{Error, Result};

pub(crate) struct Embedding {
    spec: CurveSpec,
    mono: Vec<usize>,
    residual_dims: Vec<usize>,
    residual: ResidualOrder,
    residual_cells: u64,
}

impl Embedding {
    pub(crate) fn new(domain: &LoopDomain, spec: &CurveSpec) -> Result<Embedding> {
        if spec.dim() != domain.dim() {
            return Err(Error::DimMismatch {
                expected: spec.dim(),
                got: domain.dim(),
            });
        }
        let embedded = CurveSpec::minimal(spec.family(), spec.dim(), domain.extent())?
            .with_monotone_dims(spec.monotone_dims())?;
        let mono = embedded.monotone_dims().to_vec();
        let residual_dims: Vec<usize> =
            (0..embedded.dim()).filter(|d| !mono.contains(d)).collect();
        let residual = if mono.is_empty() {
            ResidualOrder::Unit // unused in pure curve order
        } else {
            ResidualOrder::new(embedded.family(), residual_dims.len(), embedded.order())?
        };
        let residual_cells = residual.cells(embedded.side());
        Ok(Embedding {
            spec: embedded,
            mono,
            residual_dims,
            residual,
            residual_cells,
        })
    }

    #[cfg(test)]
    pub(crate) fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    /// Size of the traversal order space (`side^d`).
    pub(crate) fn total(&self) -> u64 {
        self.spec.cells()
    }

    fn monotone(&self) -> bool {
        !self.mono.is_empty()
    }

    /// Decode a traversal-order position into grid coordinates.
    pub(crate) fn point_at(&self, t: u64, coords: &mut [u64]) {
        if !self.monotone() {
            self.spec.decode(t, &mut coords[..self.spec.dim()]);
            return;
        }
        let (mut major, minor) = (t / self.residual_cells, t % self.residual_cells);
        let mut res = [0u64; MAX_DIM];
        self.residual
            .decode(minor, &mut res[..self.residual_dims.len().max(1)]);
        for (i, &d) in self.residual_dims.iter().enumerate() {
            coords[d] = res[i];
        }
        for &d in self.mono.iter().rev() {
            coords[d] = major % self.spec.side();
            major /= self.spec.side();
        }
    }

    /// Traversal-order position of grid coordinates.
    #[cfg(test)]
    pub(crate) fn order_of(&self, coords: &[u64]) -> u64 {
        if !self.monotone() {
            return self.spec.encode(coords);
        }
        let mut major = 0u64;
        for &d in &self.mono {
            major = major * self.spec.side() + coords[d];
        }
        let mut res = [0u64; MAX_DIM];
        for (i, &d) in self.residual_dims.iter().enumerate() {
            res[i] = coords[d];
        }
        major * self.residual_cells + self.residual.encode(&res[..self.residual_dims.len()])
    }

    /// Sequential walker starting at order position `start`.
    pub(crate) fn walker(&self, start: u64) -> Result<Walker<'_>> {
        if start >= self.total() {
            return Err(Error::IndexRange {
                index: start,
                cells: self.total(),
            });
        }
        if !self.monotone() {
            return Ok(Walker {
                emb: self,
                order: start,
                coords: {
                    let mut c = [0u64; MAX_DIM];
                    self.spec.decode(start, &mut c[..self.spec.dim()]);
                    c
                },
                inner: WalkerInner::Curve(self.spec.stepper(start)?),
            });
        }
        let mut coords = [0u64; MAX_DIM];
        self.point_at(start, &mut coords);
        let minor = start % self.residual_cells;
        let inner = match &self.residual {
            ResidualOrder::Unit => WalkerInner::Unit,
            ResidualOrder::Identity => WalkerInner::Identity {
                pos: minor,
                side: self.spec.side(),
            },
            ResidualOrder::Curve(spec) => WalkerInner::Residual(spec.stepper(minor)?),
        };
        Ok(Walker {
            emb: self,
            order: start,
            coords,
            inner,
        })
    }
}

enum WalkerInner {
    /// Pure curve order.
    Curve(CurveStepper),
    /// Monotone with no residual dimensions.
    Unit,
    /// Monotone with one residual dimension.
    Identity { pos: u64, side: u64 },
    /// Monotone with a residual curve.
    Residual(CurveStepper),
}

/// Amortized-O(1) sequential walker over the traversal order.
pub(crate) struct Walker<'a> {
    emb: &'a Embedding,
    order: u64,
    coords: [u64; MAX_DIM],
    inner: WalkerInner,
}

impl Walker<'_> {
    pub(crate) fn order(&self) -> u64 {
        self.order
    }

    pub(crate) fn coords(&self) -> &[u64] {
        &self.coords[..self.emb.spec.dim()]
    }

    /// Move to the next position; false when the order space is exhausted.
    pub(crate) fn advance(&mut self) -> bool {
        if self.order + 1 >= self.emb.total() {
            return false;
        }
        self.order += 1;
        let slab_done = match &mut self.inner {
            WalkerInner::Curve(st) => {
                st.advance();
                false
            }
            WalkerInner::Unit => true,
            WalkerInner::Identity { pos, side } => {
                *pos += 1;
                if *pos == *side {
                    *pos = 0;
                    true
                } else {
                    false
                }
            }
            WalkerInner::Residual(st) => !st.advance(),
        };
        if slab_done {
            if let WalkerInner::Residual(_) = self.inner {
                let spec = match &self.emb.residual {
                    ResidualOrder::Curve(s) => s,
                    _ => unreachable!(),
                };
                self.inner = WalkerInner::Residual(spec.stepper(0).expect("start 0 is valid"));
            }
            self.bump_major();
        }
        self.sync_residual_coords();
        true
    }

    /// Copy the inner walker's position into the residual coordinates.
    fn sync_residual_coords(&mut self) {
        match &self.inner {
            WalkerInner::Curve(st) => {
                let dim = self.emb.spec.dim();
                self.coords[..dim].copy_from_slice(st.coords());
            }
            WalkerInner::Unit => {}
            WalkerInner::Identity { pos, .. } => {
                self.coords[self.emb.residual_dims[0]] = *pos;
            }
            WalkerInner::Residual(st) => {
                let res = st.coords();
                for (i, &d) in self.emb.residual_dims.iter().enumerate() {
                    self.coords[d] = res[i];
                }
            }
        }
    }

    /// Odometer increment over the monotone coordinates (last dim fastest).
    fn bump_major(&mut self) {
        let side = self.emb.spec.side();
        for &d in self.emb.mono.iter().rev() {
            self.coords[d] += 1;
            if self.coords[d] < side {
                return;
            }
            self.coords[d] = 0;
        }
        unreachable!("advance guards against walking past the end");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveFamily;

    fn full_walk(emb: &Embedding) -> Vec<Vec<u64>> {
        let mut w = emb.walker(0).unwrap();
        let mut out = vec![w.coords().to_vec()];
        while w.advance() {
            out.push(w.coords().to_vec());
        }
        out
    }

    #[test]
    fn walker_matches_point_at() {
        let domain = LoopDomain::full(&[5, 7]).unwrap();
        for family in [CurveFamily::Hilbert, CurveFamily::ZOrder, CurveFamily::Peano] {
            let spec = CurveSpec::new(family, 2, 1).unwrap();
            let emb = Embedding::new(&domain, &spec).unwrap();
            assert!(emb.spec().side() >= 7);
            let walked = full_walk(&emb);
            assert_eq!(walked.len() as u64, emb.total());
            let mut c = [0u64; MAX_DIM];
            for (t, got) in walked.iter().enumerate() {
                emb.point_at(t as u64, &mut c);
                assert_eq!(&c[..2], got.as_slice(), "{family:?} t={t}");
                assert_eq!(emb.order_of(got), t as u64);
            }
        }
    }

    #[test]
    fn monotone_walker_matches_point_at() {
        let domain = LoopDomain::full(&[4, 4, 4]).unwrap();
        for dims in [vec![0usize], vec![2], vec![0, 1], vec![0, 1, 2]] {
            let spec = CurveSpec::new(CurveFamily::Hilbert, 3, 2)
                .unwrap()
                .with_monotone_dims(&dims)
                .unwrap();
            let emb = Embedding::new(&domain, &spec).unwrap();
            let walked = full_walk(&emb);
            assert_eq!(walked.len() as u64, emb.total());
            let mut c = [0u64; MAX_DIM];
            for (t, got) in walked.iter().enumerate() {
                emb.point_at(t as u64, &mut c);
                assert_eq!(&c[..3], got.as_slice(), "dims {dims:?} t={t}");
                assert_eq!(emb.order_of(got), t as u64);
            }
            // monotone tuple sequence is lexicographically nondecreasing
            for pair in walked.windows(2) {
                let a: Vec<u64> = dims.iter().map(|&d| pair[0][d]).collect();
                let b: Vec<u64> = dims.iter().map(|&d| pair[1][d]).collect();
                assert!(a <= b, "monotone violated: {a:?} then {b:?}");
            }
        }
    }

    #[test]
    fn dim_mismatch_is_contract_error() {
        let domain = LoopDomain::full(&[4, 4, 4]).unwrap();
        let spec = CurveSpec::new(CurveFamily::Hilbert, 2, 2).unwrap();
        assert!(matches!(
            Embedding::new(&domain, &spec),
            Err(Error::DimMismatch { .. })
        ));
    }
}
