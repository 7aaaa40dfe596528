//! Bounded iteration domains with shape constraints.

use crate::error::{Error, Result};

/// Constraint applied on top of the rectangular bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainShape {
    /// Every tuple inside the bounds.
    Full,
    /// Strict upper triangle: first index < second index (d = 2 only).
    Triangular,
    /// Band of half-width b: |i - j| <= b (d = 2 only).
    Band(u64),
}

/// A bounded loop nest: `bounds[j]` is the exclusive limit of index j.
/// Bounds need not be powers of two; the engine embeds the domain in the
/// smallest curve grid that covers it and skips cells outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopDomain {
    bounds: Vec<u64>,
    shape: DomainShape,
}

impl LoopDomain {
    pub fn new(bounds: &[u64], shape: DomainShape) -> Result<Self> {
        if bounds.is_empty() || bounds.len() > crate::curve::MAX_DIM {
            return Err(Error::Spec(format!(
                "domain dimension must be 1..={}, got {}",
                crate::curve::MAX_DIM,
                bounds.len()
            )));
        }
        if bounds.contains(&0) {
            return Err(Error::Spec("all loop bounds must be >= 1".into()));
        }
        if !matches!(shape, DomainShape::Full) && bounds.len() != 2 {
            return Err(Error::Spec(
                "triangular and band shapes require a 2-dimensional domain".into(),
            ));
        }
        Ok(LoopDomain {
            bounds: bounds.to_vec(),
            shape,
        })
    }

    pub fn full(bounds: &[u64]) -> Result<Self> {
        LoopDomain::new(bounds, DomainShape::Full)
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[u64] {
        &self.bounds
    }

    pub fn shape(&self) -> DomainShape {
        self.shape
    }

    /// Largest bound; the embedding grid side must cover it.
    pub fn extent(&self) -> u64 {
        self.bounds.iter().copied().max().unwrap_or(1)
    }

    /// Shape membership test. Tuples are unsigned, in-bounds checks first.
    pub fn contains(&self, tuple: &[u64]) -> bool {
        if tuple.len() != self.bounds.len() {
            return false;
        }
        if tuple.iter().zip(&self.bounds).any(|(&t, &b)| t >= b) {
            return false;
        }
        match self.shape {
            DomainShape::Full => true,
            DomainShape::Triangular => tuple[0] < tuple[1],
            DomainShape::Band(b) => tuple[0].abs_diff(tuple[1]) <= b,
        }
    }

    /// Number of in-domain tuples.
    pub fn size(&self) -> u64 {
        match self.shape {
            DomainShape::Full => self.bounds.iter().product(),
            DomainShape::Triangular => {
                let (b0, b1) = (self.bounds[0], self.bounds[1]);
                (0..b0).map(|i| b1.saturating_sub(i + 1)).sum()
            }
            DomainShape::Band(b) => {
                let (b0, b1) = (self.bounds[0], self.bounds[1]);
                (0..b0)
                    .map(|i| {
                        let lo = i.saturating_sub(b);
                        let hi = (i + b).min(b1.saturating_sub(1));
                        if lo > hi {
                            0
                        } else {
                            hi - lo + 1
                        }
                    })
                    .sum()
            }
        }
    }
}
