//! Single-agent traversal and interval counting.

use super::embed::Embedding;
use super::LoopDomain;
use crate::curve::{CurveIndex, CurveSpec};
use crate::error::{Error, Result};

/// Loop body contract. `visit` runs on every in-domain tuple exactly once;
/// visits on distinct tuples must not share mutable state beyond the
/// worker-local accumulator, and `merge` must be associative.
pub trait Visitor: Sync {
    type Acc: Send;

    fn init(&self) -> Self::Acc;

    fn visit(&self, tuple: &[u64], acc: &mut Self::Acc) -> Result<()>;

    fn merge(&self, left: Self::Acc, right: Self::Acc) -> Self::Acc;
}

/// Counting visitor used by the harness and tests.
pub struct CountVisitor;

impl Visitor for CountVisitor {
    type Acc = u64;

    fn init(&self) -> u64 {
        0
    }

    fn visit(&self, _tuple: &[u64], acc: &mut u64) -> Result<()> {
        *acc += 1;
        Ok(())
    }

    fn merge(&self, left: u64, right: u64) -> u64 {
        left + right
    }
}

/// Collects visited tuples; handy for order and exactness checks.
pub struct CollectVisitor;

impl Visitor for CollectVisitor {
    type Acc = Vec<Vec<u64>>;

    fn init(&self) -> Self::Acc {
        Vec::new()
    }

    fn visit(&self, tuple: &[u64], acc: &mut Self::Acc) -> Result<()> {
        acc.push(tuple.to_vec());
        Ok(())
    }

    fn merge(&self, mut left: Self::Acc, mut right: Self::Acc) -> Self::Acc {
        left.append(&mut right);
        left
    }
}

/// Visit every in-domain tuple exactly once, in traversal order, on the
/// calling agent. Returns the accumulator.
pub fn traverse<V: Visitor>(domain: &LoopDomain, spec: &CurveSpec, visitor: &V) -> Result<V::Acc> {
    let mut acc = visitor.init();
    traverse_with(domain, spec, visitor, &mut acc)?;
    Ok(acc)
}

/// [`traverse`] over a caller-owned accumulator, for state that must
/// outlive or pre-date the walk.
pub fn traverse_with<V: Visitor>(
    domain: &LoopDomain,
    spec: &CurveSpec,
    visitor: &V,
    acc: &mut V::Acc,
) -> Result<()> {
    let emb = Embedding::new(domain, spec)?;
    let mut walker = emb.walker(0)?;
    loop {
        if domain.contains(walker.coords()) {
            if let Err(e) = visitor.visit(walker.coords(), acc) {
                return Err(Error::Visitor {
                    tuple: walker.coords().to_vec(),
                    message: e.to_string(),
                });
            }
        }
        if !walker.advance() {
            break;
        }
    }
    Ok(())
}

/// Number of in-domain tuples with traversal-order position in `[lo, hi)`.
pub fn count_valid(
    domain: &LoopDomain,
    spec: &CurveSpec,
    lo: CurveIndex,
    hi: CurveIndex,
) -> Result<u64> {
    let emb = Embedding::new(domain, spec)?;
    if lo > hi || hi > emb.total() {
        return Err(Error::IndexRange {
            index: hi,
            cells: emb.total(),
        });
    }
    if lo == hi {
        return Ok(0);
    }
    let mut walker = emb.walker(lo)?;
    let mut count = 0u64;
    while walker.order() < hi {
        if domain.contains(walker.coords()) {
            count += 1;
        }
        if !walker.advance() {
            break;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveFamily;
    use crate::engine::DomainShape;

    #[test]
    fn traverse_full_3x3_exactly_once() {
        let domain = LoopDomain::full(&[3, 3]).unwrap();
        for family in [CurveFamily::Hilbert, CurveFamily::ZOrder, CurveFamily::Peano] {
            let spec = CurveSpec::new(family, 2, 1).unwrap();
            let mut seen = traverse(&domain, &spec, &CollectVisitor).unwrap();
            assert_eq!(seen.len(), 9, "{family:?}");
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), 9, "{family:?} repeated a tuple");
        }
    }

    #[test]
    fn traverse_triangular_4x4() {
        let domain = LoopDomain::new(&[4, 4], DomainShape::Triangular).unwrap();
        let spec = CurveSpec::new(CurveFamily::Hilbert, 2, 2).unwrap();
        let mut seen = traverse(&domain, &spec, &CollectVisitor).unwrap();
        seen.sort();
        let want: Vec<Vec<u64>> = (0..4)
            .flat_map(|i| ((i + 1)..4).map(move |j| vec![i, j]))
            .collect();
        assert_eq!(seen, want);
    }

    #[test]
    fn traverse_band1_5x5() {
        let domain = LoopDomain::new(&[5, 5], DomainShape::Band(1)).unwrap();
        let spec = CurveSpec::new(CurveFamily::ZOrder, 2, 3).unwrap();
        let count = traverse(&domain, &spec, &CountVisitor).unwrap();
        assert_eq!(count, 13);
    }

    #[test]
    fn count_valid_intervals() {
        let full = LoopDomain::full(&[4, 4]).unwrap();
        let spec = CurveSpec::new(CurveFamily::ZOrder, 2, 2).unwrap();
        assert_eq!(count_valid(&full, &spec, 0, 16).unwrap(), 16);

        let tri = LoopDomain::new(&[4, 4], DomainShape::Triangular).unwrap();
        let hspec = CurveSpec::new(CurveFamily::Hilbert, 2, 2).unwrap();
        assert_eq!(count_valid(&tri, &hspec, 0, 16).unwrap(), 6);

        // [0, 8) on the Hilbert embedding, checked against enumeration
        let mut expect = 0;
        for idx in 0..8 {
            let p = hspec.index_to_point(idx).unwrap();
            if tri.contains(p.coords()) {
                expect += 1;
            }
        }
        assert_eq!(count_valid(&tri, &hspec, 0, 8).unwrap(), expect);
        assert!(count_valid(&tri, &hspec, 0, 17).is_err());
    }

    #[test]
    fn visitor_error_reports_first_tuple() {
        struct FailAt(Vec<u64>);
        impl Visitor for FailAt {
            type Acc = ();
            fn init(&self) {}
            fn visit(&self, tuple: &[u64], _acc: &mut ()) -> Result<()> {
                if tuple == self.0.as_slice() {
                    Err(Error::Contract("boom".into()))
                } else {
                    Ok(())
                }
            }
            fn merge(&self, _l: (), _r: ()) {}
        }
        let domain = LoopDomain::full(&[4, 4]).unwrap();
        let spec = CurveSpec::new(CurveFamily::Hilbert, 2, 2).unwrap();
        let target = spec.index_to_point(5).unwrap().coords().to_vec();
        match traverse(&domain, &spec, &FailAt(target.clone())) {
            Err(Error::Visitor { tuple, .. }) => assert_eq!(tuple, target),
            other => panic!("expected visitor error, got {other:?}"),
        }
    }
}
