//! Work packets: block-granular partitioning of the traversal order.

use super::embed::Embedding;
use super::LoopDomain;
use crate::curve::{CurveIndex, CurveSpec};
use crate::error::Result;

/// Scheduling and stealing granularity: packets and steals are aligned to
/// blocks of `2^DEFAULT_BLOCK_BITS` consecutive traversal positions.
pub const DEFAULT_BLOCK_BITS: u32 = 10;

/// Half-open interval of traversal positions, the unit of scheduling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WorkPacket {
    pub lo: CurveIndex,
    pub hi: CurveIndex,
    /// In-domain tuples inside `[lo, hi)`.
    pub valid_count: u64,
}

/// Per-block valid counts for one embedding, the balancing input.
pub(crate) struct BlockMap {
    pub block_len: u64,
    /// `prefix[i]` = in-domain tuples in blocks `0..i`; length `nblocks+1`.
    pub prefix: Vec<u64>,
}

impl BlockMap {
    pub(crate) fn build(domain: &LoopDomain, emb: &Embedding, block_bits: u32) -> Result<BlockMap> {
        let block_len = 1u64 << block_bits;
        let nblocks = emb.total().div_ceil(block_len).max(1) as usize;
        let mut prefix = vec![0u64; nblocks + 1];
        let mut walker = emb.walker(0)?;
        loop {
            if domain.contains(walker.coords()) {
                let b = (walker.order() / block_len) as usize;
                prefix[b + 1] += 1;
            }
            if !walker.advance() {
                break;
            }
        }
        for i in 0..nblocks {
            prefix[i + 1] += prefix[i];
        }
        Ok(BlockMap { block_len, prefix })
    }

    pub(crate) fn nblocks(&self) -> u64 {
        (self.prefix.len() - 1) as u64
    }

    pub(crate) fn total_valid(&self) -> u64 {
        *self.prefix.last().unwrap()
    }

    /// Valid tuples in blocks `[lo, hi)`.
    pub(crate) fn valid_in(&self, lo: u64, hi: u64) -> u64 {
        self.prefix[hi as usize] - self.prefix[lo as usize]
    }

    /// Block-boundary cut positions balancing `packets` by valid count:
    /// cut i is the boundary whose prefix count is closest to i/packets of
    /// the total (ties toward the earlier boundary).
    pub(crate) fn cuts(&self, packets: u64) -> Vec<u64> {
        let nblocks = self.nblocks();
        let total = self.total_valid();
        let mut cuts = Vec::with_capacity(packets as usize + 1);
        cuts.push(0u64);
        for i in 1..packets {
            let ideal = total as f64 * i as f64 / packets as f64;
            let mut c = self.prefix.partition_point(|&v| (v as f64) < ideal) as u64;
            if c > 0 && c <= nblocks {
                let below = ideal - self.prefix[c as usize - 1] as f64;
                let above = self.prefix[c as usize] as f64 - ideal;
                if below <= above {
                    c -= 1;
                }
            }
            let c = c.min(nblocks).max(*cuts.last().unwrap());
            cuts.push(c);
        }
        cuts.push(nblocks);
        cuts
    }
}

/// Split the traversal order into up to `packets` disjoint, ordered
/// packets covering the whole order space, each holding close to
/// `domain size / packets` in-domain tuples (within one block granule).
/// A request for more packets than tuples is reduced.
pub fn partition(
    domain: &LoopDomain,
    spec: &CurveSpec,
    packets: u64,
    block_bits: u32,
) -> Result<Vec<WorkPacket>> {
    let emb = Embedding::new(domain, spec)?;
    let map = BlockMap::build(domain, &emb, block_bits)?;
    let p = packets.clamp(1, map.total_valid().max(1));
    let cuts = map.cuts(p);
    let total = emb.total();
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (lo_b, hi_b) = (w[0], w[1]);
        if lo_b == hi_b {
            continue;
        }
        out.push(WorkPacket {
            lo: lo_b * map.block_len,
            hi: (hi_b * map.block_len).min(total),
            valid_count: map.valid_in(lo_b, hi_b),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveFamily;
    use crate::engine::{count_valid, DomainShape};

    #[test]
    fn uniform_grid_divides_evenly() {
        let domain = LoopDomain::full(&[4, 4]).unwrap();
        let spec = CurveSpec::new(CurveFamily::ZOrder, 2, 2).unwrap();
        let packets = partition(&domain, &spec, 4, 2).unwrap();
        assert_eq!(packets.len(), 4);
        assert!(packets.iter().all(|p| p.valid_count == 4));
    }

    #[test]
    fn single_packet_covers_everything() {
        let domain = LoopDomain::new(&[7, 7], DomainShape::Band(2)).unwrap();
        let spec = CurveSpec::new(CurveFamily::Hilbert, 2, 1).unwrap();
        let packets = partition(&domain, &spec, 1, 3).unwrap();
        assert_eq!(packets.len(), 1);
        assert_eq!(packets[0].lo, 0);
        assert_eq!(packets[0].hi, 64);
        assert_eq!(packets[0].valid_count, domain.size());
    }

    #[test]
    fn packets_are_disjoint_ordered_and_cover() {
        let domain = LoopDomain::new(&[17, 17], DomainShape::Triangular).unwrap();
        let spec = CurveSpec::new(CurveFamily::Hilbert, 2, 1).unwrap();
        let packets = partition(&domain, &spec, 5, 4).unwrap();
        assert_eq!(packets[0].lo, 0);
        assert_eq!(packets.last().unwrap().hi, 32 * 32);
        for w in packets.windows(2) {
            assert_eq!(w[0].hi, w[1].lo);
            assert!(w[0].lo < w[0].hi);
        }
        let sum: u64 = packets.iter().map(|p| p.valid_count).sum();
        assert_eq!(sum, domain.size());
        // valid counts agree with count_valid on each interval
        for p in &packets {
            assert_eq!(
                count_valid(&domain, &spec, p.lo, p.hi).unwrap(),
                p.valid_count
            );
        }
    }

    #[test]
    fn more_packets_than_tuples_reduced() {
        let domain = LoopDomain::new(&[2, 2], DomainShape::Triangular).unwrap(); // size 1
        let spec = CurveSpec::new(CurveFamily::ZOrder, 2, 1).unwrap();
        let packets = partition(&domain, &spec, 8, 0).unwrap();
        assert_eq!(packets.len(), 1);
        assert_eq!(packets[0].valid_count, 1);
    }
}
