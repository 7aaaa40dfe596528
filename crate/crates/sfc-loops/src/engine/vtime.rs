//! Deterministic virtual-time replay of the scheduling policy.
//!
//! Wall clocks make schedule assertions flaky, so the cost-model mode
//! replays the same block/steal policy as [`super::parallel_execute`] in
//! virtual time: every tuple carries a caller-supplied cost, block pops are
//! instantaneous, steals are free, and ties break toward the lowest worker
//! id. The result is a reproducible [`ScheduleReport`] in cost units.

use super::embed::Embedding;
use super::parallel::ScheduleReport;
use super::LoopDomain;
use crate::curve::CurveSpec;
use crate::error::{Error, Result};

/// Virtual-time execution of the traversal under a per-tuple cost model.
/// `stealing = false` leaves the initial per-worker split untouched, which
/// is the static baseline the stealing run is compared against.
pub fn simulate_schedule(
    domain: &LoopDomain,
    spec: &CurveSpec,
    workers: usize,
    block_bits: u32,
    stealing: bool,
    cost: impl Fn(u64, &[u64]) -> u64,
) -> Result<ScheduleReport> {
    if workers == 0 {
        return Err(Error::Contract("workers must be >= 1".into()));
    }
    let emb = Embedding::new(domain, spec)?;
    let block_len = 1u64 << block_bits;
    let nblocks = emb.total().div_ceil(block_len).max(1) as usize;

    // one pass: per-block cost and valid count
    let mut block_cost = vec![0u64; nblocks];
    let mut block_valid = vec![0u64; nblocks];
    let mut prefix = vec![0u64; nblocks + 1];
    {
        let mut walker = emb.walker(0)?;
        loop {
            if domain.contains(walker.coords()) {
                let b = (walker.order() / block_len) as usize;
                block_cost[b] += cost(walker.order(), walker.coords());
                block_valid[b] += 1;
            }
            if !walker.advance() {
                break;
            }
        }
    }
    for i in 0..nblocks {
        prefix[i + 1] = prefix[i] + block_valid[i];
    }
    let total_valid = prefix[nblocks];

    // initial split: same valid-count balancing as the thread pool
    let map = super::packet::BlockMap {
        block_len,
        prefix,
    };
    let cuts = map.cuts((workers as u64).clamp(1, total_valid.max(1)));
    let mut cur = vec![nblocks as u64; workers];
    let mut hi = vec![nblocks as u64; workers];
    for i in 0..workers {
        if i + 1 < cuts.len() {
            cur[i] = cuts[i];
            hi[i] = cuts[i + 1];
        }
    }

    let mut clock = vec![0u64; workers];
    let mut busy = vec![0u64; workers];
    let mut blocks = vec![0u64; workers];
    let mut valid = vec![0u64; workers];
    let mut steals = 0u64;

    loop {
        // a worker can act if it has blocks, or can steal one
        let stealable = |me: usize| {
            (0..workers)
                .filter(|&v| v != me && hi[v] - cur[v] >= 2)
                .max_by_key(|&v| (hi[v] - cur[v], usize::MAX - v))
        };
        let mut next: Option<usize> = None;
        for w in 0..workers {
            let can_act = cur[w] < hi[w] || (stealing && stealable(w).is_some());
            if can_act && next.is_none_or(|n| clock[w] < clock[n]) {
                next = Some(w);
            }
        }
        let Some(w) = next else { break };
        if cur[w] < hi[w] {
            let b = cur[w] as usize;
            cur[w] += 1;
            clock[w] += block_cost[b];
            busy[w] += block_cost[b];
            blocks[w] += 1;
            valid[w] += block_valid[b];
        } else {
            let v = stealable(w).expect("guarded by can_act");
            let len = hi[v] - cur[v];
            let take = (len / 2).max(1);
            cur[w] = hi[v] - take;
            hi[w] = hi[v];
            hi[v] -= take;
            steals += 1;
        }
    }

    Ok(ScheduleReport {
        workers,
        steals,
        blocks_per_worker: blocks,
        valid_per_worker: valid,
        busy_per_worker: busy,
        makespan: clock.into_iter().max().unwrap_or(0),
        time_unit: "cost",
    })
}
