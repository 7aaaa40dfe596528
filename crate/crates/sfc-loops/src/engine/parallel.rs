//! Work-stealing parallel execution of a domain traversal.
//!
//! The traversal order is cut into per-worker packets balanced by valid
//! tuple count. Each worker drains its interval block by block from the
//! front; an idle worker steals the upper half (whole blocks) of the
//! largest unprocessed remainder. Worker accumulators are merged in
//! original packet order after all blocks drain.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use super::embed::Embedding;
use super::packet::BlockMap;
use super::{LoopDomain, Visitor};
use crate::curve::CurveSpec;
use crate::error::{Error, Result};

/// What one parallel or simulated run did, per worker.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ScheduleReport {
    pub workers: usize,
    pub steals: u64,
    /// Blocks processed per worker.
    pub blocks_per_worker: Vec<u64>,
    /// In-domain tuples visited per worker; sums to the domain size.
    pub valid_per_worker: Vec<u64>,
    /// Busy time per worker, in `time_unit`.
    pub busy_per_worker: Vec<u64>,
    pub makespan: u64,
    /// "ns" for wall-clock runs, "cost" for virtual-time simulations.
    pub time_unit: &'static str,
}

struct WorkerSlot {
    /// Unprocessed block-id interval `[cur, hi)`.
    interval: Mutex<(u64, u64)>,
}

struct Failure {
    order: u64,
    tuple: Vec<u64>,
    message: String,
}

/// Execute the domain traversal on `workers` threads with dynamic work
/// stealing. The visit multiset equals [`super::traverse`]'s; the merged
/// accumulator folds worker accumulators in ascending packet order.
pub fn parallel_execute<V: Visitor>(
    domain: &LoopDomain,
    spec: &CurveSpec,
    visitor: &V,
    workers: usize,
    block_bits: u32,
) -> Result<(V::Acc, ScheduleReport)> {
    if workers == 0 {
        return Err(Error::Contract("workers must be >= 1".into()));
    }
    let emb = Embedding::new(domain, spec)?;
    let map = BlockMap::build(domain, &emb, block_bits)?;
    let nblocks = map.nblocks();
    let block_len = map.block_len;
    let total = emb.total();

    // initial static split, balanced by valid counts at block granularity
    let cuts = map.cuts(workers.min(map.total_valid().max(1) as usize) as u64);
    let slots: Vec<WorkerSlot> = (0..workers)
        .map(|i| {
            let iv = if i + 1 < cuts.len() {
                (cuts[i], cuts[i + 1])
            } else {
                (nblocks, nblocks)
            };
            WorkerSlot {
                interval: Mutex::new(iv),
            }
        })
        .collect();

    let remaining = AtomicU64::new(nblocks);
    let abort = AtomicBool::new(false);
    let steals = AtomicU64::new(0);
    let failure: Mutex<Option<Failure>> = Mutex::new(None);

    let started = Instant::now();
    let mut per_worker: Vec<(V::Acc, u64, u64, u64)> = Vec::with_capacity(workers);

    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for me in 0..workers {
            let slots = &slots;
            let emb = &emb;
            let remaining = &remaining;
            let abort = &abort;
            let steals = &steals;
            let failure = &failure;
            handles.push(scope.spawn(move || {
                let mut acc = visitor.init();
                let mut blocks = 0u64;
                let mut valid = 0u64;
                let mut busy_ns = 0u64;
                loop {
                    if abort.load(Ordering::Relaxed) {
                        break;
                    }
                    let block = {
                        let mut iv = slots[me].interval.lock().unwrap();
                        if iv.0 < iv.1 {
                            let b = iv.0;
                            iv.0 += 1;
                            Some(b)
                        } else {
                            None
                        }
                    };
                    if let Some(b) = block {
                        let t0 = Instant::now();
                        let lo = b * block_len;
                        let hi = ((b + 1) * block_len).min(total);
                        let mut walker = emb.walker(lo).expect("block start in range");
                        loop {
                            if domain.contains(walker.coords()) {
                                match visitor.visit(walker.coords(), &mut acc) {
                                    Ok(()) => valid += 1,
                                    Err(e) => {
                                        let mut slot = failure.lock().unwrap();
                                        let order = walker.order();
                                        if slot.as_ref().is_none_or(|f| order < f.order) {
                                            *slot = Some(Failure {
                                                order,
                                                tuple: walker.coords().to_vec(),
                                                message: e.to_string(),
                                            });
                                        }
                                        abort.store(true, Ordering::Relaxed);
                                        break;
                                    }
                                }
                            }
                            if walker.order() + 1 >= hi || !walker.advance() {
                                break;
                            }
                        }
                        busy_ns += t0.elapsed().as_nanos() as u64;
                        blocks += 1;
                        remaining.fetch_sub(1, Ordering::AcqRel);
                        continue;
                    }
                    // own interval empty: steal the upper half of the
                    // largest remainder (whole blocks, victim keeps >= 1)
                    let mut best: Option<(u64, usize)> = None;
                    for (v, slot) in slots.iter().enumerate() {
                        if v == me {
                            continue;
                        }
                        let iv = slot.interval.lock().unwrap();
                        let len = iv.1 - iv.0;
                        if len >= 2 && best.is_none_or(|(blen, _)| len > blen) {
                            best = Some((len, v));
                        }
                    }
                    if let Some((_, v)) = best {
                        let stolen = {
                            let mut iv = slots[v].interval.lock().unwrap();
                            let len = iv.1 - iv.0;
                            if len >= 2 {
                                let take = (len / 2).max(1);
                                let range = (iv.1 - take, iv.1);
                                iv.1 -= take;
                                Some(range)
                            } else {
                                None
                            }
                        };
                        if let Some(range) = stolen {
                            *slots[me].interval.lock().unwrap() = range;
                            steals.fetch_add(1, Ordering::Relaxed);
                        }
                        continue;
                    }
                    if remaining.load(Ordering::Acquire) == 0 {
                        break;
                    }
                    std::thread::yield_now();
                }
                (acc, blocks, valid, busy_ns)
            }));
        }
        for h in handles {
            per_worker.push(h.join().expect("worker thread panicked"));
        }
    });
    let makespan = started.elapsed().as_nanos() as u64;

    if let Some(f) = failure.into_inner().unwrap() {
        return Err(Error::Visitor {
            tuple: f.tuple,
            message: f.message,
        });
    }

    let mut report = ScheduleReport {
        workers,
        steals: steals.load(Ordering::Relaxed),
        blocks_per_worker: Vec::with_capacity(workers),
        valid_per_worker: Vec::with_capacity(workers),
        busy_per_worker: Vec::with_capacity(workers),
        makespan,
        time_unit: "ns",
    };
    let mut merged: Option<V::Acc> = None;
    for (acc, blocks, valid, busy) in per_worker {
        report.blocks_per_worker.push(blocks);
        report.valid_per_worker.push(valid);
        report.busy_per_worker.push(busy);
        merged = Some(match merged {
            None => acc,
            Some(m) => visitor.merge(m, acc),
        });
    }
    Ok((merged.expect("workers >= 1"), report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveFamily;
    use crate::engine::{traverse, CollectVisitor, CountVisitor, DomainShape};

    #[test]
    fn single_worker_equals_traverse() {
        let domain = LoopDomain::new(&[9, 9], DomainShape::Band(2)).unwrap();
        let spec = CurveSpec::new(CurveFamily::Hilbert, 2, 1).unwrap();
        let seq = traverse(&domain, &spec, &CollectVisitor).unwrap();
        let (par, report) =
            parallel_execute(&domain, &spec, &CollectVisitor, 1, 2).unwrap();
        assert_eq!(seq, par);
        assert_eq!(report.valid_per_worker[0], domain.size());
    }

    #[test]
    fn counting_any_workers() {
        let domain = LoopDomain::full(&[13, 11]).unwrap();
        let spec = CurveSpec::new(CurveFamily::ZOrder, 2, 1).unwrap();
        for workers in [1usize, 2, 4, 8] {
            let (count, report) =
                parallel_execute(&domain, &spec, &CountVisitor, workers, 3).unwrap();
            assert_eq!(count, 143, "workers={workers}");
            let sum: u64 = report.valid_per_worker.iter().sum();
            assert_eq!(sum, 143);
        }
    }

    #[test]
    fn visit_multiset_matches_traverse() {
        let domain = LoopDomain::new(&[16, 16], DomainShape::Triangular).unwrap();
        let spec = CurveSpec::new(CurveFamily::Hilbert, 2, 2).unwrap();
        let mut seq = traverse(&domain, &spec, &CollectVisitor).unwrap();
        let (mut par, _) = parallel_execute(&domain, &spec, &CollectVisitor, 4, 2).unwrap();
        seq.sort();
        par.sort();
        assert_eq!(seq, par);
    }

    #[test]
    fn visitor_failure_aborts_with_tuple() {
        struct FailOn(u64, u64);
        impl Visitor for FailOn {
            type Acc = ();
            fn init(&self) {}
            fn visit(&self, tuple: &[u64], _acc: &mut ()) -> Result<()> {
                if tuple == [self.0, self.1] {
                    Err(Error::Contract("nope".into()))
                } else {
                    Ok(())
                }
            }
            fn merge(&self, _l: (), _r: ()) {}
        }
        let domain = LoopDomain::full(&[8, 8]).unwrap();
        let spec = CurveSpec::new(CurveFamily::ZOrder, 2, 3).unwrap();
        match parallel_execute(&domain, &spec, &FailOn(3, 5), 4, 2) {
            Err(Error::Visitor { tuple, .. }) => assert_eq!(tuple, vec![3, 5]),
            other => panic!("expected visitor failure, got {other:?}"),
        }
    }

    #[test]
    fn zero_workers_rejected() {
        let domain = LoopDomain::full(&[4, 4]).unwrap();
        let spec = CurveSpec::new(CurveFamily::ZOrder, 2, 2).unwrap();
        assert!(parallel_execute(&domain, &spec, &CountVisitor, 0, 2).is_err());
    }
}
