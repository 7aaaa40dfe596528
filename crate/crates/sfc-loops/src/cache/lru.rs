//! Fully-associative LRU cache state.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Cache geometry: line count and line size in elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CacheConfig {
    pub capacity_lines: usize,
    pub line_elems: u64,
}

impl CacheConfig {
    pub fn new(capacity_lines: usize, line_elems: u64) -> Result<Self> {
        if capacity_lines == 0 {
            return Err(Error::Spec("cache needs >= 1 line".into()));
        }
        if line_elems == 0 || !line_elems.is_power_of_two() {
            return Err(Error::Spec(format!(
                "line size must be a power of two, got {line_elems}"
            )));
        }
        Ok(CacheConfig {
            capacity_lines,
            line_elems,
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct MissStats {
    pub accesses: u64,
    pub misses: u64,
    pub evictions: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Access {
    Hit,
    Miss,
}

#[derive(Clone, Copy)]
struct Slot {
    line: u64,
    prev: usize,
    next: usize,
}

const NIL: usize = usize::MAX;

/// LRU over address lines: constant-time access via a hash map into an
/// intrusive recency list. Cold-start empty; the least recently used line
/// is evicted when full.
pub struct LruCache {
    config: CacheConfig,
    map: HashMap<u64, usize>,
    slots: Vec<Slot>,
    head: usize,
    tail: usize,
    stats: MissStats,
}

impl LruCache {
    pub fn new(config: CacheConfig) -> Self {
        LruCache {
            config,
            map: HashMap::with_capacity(config.capacity_lines + 1),
            slots: Vec::with_capacity(config.capacity_lines),
            head: NIL,
            tail: NIL,
            stats: MissStats::default(),
        }
    }

    pub fn stats(&self) -> MissStats {
        self.stats
    }

    fn unlink(&mut self, s: usize) {
        let Slot { prev, next, .. } = self.slots[s];
        if prev != NIL {
            self.slots[prev].next = next;
        } else {
            self.head = next;
        }
        if next != NIL {
            self.slots[next].prev = prev;
        } else {
            self.tail = prev;
        }
    }

    fn push_front(&mut self, s: usize) {
        self.slots[s].prev = NIL;
        self.slots[s].next = self.head;
        if self.head != NIL {
            self.slots[self.head].prev = s;
        }
        self.head = s;
        if self.tail == NIL {
            self.tail = s;
        }
    }

    /// Touch one element address.
    pub fn access(&mut self, addr: u64) -> Access {
        let line = addr / self.config.line_elems;
        self.stats.accesses += 1;
        if let Some(&s) = self.map.get(&line) {
            self.unlink(s);
            self.push_front(s);
            return Access::Hit;
        }
        self.stats.misses += 1;
        let s = if self.slots.len() < self.config.capacity_lines {
            self.slots.push(Slot {
                line,
                prev: NIL,
                next: NIL,
            });
            self.slots.len() - 1
        } else {
            // evict the least recently used line
            let victim = self.tail;
            self.stats.evictions += 1;
            self.map.remove(&self.slots[victim].line);
            self.unlink(victim);
            self.slots[victim].line = line;
            victim
        };
        self.map.insert(line, s);
        self.push_front(s);
        Access::Miss
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(capacity: usize, line: u64, addrs: &[u64]) -> Vec<Access> {
        let mut c = LruCache::new(CacheConfig::new(capacity, line).unwrap());
        addrs.iter().map(|&a| c.access(a)).collect()
    }

    #[test]
    fn single_line_hit_then_thrash() {
        use Access::*;
        assert_eq!(run(1, 1, &[0, 0]), vec![Miss, Hit]);
        assert_eq!(run(1, 1, &[0, 1, 0]), vec![Miss, Miss, Miss]);
    }

    #[test]
    fn hand_simulated_lru() {
        use Access::*;
        // capacity 2, line 1: 0,1,0,2,1 -> M,M,H,M,M (1 evicted by 2)
        assert_eq!(run(2, 1, &[0, 1, 0, 2, 1]), vec![Miss, Miss, Hit, Miss, Miss]);
    }

    #[test]
    fn line_granularity() {
        use Access::*;
        // line of 4 elements: 0..3 share a line
        assert_eq!(run(1, 4, &[0, 1, 3, 4]), vec![Miss, Hit, Hit, Miss]);
    }

    /// Exact hit/miss sequence equality with a direct list-based reference
    /// on random traces.
    #[test]
    fn matches_list_reference_on_random_traces() {
        let mut rng = crate::data::SplitMix64::new(2024);
        for &(capacity, line, span) in
            &[(4usize, 1u64, 32u64), (16, 4, 512), (64, 8, 4096)]
        {
            let mut fast = LruCache::new(CacheConfig::new(capacity, line).unwrap());
            let mut reference: Vec<u64> = Vec::new();
            for _ in 0..100_000 {
                let addr = rng.next_below(span);
                let got = fast.access(addr);
                let want_line = addr / line;
                let want = if let Some(pos) =
                    reference.iter().position(|&l| l == want_line)
                {
                    reference.remove(pos);
                    reference.insert(0, want_line);
                    Access::Hit
                } else {
                    reference.insert(0, want_line);
                    if reference.len() > capacity {
                        reference.pop();
                    }
                    Access::Miss
                };
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn counters_are_consistent() {
        let mut rng = crate::data::SplitMix64::new(7);
        let mut c = LruCache::new(CacheConfig::new(8, 2).unwrap());
        for _ in 0..10_000 {
            c.access(rng.next_below(256));
        }
        let s = c.stats();
        assert_eq!(s.accesses, 10_000);
        assert!(s.misses <= s.accesses);
        assert!(s.evictions <= s.misses);
    }

    #[test]
    fn config_validation() {
        assert!(CacheConfig::new(0, 1).is_err());
        assert!(CacheConfig::new(1, 3).is_err());
        assert!(CacheConfig::new(1, 8).is_ok());
    }
}
