//! Replay a traversal's access pattern through the LRU model.

use std::path::Path;

use super::lru::{CacheConfig, LruCache, MissStats};
use super::pattern::AccessPattern;
use crate::curve::{CurveFamily, CurveSpec};
use crate::engine::{self, Visitor};
use crate::error::{Error, Result};

/// Traversal order under comparison. Row-major is the nested-loop
/// baseline; it is realized as the all-dimensions-monotone composite
/// order, which is exactly lexicographic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimOrder {
    RowMajor,
    Curve(CurveFamily),
}

impl SimOrder {
    pub fn name(self) -> &'static str {
        match self {
            SimOrder::RowMajor => "rowmajor",
            SimOrder::Curve(f) => f.name(),
        }
    }
}

impl std::str::FromStr for SimOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rowmajor" | "row-major" | "lex" => Ok(SimOrder::RowMajor),
            other => Ok(SimOrder::Curve(other.parse()?)),
        }
    }
}

struct ReplayVisitor<'a> {
    pattern: &'a dyn AccessPattern,
}

impl Visitor for ReplayVisitor<'_> {
    type Acc = (LruCache, Vec<u64>);

    fn init(&self) -> Self::Acc {
        unreachable!("replay accumulator is seeded by the caller")
    }

    fn visit(&self, tuple: &[u64], acc: &mut Self::Acc) -> Result<()> {
        let (cache, buf) = acc;
        buf.clear();
        self.pattern.addresses(tuple, buf);
        for &a in buf.iter() {
            cache.access(a);
        }
        Ok(())
    }

    fn merge(&self, left: Self::Acc, _right: Self::Acc) -> Self::Acc {
        left
    }
}

/// Single-agent replay of the pattern in the given order; deterministic.
pub fn simulate(
    pattern: &dyn AccessPattern,
    order: SimOrder,
    config: CacheConfig,
) -> Result<MissStats> {
    let domain = pattern.domain()?;
    let dim = domain.dim();
    let spec = match order {
        SimOrder::Curve(family) => CurveSpec::new(family, dim, 1)?,
        SimOrder::RowMajor => {
            let dims: Vec<usize> = (0..dim).collect();
            CurveSpec::new(CurveFamily::ZOrder, dim, 1)?.with_monotone_dims(&dims)?
        }
    };
    let visitor = ReplayVisitor { pattern };
    let mut acc = (LruCache::new(config), Vec::new());
    engine::traverse_with(&domain, &spec, &visitor, &mut acc)?;
    Ok(acc.0.stats())
}

/// One row of the comparison report.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CompareRow {
    pub curve: String,
    pub pattern: String,
    pub capacity: usize,
    pub line: u64,
    pub accesses: u64,
    pub misses: u64,
    pub evictions: u64,
}

/// Cartesian product of patterns × orders × configs through `simulate`.
pub fn compare_orders(
    patterns: &[&dyn AccessPattern],
    orders: &[SimOrder],
    configs: &[CacheConfig],
) -> Result<Vec<CompareRow>> {
    let mut rows = Vec::new();
    for &pattern in patterns {
        for &order in orders {
            for &config in configs {
                let stats = simulate(pattern, order, config)?;
                rows.push(CompareRow {
                    curve: order.name().to_string(),
                    pattern: pattern.name().to_string(),
                    capacity: config.capacity_lines,
                    line: config.line_elems,
                    accesses: stats.accesses,
                    misses: stats.misses,
                    evictions: stats.evictions,
                });
            }
        }
    }
    Ok(rows)
}

/// CSV report: curve,pattern,capacity,line,accesses,misses.
pub fn write_report_csv(path: &Path, rows: &[CompareRow]) -> Result<()> {
    use std::io::Write;
    let mut out = String::from("curve,pattern,capacity,line,accesses,misses\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.curve, r.pattern, r.capacity, r.line, r.accesses, r.misses
        ));
    }
    let mut f = std::fs::File::create(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    f.write_all(out.as_bytes()).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })
}
