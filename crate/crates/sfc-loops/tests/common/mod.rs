//! Reference constructions shared by the integration tests. Everything in
//! here is deliberately independent of the library's decode/encode paths:
//! curves are built by explicit list recursion, domains by brute-force
//! enumeration.

#![allow(dead_code)]

/// 2-D Hilbert curve of order `k` by direct recursive construction: the
/// base motif (0,0),(0,1),(1,1),(1,0) refined with a transposed first
/// quadrant, translated middle quadrants and an anti-transposed last
/// quadrant.
pub fn hilbert_points_2d(k: u32) -> Vec<(u64, u64)> {
    if k == 0 {
        return vec![(0, 0)];
    }
    let prev = hilbert_points_2d(k - 1);
    let h = 1u64 << (k - 1);
    let mut out = Vec::with_capacity(prev.len() * 4);
    for &(x, y) in &prev {
        out.push((y, x));
    }
    for &(x, y) in &prev {
        out.push((x, y + h));
    }
    for &(x, y) in &prev {
        out.push((x + h, y + h));
    }
    for &(x, y) in &prev {
        out.push((2 * h - 1 - y, h - 1 - x));
    }
    out
}

/// 2-D Peano curve of order `k` by direct recursive construction: nine
/// subsquares in serpentine order, each holding a copy of the previous
/// order reflected per axis.
pub fn peano_points_2d(k: u32) -> Vec<(u64, u64)> {
    if k == 0 {
        return vec![(0, 0)];
    }
    let prev = peano_points_2d(k - 1);
    let h = 3u64.pow(k - 1);
    let mut out = Vec::with_capacity(prev.len() * 9);
    for w in 0..9u64 {
        let (a0, a1) = (w / 3, w % 3);
        let c0 = a0;
        let c1 = if a0 & 1 == 1 { 2 - a1 } else { a1 };
        let (f0, f1) = (a1 & 1 == 1, a0 & 1 == 1);
        for &(x, y) in &prev {
            let rx = if f0 { h - 1 - x } else { x };
            let ry = if f1 { h - 1 - y } else { y };
            out.push((c0 * h + rx, c1 * h + ry));
        }
    }
    out
}

/// All tuples of a bounded box, optionally filtered, in lexicographic order.
pub fn enumerate_box(bounds: &[u64], keep: impl Fn(&[u64]) -> bool) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; bounds.len()];
    loop {
        if keep(&cur) {
            out.push(cur.clone());
        }
        let mut axis = bounds.len();
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            cur[axis] += 1;
            if cur[axis] < bounds[axis] {
                break;
            }
            cur[axis] = 0;
        }
    }
}
