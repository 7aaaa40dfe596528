//! d-dimensional Hilbert curve via the Gray-code construction.
//!
//! Each level of recursion consumes one d-bit digit of the index. The digit
//! is mapped through the binary reflected Gray code and then through the
//! orientation of the current subcube, tracked as an (entry vertex, axis)
//! pair that is updated level by level. For d = 2 this reproduces the
//! classic curve with base motif (0,0) → (0,1) → (1,1) → (1,0).

#[inline]
pub(crate) fn gray(w: u64) -> u64 {
    w ^ (w >> 1)
}

/// Inverse Gray code for words of at most 8 bits.
#[inline]
pub(crate) fn gray_inv(g: u64) -> u64 {
    let mut w = g;
    w ^= w >> 1;
    w ^= w >> 2;
    w ^= w >> 4;
    w
}

/// Rotate right within an `n`-bit word.
#[inline]
fn rotr(b: u64, r: u32, n: u32) -> u64 {
    let r = r % n;
    let mask = (1u64 << n) - 1;
    ((b >> r) | (b << (n - r))) & mask
}

/// Rotate left within an `n`-bit word.
#[inline]
fn rotl(b: u64, r: u32, n: u32) -> u64 {
    let r = r % n;
    let mask = (1u64 << n) - 1;
    ((b << r) | (b >> (n - r))) & mask
}

/// Entry vertex of the w-th subcube along the Gray-code walk.
#[inline]
fn entry(w: u64) -> u64 {
    if w == 0 {
        0
    } else {
        gray(2 * ((w - 1) / 2))
    }
}

/// Axis along which the curve moves inside the w-th subcube.
#[inline]
fn direction(w: u64, n: u32) -> u32 {
    if w == 0 {
        0
    } else if w & 1 == 0 {
        (w - 1).trailing_ones() % n
    } else {
        w.trailing_ones() % n
    }
}

/// Orientation of a subcube: entry vertex and moving axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Frame {
    pub e: u64,
    pub d: u32,
}

impl Frame {
    pub(crate) const ROOT: Frame = Frame { e: 0, d: 0 };

    /// Orientation of the child subcube selected by digit `w`.
    #[inline]
    pub(crate) fn child(self, w: u64, n: u32) -> Frame {
        Frame {
            e: self.e ^ rotl(entry(w), self.d + 1, n),
            d: (self.d + direction(w, n) + 1) % n,
        }
    }

    /// Local cell of digit `w` under this orientation (bit j = axis j).
    #[inline]
    pub(crate) fn cell(self, w: u64, n: u32) -> u64 {
        rotl(gray(w), self.d + 1, n) ^ self.e
    }

    /// Digit whose local cell is `l` under this orientation.
    #[inline]
    pub(crate) fn digit(self, l: u64, n: u32) -> u64 {
        gray_inv(rotr(l ^ self.e, self.d + 1, n))
    }
}

pub(crate) fn index_to_point(dim: u32, order: u32, idx: u64, coords: &mut [u64]) {
    coords.fill(0);
    let mut frame = Frame::ROOT;
    let mask = (1u64 << dim) - 1;
    for lvl in (0..order).rev() {
        let w = (idx >> (lvl * dim)) & mask;
        let l = frame.cell(w, dim);
        for (j, c) in coords.iter_mut().enumerate() {
            *c |= ((l >> j) & 1) << lvl;
        }
        frame = frame.child(w, dim);
    }
}

pub(crate) fn point_to_index(dim: u32, order: u32, coords: &[u64]) -> u64 {
    let mut frame = Frame::ROOT;
    let mut h = 0u64;
    for lvl in (0..order).rev() {
        let mut l = 0u64;
        for (j, &c) in coords.iter().enumerate() {
            l |= ((c >> lvl) & 1) << j;
        }
        let w = frame.digit(l, dim);
        h = (h << dim) | w;
        frame = frame.child(w, dim);
    }
    h
}
