//! Z-order (Morton) curve: plain bit interleaving.
//!
//! Within each d-bit digit of the index, dimension 0 holds the most
//! significant bit, so the Z-order traversal refines lexicographic order.

pub(crate) fn index_to_point(dim: u32, order: u32, idx: u64, coords: &mut [u64]) {
    coords.fill(0);
    for lvl in 0..order {
        let w = idx >> (lvl * dim);
        for (j, c) in coords.iter_mut().enumerate() {
            *c |= ((w >> (dim - 1 - j as u32)) & 1) << lvl;
        }
    }
}

pub(crate) fn point_to_index(dim: u32, order: u32, coords: &[u64]) -> u64 {
    let mut idx = 0u64;
    for lvl in 0..order {
        for (j, &c) in coords.iter().enumerate() {
            idx |= ((c >> lvl) & 1) << (lvl * dim + dim - 1 - j as u32);
        }
    }
    idx
}

/// Digit ordering used by the generic stepper: the local cell of digit `w`
/// is `w` itself (bit `dim-1-j` of the digit is axis j's bit).
#[inline]
pub(crate) fn cell_of_digit(w: u64, dim: u32, axis: usize) -> u64 {
    (w >> (dim - 1 - axis as u32)) & 1
}
