//! 2-D Peano curve on a 3^k × 3^k grid.
//!
//! Each level consumes one base-9 digit, split into a ternary digit pair
//! (a0 driving axis 0, a1 driving axis 1). A digit's cell is the digit
//! itself or its complement 2−digit, depending on two reflection parities
//! carried down the recursion; this is the classic serpentine construction,
//! continuous with L1 step 1 and starting at the origin.

/// Reflection state: whether axis 0 / axis 1 digits are complemented at the
/// current recursion level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Parity {
    pub flip0: bool,
    pub flip1: bool,
}

impl Parity {
    pub(crate) const ROOT: Parity = Parity {
        flip0: false,
        flip1: false,
    };

    /// State for the subsquare selected by digit `w` (0..9).
    #[inline]
    pub(crate) fn child(self, w: u64) -> Parity {
        let (a0, a1) = (w / 3, w % 3);
        Parity {
            flip0: self.flip0 ^ (a1 & 1 == 1),
            flip1: self.flip1 ^ (a0 & 1 == 1),
        }
    }

    /// Local cell (per-axis ternary digits) of digit `w` under this state.
    #[inline]
    pub(crate) fn cell(self, w: u64) -> (u64, u64) {
        let (a0, a1) = (w / 3, w % 3);
        let c0 = if self.flip0 { 2 - a0 } else { a0 };
        let c1 = if self.flip1 ^ (a0 & 1 == 1) { 2 - a1 } else { a1 };
        (c0, c1)
    }

    /// Digit whose local cell is `(c0, c1)` under this state.
    #[inline]
    pub(crate) fn digit(self, c0: u64, c1: u64) -> u64 {
        let a0 = if self.flip0 { 2 - c0 } else { c0 };
        let a1 = if self.flip1 ^ (a0 & 1 == 1) { 2 - c1 } else { c1 };
        a0 * 3 + a1
    }
}

pub(crate) fn index_to_point(order: u32, idx: u64, coords: &mut [u64]) {
    let mut st = Parity::ROOT;
    let (mut x, mut y) = (0u64, 0u64);
    for lvl in (0..order).rev() {
        let w = (idx / 9u64.pow(lvl)) % 9;
        let (c0, c1) = st.cell(w);
        x = x * 3 + c0;
        y = y * 3 + c1;
        st = st.child(w);
    }
    coords[0] = x;
    coords[1] = y;
}

pub(crate) fn point_to_index(order: u32, coords: &[u64]) -> u64 {
    let mut st = Parity::ROOT;
    let mut idx = 0u64;
    for lvl in (0..order).rev() {
        let c0 = (coords[0] / 3u64.pow(lvl)) % 3;
        let c1 = (coords[1] / 3u64.pow(lvl)) % 3;
        let w = st.digit(c0, c1);
        idx = idx * 9 + w;
        st = st.child(w);
    }
    idx
}
