//! Zhang-Suen and Guo-Hall two-sub-iteration parallel thinning (2D only).
//!
//! Neighbor labels follow the usual clockwise layout around the center `P1`
//! at (row, col):
//!
//! ```text
//!   P9 P2 P3        (r-1,c-1) (r-1,c) (r-1,c+1)
//!   P8 P1 P4   =    (r,  c-1) (r,  c) (r,  c+1)
//!   P7 P6 P5        (r+1,c-1) (r+1,c) (r+1,c+1)
//! ```
//!
//! Each sub-iteration first marks every deletable pixel against the pattern
//! as it stood when the sub-iteration began, then clears all marks at once.

use crate::pattern::{BinaryPattern, PatternError};
use crate::thin::ThinOutcome;

/// The eight neighbors P2..P9 of a pixel. Out-of-bounds cells read as background.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ring([bool; 8]);

const RING_OFFSETS: [(isize, isize); 8] = [
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
];

impl Ring {
    pub fn read(pattern: &BinaryPattern, row: usize, col: usize) -> Self {
        let mut v = [false; 8];
        for (slot, (dr, dc)) in v.iter_mut().zip(RING_OFFSETS) {
            *slot = pattern.get_signed(&[row as isize + dr, col as isize + dc]);
        }
        Ring(v)
    }

    /// Ring from an 8-bit mask; bit `i` is `P(i+2)`.
    pub fn from_mask(mask: u8) -> Self {
        let mut v = [false; 8];
        for (i, slot) in v.iter_mut().enumerate() {
            *slot = mask >> i & 1 == 1;
        }
        Ring(v)
    }

    /// Neighbor `P_i` for `i` in 2..=9.
    #[inline]
    pub fn p(&self, i: usize) -> bool {
        self.0[i - 2]
    }

    fn u(&self, i: usize) -> u8 {
        self.p(i) as u8
    }
}

/// Zhang-Suen quantities for one pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZsContext {
    pub ring: Ring,
    /// Foreground neighbors.
    pub bp: u8,
    /// 0→1 transitions in the cyclic sequence P2, P3, ..., P9, P2.
    pub ap: u8,
}

impl ZsContext {
    pub fn new(ring: Ring) -> Self {
        let bp = ring.0.iter().filter(|&&b| b).count() as u8;
        let ap = (0..8).filter(|&i| !ring.0[i] && ring.0[(i + 1) % 8]).count() as u8;
        ZsContext { ring, bp, ap }
    }

    /// Deletion test for sub-iteration 1 (`first = true`) or 2.
    pub fn deletable(&self, first: bool) -> bool {
        let p = |i| self.ring.p(i);
        let directional = if first {
            !(p(2) && p(4) && p(6)) && !(p(4) && p(6) && p(8))
        } else {
            !(p(2) && p(4) && p(8)) && !(p(2) && p(6) && p(8))
        };
        (2..=6).contains(&self.bp) && self.ap == 1 && directional
    }
}

/// Guo-Hall quantities for one pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GhContext {
    pub ring: Ring,
    pub np1: u8,
    pub np2: u8,
    pub np: u8,
    /// Number of 8-connected foreground components in the ring; reads 0 when
    /// all four edge neighbors are foreground.
    pub cp: u8,
}

impl GhContext {
    pub fn new(ring: Ring) -> Self {
        let u = |i| ring.u(i);
        let or = |a, b| u(a) | u(b);
        let np1 = or(9, 2) + or(3, 4) + or(5, 6) + or(7, 8);
        let np2 = or(2, 3) + or(4, 5) + or(6, 7) + or(8, 9);
        let cp = (1 - u(2)) * or(3, 4)
            + (1 - u(4)) * or(5, 6)
            + (1 - u(6)) * or(7, 8)
            + (1 - u(8)) * or(9, 2);
        GhContext {
            ring,
            np1,
            np2,
            np: np1.min(np2),
            cp,
        }
    }

    /// Deletion test for the odd (`first = true`) or even sub-iteration.
    pub fn deletable(&self, first: bool) -> bool {
        let p = |i| self.ring.p(i);
        let directional = if first {
            (p(2) || p(3) || !p(5)) && p(4)
        } else {
            (p(6) || p(7) || !p(9)) && p(8)
        };
        self.cp == 1 && (2..=3).contains(&self.np) && !directional
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Baseline {
    ZhangSuen,
    GuoHall,
}

impl Baseline {
    fn deletable(self, ring: Ring, first: bool) -> bool {
        match self {
            Baseline::ZhangSuen => ZsContext::new(ring).deletable(first),
            Baseline::GuoHall => GhContext::new(ring).deletable(first),
        }
    }
}

/// Flat indices of the pixels one sub-iteration would delete.
fn mark(pattern: &BinaryPattern, algo: Baseline, first: bool) -> Vec<usize> {
    let w = pattern.shape()[1];
    pattern
        .data()
        .iter()
        .enumerate()
        .filter(|(i, &b)| b && algo.deletable(Ring::read(pattern, i / w, i % w), first))
        .map(|(i, _)| i)
        .collect()
}

fn sweep(pattern: &mut BinaryPattern, marked: &[usize]) -> bool {
    for &i in marked {
        pattern.set_flat(i, false);
    }
    !marked.is_empty()
}

fn run(pattern: &BinaryPattern, algo: Baseline) -> Result<ThinOutcome, PatternError> {
    pattern.require_2d()?;
    let mut work = pattern.clone();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let m1 = mark(&work, algo, true);
        let d1 = sweep(&mut work, &m1);
        let m2 = mark(&work, algo, false);
        let d2 = sweep(&mut work, &m2);
        if !(d1 || d2) {
            break;
        }
    }
    Ok(ThinOutcome {
        skeleton: work,
        iterations,
    })
}

/// Zhang-Suen thinning. `iterations` counts the final no-change iteration.
pub fn zs_thin(pattern: &BinaryPattern) -> Result<ThinOutcome, PatternError> {
    run(pattern, Baseline::ZhangSuen)
}

/// Guo-Hall thinning. `iterations` counts the final no-change iteration.
pub fn gh_thin(pattern: &BinaryPattern) -> Result<ThinOutcome, PatternError> {
    run(pattern, Baseline::GuoHall)
}
