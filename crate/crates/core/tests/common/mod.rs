//! Test-only helpers: a naive 2D step-trace of the sequential thinning
//! procedure and seeded random corpora.
//!
//! The trace works on `Vec<Vec<u8>>` with coordinate tuples and hash sets,
//! mirroring the row/column pseudocode literally. It shares no code with the
//! library's stencil-based implementation.

#![allow(dead_code)]

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqthin::BinaryPattern;

pub type Grid = Vec<Vec<u8>>;

fn at(img: &Grid, (x, y): (isize, isize)) -> u8 {
    if x < 0 || y < 0 {
        return 0;
    }
    img.get(x as usize)
        .and_then(|row| row.get(y as usize))
        .copied()
        .unwrap_or(0)
}

fn nbr_locs((x, y): (isize, isize)) -> Vec<(isize, isize)> {
    vec![
        (x - 1, y - 1),
        (x - 1, y),
        (x - 1, y + 1),
        (x, y - 1),
        (x, y),
        (x, y + 1),
        (x + 1, y - 1),
        (x + 1, y),
        (x + 1, y + 1),
    ]
}

fn component(p: (isize, isize), axis: usize) -> isize {
    if axis == 0 {
        p.0
    } else {
        p.1
    }
}

/// `sign` = +1 tests a forward pixel, −1 a backward pixel.
fn oracle_deletable(img: &Grid, p: (isize, isize), axis: usize, sign: isize) -> bool {
    let n_p = nbr_locs(p);
    let sum: u32 = n_p.iter().map(|&q| at(img, q) as u32).sum();
    if sum <= 2 {
        return false;
    }
    let n_p_set: HashSet<_> = n_p.iter().copied().collect();
    for &nbr in &n_p {
        let beyond = (component(nbr, axis) - component(p, axis)) * sign > 0;
        if !beyond || at(img, nbr) != 1 {
            continue;
        }
        let n_f: HashSet<_> = nbr_locs(nbr)
            .into_iter()
            .filter(|&n| (component(nbr, axis) - component(n, axis)) * sign > 0)
            .collect();
        let s: Vec<_> = n_f.intersection(&n_p_set).filter(|&&q| q != p).collect();
        if s.iter().map(|&&q| at(img, q) as u32).sum::<u32>() == 0 {
            return false;
        }
    }
    true
}

fn oracle_pass(img: &mut Grid, axis: usize, fwd: bool, bwd: bool) {
    let h = img.len() as isize;
    let w = img[0].len() as isize;
    let (outer, inner) = if axis == 1 { (h, w) } else { (w, h) };
    let loc = |o: isize, t: isize| if axis == 1 { (o, t) } else { (t, o) };
    for o in 0..outer {
        let mut t = 0;
        while t < inner {
            if at(img, loc(o, t)) == 1 {
                let pb = t;
                while t < inner && at(img, loc(o, t)) == 1 {
                    t += 1;
                }
                let pf = t - 1;
                if pf != pb {
                    if fwd && oracle_deletable(img, loc(o, pf), axis, 1) {
                        let (x, y) = loc(o, pf);
                        img[x as usize][y as usize] = 0;
                    }
                    if bwd && at(img, loc(o, pb + 1)) == 1 && oracle_deletable(img, loc(o, pb), axis, -1) {
                        let (x, y) = loc(o, pb);
                        img[x as usize][y as usize] = 0;
                    }
                }
            } else {
                t += 1;
            }
        }
    }
}

/// Single-phase schedule given as (axis, forward, backward) passes.
pub fn oracle_thin(img: &Grid, passes: &[(usize, bool, bool)]) -> (Grid, usize) {
    let mut img = img.clone();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let before = img.clone();
        for &(axis, f, b) in passes {
            oracle_pass(&mut img, axis, f, b);
        }
        if img == before {
            return (img, iterations);
        }
    }
}

pub fn to_grid(p: &BinaryPattern) -> Grid {
    assert_eq!(p.ndim(), 2);
    p.data()
        .chunks(p.shape()[1])
        .map(|r| r.iter().map(|&b| b as u8).collect())
        .collect()
}

pub fn from_grid(g: &Grid) -> BinaryPattern {
    let h = g.len();
    let w = g[0].len();
    BinaryPattern::from_bits(&[h, w], &g.concat()).unwrap()
}

pub fn render(g: &Grid) -> String {
    g.iter()
        .map(|r| r.iter().map(|&b| if b == 1 { '#' } else { '.' }).collect::<String>())
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn random_pattern(rng: &mut ChaCha8Rng, shape: &[usize], density: f64) -> BinaryPattern {
    let n: usize = shape.iter().product();
    let data = (0..n).map(|_| rng.gen::<f64>() < density).collect();
    BinaryPattern::from_data(shape, data).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// True when no 2×2 window is entirely foreground (direct scan).
pub fn is_unit_width(p: &BinaryPattern) -> bool {
    let (h, w) = (p.shape()[0], p.shape()[1]);
    for r in 0..h.saturating_sub(1) {
        for c in 0..w.saturating_sub(1) {
            if p.get(&[r, c]) && p.get(&[r, c + 1]) && p.get(&[r + 1, c]) && p.get(&[r + 1, c + 1]) {
                return false;
            }
        }
    }
    true
}
