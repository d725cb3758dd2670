//! Synthetic test solids.
//!
//! Every solid is centered in its grid. A cell is foreground when its center
//! satisfies the kind's implicit inequality, with coordinates measured from
//! the grid center `c_i = (N_i − 1) / 2`. Extents given as cell counts
//! (square side, rectangle sides, triangle base/height, solid heights) are
//! placed at offset `(N_i − extent) / 2`, so odd extents in odd grids are
//! exactly symmetric.
//!
//! Quadric solids are 3D with axis 2 as the height axis `z`:
//!
//! | kind | inequality | z range |
//! |------|------------|---------|
//! | cylinder | `x² + y² ≤ r²` | `height` cells |
//! | one-sheet hyperboloid | `(x² + y²)/a² − z²/c² ≤ 1` | `height` cells |
//! | two-sheet hyperboloid | `z²/c² − (x² + y²)/a² ≥ 1` | `height` cells |
//! | elliptic paraboloid | `x²/a² + y²/b² ≤ t`, `t = 0..height` from the apex | `height` cells |
//!
//! Library defaults for the quadrics when no size is given: `a = b = c = 3`
//! for the hyperboloids, `a = b = 2` for the paraboloid, and a height that
//! leaves one background layer above and below.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::pattern::{BinaryPattern, PatternError};

pub const DEFAULT_HYPERBOLOID_A: f64 = 3.0;
pub const DEFAULT_HYPERBOLOID_C: f64 = 3.0;
pub const DEFAULT_PARABOLOID_A: f64 = 2.0;
pub const DEFAULT_PARABOLOID_B: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShapeError {
    #[error("{kind} needs a {expected}D grid, got {actual}D")]
    WrongDimension {
        kind: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("{0} does not fit in the grid with a one-cell background margin")]
    Margin(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ShapeKind {
    Square { side: usize },
    /// `height` rows along axis 0, `width` columns along axis 1.
    Rectangle { height: usize, width: usize },
    Disc { radius: f64 },
    /// Isosceles, apex up (low row index), base on the last row.
    Triangle { base: usize, height: usize },
    Sphere { radius: f64 },
    Cylinder { radius: f64, height: usize },
    HyperboloidOneSheet { a: f64, c: f64, height: usize },
    HyperboloidTwoSheet { a: f64, c: f64, height: usize },
    EllipticParaboloid { a: f64, b: f64, height: usize },
}

impl ShapeKind {
    pub fn name(&self) -> &'static str {
        match self {
            ShapeKind::Square { .. } => "square",
            ShapeKind::Rectangle { .. } => "rectangle",
            ShapeKind::Disc { .. } => "disc",
            ShapeKind::Triangle { .. } => "triangle",
            ShapeKind::Sphere { .. } => "sphere",
            ShapeKind::Cylinder { .. } => "cylinder",
            ShapeKind::HyperboloidOneSheet { .. } => "hyperboloid1",
            ShapeKind::HyperboloidTwoSheet { .. } => "hyperboloid2",
            ShapeKind::EllipticParaboloid { .. } => "paraboloid",
        }
    }

    fn ndim(&self) -> usize {
        match self {
            ShapeKind::Square { .. }
            | ShapeKind::Rectangle { .. }
            | ShapeKind::Disc { .. }
            | ShapeKind::Triangle { .. } => 2,
            _ => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeSpec {
    pub kind: ShapeKind,
    pub grid: Vec<usize>,
}

impl ShapeSpec {
    pub fn new(kind: ShapeKind, grid: &[usize]) -> Self {
        ShapeSpec {
            kind,
            grid: grid.to_vec(),
        }
    }
}

/// Cells `[start, start + extent)` centered in `n`.
fn centered(n: usize, extent: usize) -> std::ops::Range<usize> {
    let start = n.saturating_sub(extent) / 2;
    start..start + extent
}

fn positive(name: &str, v: f64) -> Result<(), ShapeError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ShapeError::InvalidParameter(format!("{name} must be positive, got {v}")))
    }
}

fn nonzero(name: &str, v: usize) -> Result<(), ShapeError> {
    if v > 0 {
        Ok(())
    } else {
        Err(ShapeError::InvalidParameter(format!("{name} must be positive")))
    }
}

impl ShapeKind {
    fn validate(&self) -> Result<(), ShapeError> {
        match *self {
            ShapeKind::Square { side } => nonzero("side", side),
            ShapeKind::Rectangle { height, width } => {
                nonzero("height", height)?;
                nonzero("width", width)
            }
            ShapeKind::Disc { radius } | ShapeKind::Sphere { radius } => positive("radius", radius),
            ShapeKind::Triangle { base, height } => {
                nonzero("base", base)?;
                nonzero("height", height)
            }
            ShapeKind::Cylinder { radius, height } => {
                positive("radius", radius)?;
                nonzero("height", height)
            }
            ShapeKind::HyperboloidOneSheet { a, c, height }
            | ShapeKind::HyperboloidTwoSheet { a, c, height } => {
                positive("a", a)?;
                positive("c", c)?;
                nonzero("height", height)
            }
            ShapeKind::EllipticParaboloid { a, b, height } => {
                positive("a", a)?;
                positive("b", b)?;
                nonzero("height", height)
            }
        }
    }

    /// Whether the cell at `idx` is inside the solid.
    fn contains(&self, idx: &[usize], grid: &[usize]) -> bool {
        let rel = |axis: usize| idx[axis] as f64 - (grid[axis] as f64 - 1.0) / 2.0;
        let within = |axis: usize, extent: usize| centered(grid[axis], extent).contains(&idx[axis]);
        match *self {
            ShapeKind::Square { side } => within(0, side) && within(1, side),
            ShapeKind::Rectangle { height, width } => within(0, height) && within(1, width),
            ShapeKind::Disc { radius } => rel(0).powi(2) + rel(1).powi(2) <= radius * radius,
            ShapeKind::Triangle { base, height } => {
                let rows = centered(grid[0], height);
                if !rows.contains(&idx[0]) {
                    return false;
                }
                let t = (idx[0] - rows.start) as f64;
                let slope = if height > 1 { t / (height - 1) as f64 } else { 1.0 };
                rel(1).abs() <= (base as f64 - 1.0) / 2.0 * slope
            }
            ShapeKind::Sphere { radius } => {
                rel(0).powi(2) + rel(1).powi(2) + rel(2).powi(2) <= radius * radius
            }
            ShapeKind::Cylinder { radius, height } => {
                within(2, height) && rel(0).powi(2) + rel(1).powi(2) <= radius * radius
            }
            ShapeKind::HyperboloidOneSheet { a, c, height } => {
                within(2, height)
                    && (rel(0).powi(2) + rel(1).powi(2)) / (a * a) - rel(2).powi(2) / (c * c) <= 1.0
            }
            ShapeKind::HyperboloidTwoSheet { a, c, height } => {
                within(2, height)
                    && rel(2).powi(2) / (c * c) - (rel(0).powi(2) + rel(1).powi(2)) / (a * a) >= 1.0
            }
            ShapeKind::EllipticParaboloid { a, b, height } => {
                let zs = centered(grid[2], height);
                zs.contains(&idx[2]) && {
                    let t = (idx[2] - zs.start) as f64;
                    rel(0).powi(2) / (a * a) + rel(1).powi(2) / (b * b) <= t
                }
            }
        }
    }
}

/// Rasterizes the solid. Fails if any foreground cell would touch the grid boundary.
pub fn generate(spec: &ShapeSpec) -> Result<BinaryPattern, ShapeError> {
    let kind = &spec.kind;
    if spec.grid.len() != kind.ndim() {
        return Err(ShapeError::WrongDimension {
            kind: kind.name(),
            expected: kind.ndim(),
            actual: spec.grid.len(),
        });
    }
    kind.validate()?;
    let mut pattern = BinaryPattern::new(&spec.grid)?;
    for flat in 0..pattern.len() {
        let idx = pattern.coord_of(flat).into_inner();
        if kind.contains(&idx, &spec.grid) {
            let on_boundary = idx.iter().zip(&spec.grid).any(|(&i, &n)| i == 0 || i + 1 == n);
            if on_boundary {
                return Err(ShapeError::Margin(kind.name()));
            }
            pattern.set_flat(flat, true);
        }
    }
    Ok(pattern)
}

/// Boundary-noise parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuggedSpec {
    pub probability: f64,
    pub seed: u64,
}

/// Foreground cells with at least one background (or out-of-bounds)
/// face neighbor, as a mask.
pub fn boundary_mask(pattern: &BinaryPattern) -> BinaryPattern {
    let mut mask = BinaryPattern::new(pattern.shape()).expect("shape already valid");
    for flat in 0..pattern.len() {
        if !pattern.get_flat(flat) {
            continue;
        }
        let idx = pattern.coord_of(flat).into_inner();
        let exposed = (0..pattern.ndim()).any(|axis| {
            let s = pattern.strides()[axis];
            idx[axis] == 0
                || !pattern.get_flat(flat - s)
                || idx[axis] + 1 == pattern.shape()[axis]
                || !pattern.get_flat(flat + s)
        });
        mask.set_flat(flat, exposed);
    }
    mask
}

/// Independently clears each boundary cell with `spec.probability`.
/// Interior cells are never touched. Boundary cells are decided against the
/// input, and one draw is consumed per boundary cell in row-major order.
pub fn ruggedize(pattern: &BinaryPattern, spec: &RuggedSpec) -> Result<BinaryPattern, ShapeError> {
    if !(0.0..=1.0).contains(&spec.probability) {
        return Err(ShapeError::InvalidParameter(format!(
            "probability must be in [0, 1], got {}",
            spec.probability
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let boundary = boundary_mask(pattern);
    let mut out = pattern.clone();
    for flat in 0..pattern.len() {
        if boundary.get_flat(flat) && rng.gen::<f64>() < spec.probability {
            out.set_flat(flat, false);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gen(kind: ShapeKind, grid: &[usize]) -> Result<BinaryPattern, ShapeError> {
        generate(&ShapeSpec::new(kind, grid))
    }

    /// Integer lattice points within a ball, counted directly.
    fn lattice_ball(radius: i64, k: u32) -> usize {
        let r = radius;
        let range = -r..=r;
        match k {
            2 => range
                .clone()
                .flat_map(|x| range.clone().map(move |y| x * x + y * y))
                .filter(|&d| d <= r * r)
                .count(),
            3 => range
                .clone()
                .flat_map(|x| {
                    let range = range.clone();
                    range.clone().flat_map(move |y| range.clone().map(move |z| x * x + y * y + z * z))
                })
                .filter(|&d| d <= r * r)
                .count(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn generate_examples() {
        assert_eq!(gen(ShapeKind::Square { side: 5 }, &[7, 7]).unwrap().count_foreground(), 25);
        let disc = gen(ShapeKind::Disc { radius: 1.0 }, &[5, 5]).unwrap();
        assert_eq!(disc.count_foreground(), lattice_ball(1, 2));
        assert_eq!(disc.count_foreground(), 5);
        let sphere = gen(ShapeKind::Sphere { radius: 1.0 }, &[5, 5, 5]).unwrap();
        assert_eq!(sphere.count_foreground(), lattice_ball(1, 3));
        assert_eq!(sphere.count_foreground(), 7);
        let big = gen(ShapeKind::Disc { radius: 6.0 }, &[15, 15]).unwrap();
        assert_eq!(big.count_foreground(), lattice_ball(6, 2));
    }

    #[test]
    fn generate_errors() {
        assert_eq!(
            gen(ShapeKind::Square { side: 9 }, &[7, 7]),
            Err(ShapeError::Margin("square"))
        );
        assert_eq!(
            gen(ShapeKind::Square { side: 7 }, &[7, 7]),
            Err(ShapeError::Margin("square"))
        );
        assert!(matches!(
            gen(ShapeKind::Sphere { radius: 2.0 }, &[9, 9]),
            Err(ShapeError::WrongDimension { .. })
        ));
        assert!(matches!(
            gen(ShapeKind::Disc { radius: -1.0 }, &[9, 9]),
            Err(ShapeError::InvalidParameter(_))
        ));
    }

    #[test]
    fn triangle_rows_widen() {
        let t = gen(ShapeKind::Triangle { base: 5, height: 5 }, &[7, 7]).unwrap();
        let widths: Vec<usize> = (1..6)
            .map(|r| (0..7).filter(|&c| t.get(&[r, c])).count())
            .collect();
        assert_eq!(widths, vec![1, 1, 3, 3, 5]);
        assert_eq!(t, t.reflect(1).unwrap());
    }

    #[test]
    fn quadrics_fit_and_have_expected_profile() {
        let grid = [21, 21, 15];
        let h1 = gen(
            ShapeKind::HyperboloidOneSheet { a: 3.0, c: 3.0, height: 13 },
            &grid,
        )
        .unwrap();
        let slice_area = |p: &BinaryPattern, z: usize| {
            (0..21)
                .flat_map(|x| (0..21).map(move |y| (x, y)))
                .filter(|&(x, y)| p.get(&[x, y, z]))
                .count()
        };
        // waist at the center layer, flaring outward
        assert!(slice_area(&h1, 7) < slice_area(&h1, 1));
        let h2 = gen(
            ShapeKind::HyperboloidTwoSheet { a: 3.0, c: 3.0, height: 13 },
            &grid,
        )
        .unwrap();
        assert_eq!(slice_area(&h2, 7), 0);
        assert!(slice_area(&h2, 1) > 0 && slice_area(&h2, 13) > 0);
        let par = gen(
            ShapeKind::EllipticParaboloid { a: 2.0, b: 2.0, height: 13 },
            &grid,
        )
        .unwrap();
        assert_eq!(slice_area(&par, 1), 1);
        assert!(slice_area(&par, 13) > slice_area(&par, 7));
        let cyl = gen(ShapeKind::Cylinder { radius: 4.0, height: 9 }, &grid).unwrap();
        assert_eq!(cyl.count_foreground(), 9 * lattice_ball(4, 2));
    }

    #[test]
    fn ruggedize_extremes() {
        let sq = gen(ShapeKind::Square { side: 5 }, &[7, 7]).unwrap();
        let spec = |probability| RuggedSpec { probability, seed: 7 };
        assert_eq!(ruggedize(&sq, &spec(0.0)).unwrap(), sq);
        let stripped = ruggedize(&sq, &spec(1.0)).unwrap();
        assert_eq!(stripped, gen(ShapeKind::Square { side: 3 }, &[7, 7]).unwrap());
        assert_eq!(ruggedize(&sq, &spec(0.4)).unwrap(), ruggedize(&sq, &spec(0.4)).unwrap());
        assert!(ruggedize(&sq, &spec(1.5)).is_err());
    }

    #[test]
    fn seeds_change_the_noise() {
        let d = gen(ShapeKind::Disc { radius: 10.0 }, &[25, 25]).unwrap();
        let a = ruggedize(&d, &RuggedSpec { probability: 0.5, seed: 1 }).unwrap();
        let b = ruggedize(&d, &RuggedSpec { probability: 0.5, seed: 2 }).unwrap();
        assert_ne!(a, b);
    }

    fn symmetric_kind() -> impl Strategy<Value = (ShapeKind, Vec<usize>)> {
        let odd = |lo: usize, hi: usize| (lo..hi).prop_map(|v| 2 * v + 1);
        prop_oneof![
            (odd(0, 5), odd(6, 9)).prop_map(|(s, n)| (ShapeKind::Square { side: s }, vec![n, n])),
            (odd(0, 5), odd(0, 5), odd(6, 9))
                .prop_map(|(h, w, n)| (ShapeKind::Rectangle { height: h, width: w }, vec![n, n + 2])),
            (0.5f64..6.0, odd(7, 9)).prop_map(|(r, n)| (ShapeKind::Disc { radius: r }, vec![n, n])),
            (0.5f64..5.0, odd(6, 7))
                .prop_map(|(r, n)| (ShapeKind::Sphere { radius: r }, vec![n, n, n])),
            (0.5f64..5.0, odd(0, 5), odd(6, 7))
                .prop_map(|(r, h, n)| (ShapeKind::Cylinder { radius: r, height: h }, vec![n, n, n])),
            (1.0f64..3.0, 1.0f64..4.0, odd(0, 3)).prop_map(|(a, c, h)| (
                ShapeKind::HyperboloidOneSheet { a, c, height: h },
                vec![25, 25, 9]
            )),
            (1.0f64..3.0, 0.5f64..2.0, odd(0, 3)).prop_map(|(a, c, h)| (
                ShapeKind::HyperboloidTwoSheet { a, c, height: h },
                vec![25, 25, 9]
            )),
        ]
    }

    proptest! {
        #[test]
        fn symmetric_kinds_mirror_about_every_axis((kind, grid) in symmetric_kind()) {
            if let Ok(p) = gen(kind, &grid) {
                for axis in 0..grid.len() {
                    prop_assert_eq!(&p.reflect(axis).unwrap(), &p);
                }
            }
        }

        #[test]
        fn ruggedize_only_strips_boundary(r in 2.0f64..9.0, prob in 0.0f64..=1.0, seed in any::<u64>()) {
            let d = gen(ShapeKind::Disc { radius: r }, &[21, 21]).unwrap();
            let out = ruggedize(&d, &RuggedSpec { probability: prob, seed }).unwrap();
            prop_assert!(out.is_subset_of(&d));
            let boundary = boundary_mask(&d);
            for i in 0..d.len() {
                if d.get_flat(i) && !boundary.get_flat(i) {
                    prop_assert!(out.get_flat(i));
                }
            }
        }
    }
}
