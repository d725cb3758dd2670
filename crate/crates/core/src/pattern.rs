//! N-dimensional binary patterns.
//!
//! A [`BinaryPattern`] is a dense k-dimensional array of foreground/background
//! cells stored in row-major order (last axis fastest). Cells outside the
//! array are treated as background everywhere in this crate.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern needs at least 2 dimensions, got {0}")]
    TooFewDimensions(usize),
    #[error("axis {axis} has zero extent")]
    ZeroExtent { axis: usize },
    #[error("shape {0:?} has too many cells")]
    ShapeOverflow(Vec<usize>),
    #[error("data has {actual} cells but shape needs {expected}")]
    DataLength { expected: usize, actual: usize },
    #[error("coordinate {coord} is outside shape {shape:?}")]
    OutOfBounds { coord: Coord, shape: Vec<usize> },
    #[error("expected {expected} dimensions, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("shapes differ: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("operation supports 2D patterns only, got {0} dimensions")]
    UnsupportedDimension(usize),
    #[error("axis {axis} out of range for {k}-dimensional pattern")]
    AxisOutOfRange { axis: usize, k: usize },
    #[error("cell {0} is background")]
    NotForeground(Coord),
}

/// A cell location, one index per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord(Vec<usize>);

impl Coord {
    pub fn new(indices: Vec<usize>) -> Self {
        Coord(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn ndim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl std::ops::Index<usize> for Coord {
    type Output = usize;

    fn index(&self, axis: usize) -> &usize {
        &self.0[axis]
    }
}

impl From<Vec<usize>> for Coord {
    fn from(v: Vec<usize>) -> Self {
        Coord(v)
    }
}

impl<const N: usize> From<[usize; N]> for Coord {
    fn from(v: [usize; N]) -> Self {
        Coord(v.to_vec())
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryPattern {
    shape: Vec<usize>,
    strides: Vec<usize>,
    data: Vec<bool>,
}

impl fmt::Debug for BinaryPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryPattern {:?}", self.shape)?;
        if self.ndim() == 2 {
            for row in self.data.chunks(self.shape[1]) {
                let line: String = row.iter().map(|&b| if b { '#' } else { '.' }).collect();
                writeln!(f, "{line}")?;
            }
        }
        Ok(())
    }
}

fn check_shape(shape: &[usize]) -> Result<usize, PatternError> {
    if shape.len() < 2 {
        return Err(PatternError::TooFewDimensions(shape.len()));
    }
    let mut len = 1usize;
    for (axis, &n) in shape.iter().enumerate() {
        if n == 0 {
            return Err(PatternError::ZeroExtent { axis });
        }
        len = len
            .checked_mul(n)
            .ok_or_else(|| PatternError::ShapeOverflow(shape.to_vec()))?;
    }
    Ok(len)
}

fn row_major_strides(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * shape[i + 1];
    }
    strides
}

impl BinaryPattern {
    /// All-background pattern of the given shape.
    pub fn new(shape: &[usize]) -> Result<Self, PatternError> {
        let len = check_shape(shape)?;
        Ok(BinaryPattern {
            shape: shape.to_vec(),
            strides: row_major_strides(shape),
            data: vec![false; len],
        })
    }

    pub fn from_data(shape: &[usize], data: Vec<bool>) -> Result<Self, PatternError> {
        let len = check_shape(shape)?;
        if data.len() != len {
            return Err(PatternError::DataLength {
                expected: len,
                actual: data.len(),
            });
        }
        Ok(BinaryPattern {
            shape: shape.to_vec(),
            strides: row_major_strides(shape),
            data,
        })
    }

    /// Builds a pattern from 0/1 values; any non-zero value is foreground.
    pub fn from_bits(shape: &[usize], bits: &[u8]) -> Result<Self, PatternError> {
        Self::from_data(shape, bits.iter().map(|&b| b != 0).collect())
    }

    /// Parses rows of `#`/`1` (foreground) and `.`/`0` (background) into a 2D pattern.
    /// Whitespace-only lines are skipped. Intended for tests and examples.
    pub fn from_ascii(art: &str) -> Result<Self, PatternError> {
        let rows: Vec<Vec<bool>> = art
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.chars().map(|c| c == '#' || c == '1').collect())
            .collect();
        let h = rows.len();
        let w = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != w) {
            return Err(PatternError::DataLength {
                expected: w,
                actual: bad.len(),
            });
        }
        Self::from_data(&[h, w], rows.into_iter().flatten().collect())
    }

    pub fn from_coords<'a, I>(shape: &[usize], coords: I) -> Result<Self, PatternError>
    where
        I: IntoIterator<Item = &'a [usize]>,
    {
        let mut p = Self::new(shape)?;
        for c in coords {
            let i = p.try_flat_index(c)?;
            p.data[i] = true;
        }
        Ok(p)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn ndim(&self) -> usize {
        self.shape.len()
    }

    /// Total number of cells.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[bool] {
        &self.data
    }

    pub fn in_bounds(&self, idx: &[usize]) -> bool {
        idx.len() == self.shape.len() && idx.iter().zip(&self.shape).all(|(&i, &n)| i < n)
    }

    pub fn flat_index(&self, idx: &[usize]) -> Option<usize> {
        if !self.in_bounds(idx) {
            return None;
        }
        Some(idx.iter().zip(&self.strides).map(|(i, s)| i * s).sum())
    }

    pub(crate) fn try_flat_index(&self, idx: &[usize]) -> Result<usize, PatternError> {
        if idx.len() != self.shape.len() {
            return Err(PatternError::DimensionMismatch {
                expected: self.shape.len(),
                actual: idx.len(),
            });
        }
        self.flat_index(idx).ok_or_else(|| PatternError::OutOfBounds {
            coord: Coord(idx.to_vec()),
            shape: self.shape.clone(),
        })
    }

    pub fn coord_of(&self, flat: usize) -> Coord {
        let mut rest = flat;
        Coord(
            self.strides
                .iter()
                .map(|&s| {
                    let i = rest / s;
                    rest %= s;
                    i
                })
                .collect(),
        )
    }

    /// Cell value; out-of-bounds reads are background.
    pub fn get(&self, idx: &[usize]) -> bool {
        self.flat_index(idx).is_some_and(|i| self.data[i])
    }

    /// Cell value at a possibly-negative position; outside is background.
    pub fn get_signed(&self, idx: &[isize]) -> bool {
        if idx.len() != self.shape.len() {
            return false;
        }
        let mut flat = 0usize;
        for ((&i, &n), &s) in idx.iter().zip(&self.shape).zip(&self.strides) {
            if i < 0 || i as usize >= n {
                return false;
            }
            flat += i as usize * s;
        }
        self.data[flat]
    }

    pub fn set(&mut self, idx: &[usize], value: bool) -> Result<(), PatternError> {
        let i = self.try_flat_index(idx)?;
        self.data[i] = value;
        Ok(())
    }

    #[inline]
    pub fn get_flat(&self, flat: usize) -> bool {
        self.data[flat]
    }

    #[inline]
    pub fn set_flat(&mut self, flat: usize, value: bool) {
        self.data[flat] = value;
    }

    pub fn count_foreground(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    /// Foreground cells in row-major (lexicographic) order.
    pub fn foreground(&self) -> impl Iterator<Item = Coord> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| self.coord_of(i))
    }

    /// True when every foreground cell of `self` is foreground in `other`.
    pub fn is_subset_of(&self, other: &BinaryPattern) -> bool {
        self.shape == other.shape && self.data.iter().zip(&other.data).all(|(&a, &b)| !a || b)
    }

    /// Mirror image along `axis`.
    pub fn reflect(&self, axis: usize) -> Result<BinaryPattern, PatternError> {
        if axis >= self.ndim() {
            return Err(PatternError::AxisOutOfRange {
                axis,
                k: self.ndim(),
            });
        }
        let mut out = BinaryPattern::new(&self.shape)?;
        let n = self.shape[axis];
        for (i, &b) in self.data.iter().enumerate() {
            if b {
                let mut c = self.coord_of(i).into_inner();
                c[axis] = n - 1 - c[axis];
                let j = out.flat_index(&c).expect("reflection stays in bounds");
                out.data[j] = true;
            }
        }
        Ok(out)
    }

    /// Swaps the two axes of a 2D pattern.
    pub fn transpose(&self) -> Result<BinaryPattern, PatternError> {
        self.require_2d()?;
        let (h, w) = (self.shape[0], self.shape[1]);
        let mut out = BinaryPattern::new(&[w, h])?;
        for r in 0..h {
            for c in 0..w {
                out.data[c * h + r] = self.data[r * w + c];
            }
        }
        Ok(out)
    }

    /// Quarter turn of a 2D pattern (transpose followed by a column flip).
    pub fn rotate90(&self) -> Result<BinaryPattern, PatternError> {
        self.transpose()?.reflect(1)
    }

    pub(crate) fn require_2d(&self) -> Result<(), PatternError> {
        if self.ndim() == 2 {
            Ok(())
        } else {
            Err(PatternError::UnsupportedDimension(self.ndim()))
        }
    }

    pub(crate) fn require_same_shape(&self, other: &BinaryPattern) -> Result<(), PatternError> {
        if self.shape == other.shape {
            Ok(())
        } else {
            Err(PatternError::ShapeMismatch {
                left: self.shape.clone(),
                right: other.shape.clone(),
            })
        }
    }
}

/// Precomputed 3^k neighbor displacements for one pattern shape.
///
/// Each entry carries the per-axis delta and the matching flat offset, so the
/// hot loops only need a bounds test before indexing.
#[derive(Debug, Clone)]
pub(crate) struct Stencil {
    deltas: Vec<Vec<i8>>,
    offsets: Vec<isize>,
}

impl Stencil {
    pub(crate) fn new(pattern: &BinaryPattern) -> Self {
        let k = pattern.ndim();
        let total = 3usize.pow(k as u32);
        let mut deltas = Vec::with_capacity(total);
        let mut offsets = Vec::with_capacity(total);
        for n in 0..total {
            let mut rest = n;
            let mut d = vec![0i8; k];
            // first axis most significant, so deltas come out lexicographic
            for axis in (0..k).rev() {
                d[axis] = (rest % 3) as i8 - 1;
                rest /= 3;
            }
            let off = d
                .iter()
                .zip(pattern.strides())
                .map(|(&x, &s)| x as isize * s as isize)
                .sum();
            deltas.push(d);
            offsets.push(off);
        }
        Stencil { deltas, offsets }
    }

    pub(crate) fn len(&self) -> usize {
        self.deltas.len()
    }

    pub(crate) fn delta(&self, n: usize) -> &[i8] {
        &self.deltas[n]
    }

    /// Flat index of neighbor `n` of the cell at `coord`/`flat`, if in bounds.
    #[inline]
    pub(crate) fn neighbor(
        &self,
        shape: &[usize],
        coord: &[usize],
        flat: usize,
        n: usize,
    ) -> Option<usize> {
        for ((&d, &c), &s) in self.deltas[n].iter().zip(coord).zip(shape) {
            if (d < 0 && c == 0) || (d > 0 && c + 1 >= s) {
                return None;
            }
        }
        Some((flat as isize + self.offsets[n]) as usize)
    }
}

/// The in-bounds 3^k block around a cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    pub center: Coord,
    /// In-bounds cells at Chebyshev distance ≤ 1, center included, lexicographic order.
    pub members: Vec<Coord>,
    pub foreground_count: usize,
}

impl Neighborhood {
    pub fn contains(&self, c: &Coord) -> bool {
        self.members.binary_search(c).is_ok()
    }
}

/// Neighborhood of `center`; cells past the array boundary are omitted.
pub fn neighborhood(pattern: &BinaryPattern, center: &Coord) -> Result<Neighborhood, PatternError> {
    let flat = pattern.try_flat_index(center.indices())?;
    let stencil = Stencil::new(pattern);
    let mut members = Vec::with_capacity(stencil.len());
    let mut foreground_count = 0;
    for n in 0..stencil.len() {
        if let Some(j) = stencil.neighbor(pattern.shape(), center.indices(), flat, n) {
            foreground_count += pattern.get_flat(j) as usize;
            members.push(pattern.coord_of(j));
        }
    }
    Ok(Neighborhood {
        center: center.clone(),
        members,
        foreground_count,
    })
}

/// Result of [`connected_components`]: label 0 is background, components are
/// numbered 1..=count in order of their first cell in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub count: usize,
    pub labels: Vec<u32>,
    shape: Vec<usize>,
}

impl Labeling {
    pub fn label_at(&self, c: &Coord) -> Option<u32> {
        let strides = row_major_strides(&self.shape);
        if c.ndim() != self.shape.len() || c.indices().iter().zip(&self.shape).any(|(i, n)| i >= n) {
            return None;
        }
        let flat: usize = c.indices().iter().zip(&strides).map(|(i, s)| i * s).sum();
        match self.labels[flat] {
            0 => None,
            l => Some(l),
        }
    }
}

/// Labels foreground components under (3^k − 1)-adjacency.
pub fn connected_components(pattern: &BinaryPattern) -> Labeling {
    let stencil = Stencil::new(pattern);
    let shape = pattern.shape();
    let mut labels = vec![0u32; pattern.len()];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for start in 0..pattern.len() {
        if !pattern.get_flat(start) || labels[start] != 0 {
            continue;
        }
        count += 1;
        labels[start] = count;
        stack.push(start);
        while let Some(cur) = stack.pop() {
            let coord = pattern.coord_of(cur);
            for n in 0..stencil.len() {
                if let Some(j) = stencil.neighbor(shape, coord.indices(), cur, n) {
                    if pattern.get_flat(j) && labels[j] == 0 {
                        labels[j] = count;
                        stack.push(j);
                    }
                }
            }
        }
    }
    Labeling {
        count: count as usize,
        labels,
        shape: shape.to_vec(),
    }
}

/// A 2D hit-or-miss template. Offsets are (row, column) relative to the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuringElement {
    pub hits: Vec<(isize, isize)>,
    pub misses: Vec<(isize, isize)>,
}

impl StructuringElement {
    /// The 2×2 all-foreground template with its origin at the given corner
    /// (`row_up`/`col_left` select which corner of the block the origin is).
    pub fn square2(row_up: bool, col_left: bool) -> Self {
        let dr = if row_up { 1 } else { -1 };
        let dc = if col_left { 1 } else { -1 };
        StructuringElement {
            hits: vec![(0, 0), (0, dc), (dr, 0), (dr, dc)],
            misses: Vec::new(),
        }
    }

    /// The four 2×2 templates used by the unit-width measure, one per corner origin.
    pub fn unit_width_set() -> [StructuringElement; 4] {
        [
            Self::square2(true, true),
            Self::square2(true, false),
            Self::square2(false, true),
            Self::square2(false, false),
        ]
    }
}

/// Hit-or-miss transform of a 2D pattern; returns the mask of matching origins.
pub fn hit_or_miss(
    pattern: &BinaryPattern,
    se: &StructuringElement,
) -> Result<BinaryPattern, PatternError> {
    pattern.require_2d()?;
    let (h, w) = (pattern.shape()[0], pattern.shape()[1]);
    let mut out = BinaryPattern::new(pattern.shape())?;
    for r in 0..h {
        for c in 0..w {
            let at = |&(dr, dc): &(isize, isize)| pattern.get_signed(&[r as isize + dr, c as isize + dc]);
            if se.hits.iter().all(at) && !se.misses.iter().any(at) {
                out.set_flat(r * w + c, true);
            }
        }
    }
    Ok(out)
}

/// Foreground pixels lying inside some all-foreground 2×2 window (2D only),
/// in row-major order.
pub fn non_unit_width_pixels(pattern: &BinaryPattern) -> Result<Vec<Coord>, PatternError> {
    let mask = non_unit_width_mask(pattern)?;
    Ok(mask.foreground().collect())
}

/// Union of the hit-or-miss transforms over the four 2×2 templates.
pub fn non_unit_width_mask(pattern: &BinaryPattern) -> Result<BinaryPattern, PatternError> {
    pattern.require_2d()?;
    let mut union = BinaryPattern::new(pattern.shape())?;
    for se in StructuringElement::unit_width_set() {
        let hits = hit_or_miss(pattern, &se)?;
        for (u, &h) in union.data.iter_mut().zip(hits.data()) {
            *u |= h;
        }
    }
    Ok(union)
}
