//! Sequential slice-based thinning for k-dimensional patterns.
//!
//! Each sub-cycle scans every 1-D slice along one axis. Within a slice the
//! maximal foreground runs are visited in order; the run's forward contour
//! cell (highest index) and backward contour cell (lowest index) are tested
//! and, when deletable, cleared in place so later tests in the same pass see
//! the deletion.
//!
//! A contour cell `p` is kept when it is an end-point, or when some
//! foreground neighbor `F` lying beyond `p` along the axis has no foreground
//! cell in `S = N_F ∩ N_p − {p}`, where `N_F` holds the neighbors of `F` on
//! the near side of `F`. Otherwise `p` is deleted. The run interior next to
//! `p` is adjacent to every neighbor of `p` that is not beyond it, so a
//! non-empty `S` for every beyond-neighbor keeps the neighborhood connected.

use thiserror::Error;

use crate::pattern::{neighborhood, BinaryPattern, Coord, Neighborhood, PatternError, Stencil};
use crate::schedule::{Directions, Schedule, ScheduleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThinError {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("{coord} is not the {direction:?} end of a run along axis {axis}")]
    NotRunEnd {
        coord: Coord,
        axis: usize,
        direction: Direction,
    },
}

/// Which end of a run is being eroded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// The highest-index cell of the run.
    Forward,
    /// The lowest-index cell of the run.
    Backward,
}

impl Direction {
    fn sign(self) -> i8 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

/// A maximal foreground segment of one slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub axis: usize,
    /// Indices of every dimension except `axis`.
    pub fixed: Vec<usize>,
    pub back: usize,
    pub front: usize,
}

impl Run {
    /// Number of cells in the run.
    pub fn width(&self) -> usize {
        self.front - self.back + 1
    }

    pub fn coord_at(&self, index: usize) -> Coord {
        let mut c = self.fixed.clone();
        c.insert(self.axis, index);
        Coord::new(c)
    }

    pub fn back_coord(&self) -> Coord {
        self.coord_at(self.back)
    }

    pub fn front_coord(&self) -> Coord {
        self.coord_at(self.front)
    }
}

fn check_axis(pattern: &BinaryPattern, axis: usize) -> Result<(), PatternError> {
    if axis < pattern.ndim() {
        Ok(())
    } else {
        Err(PatternError::AxisOutOfRange {
            axis,
            k: pattern.ndim(),
        })
    }
}

/// Maximal foreground runs of the slice along `axis` whose other indices are `fixed`.
pub fn extract_runs(
    pattern: &BinaryPattern,
    axis: usize,
    fixed: &[usize],
) -> Result<Vec<Run>, PatternError> {
    check_axis(pattern, axis)?;
    let mut start = fixed.to_vec();
    if start.len() + 1 != pattern.ndim() {
        return Err(PatternError::DimensionMismatch {
            expected: pattern.ndim() - 1,
            actual: fixed.len(),
        });
    }
    start.insert(axis, 0);
    let base = pattern.try_flat_index(&start)?;
    let stride = pattern.strides()[axis];
    let n = pattern.shape()[axis];

    let mut runs = Vec::new();
    let mut t = 0;
    while t < n {
        if pattern.get_flat(base + t * stride) {
            let back = t;
            while t + 1 < n && pattern.get_flat(base + (t + 1) * stride) {
                t += 1;
            }
            runs.push(Run {
                axis,
                fixed: fixed.to_vec(),
                back,
                front: t,
            });
        }
        t += 1;
    }
    Ok(runs)
}

/// True when the 3^k block around `p` holds at most two foreground cells
/// (`p` included).
pub fn is_endpoint(pattern: &BinaryPattern, p: &Coord) -> Result<bool, PatternError> {
    let nb = neighborhood(pattern, p)?;
    if !pattern.get(p.indices()) {
        return Err(PatternError::NotForeground(p.clone()));
    }
    Ok(nb.foreground_count <= 2)
}

/// The sets tested for one (contour cell, beyond-neighbor) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletabilityContext {
    pub p: Coord,
    pub n_p: Neighborhood,
    pub f: Coord,
    /// Neighbors of `f` strictly on `p`'s side of `f` along the axis.
    pub n_f: Vec<Coord>,
    /// `n_f ∩ n_p − {p}`.
    pub s: Vec<Coord>,
}

impl DeletabilityContext {
    pub fn build(
        pattern: &BinaryPattern,
        p: &Coord,
        f: &Coord,
        axis: usize,
        direction: Direction,
    ) -> Result<Self, PatternError> {
        check_axis(pattern, axis)?;
        let n_p = neighborhood(pattern, p)?;
        let around_f = neighborhood(pattern, f)?;
        let n_f: Vec<Coord> = around_f
            .members
            .into_iter()
            .filter(|q| match direction {
                Direction::Forward => q[axis] < f[axis],
                Direction::Backward => q[axis] > f[axis],
            })
            .collect();
        let s = n_f
            .iter()
            .filter(|q| *q != p && n_p.contains(q))
            .cloned()
            .collect();
        Ok(DeletabilityContext {
            p: p.clone(),
            n_p,
            f: f.clone(),
            n_f,
            s,
        })
    }

    /// True when every cell of `s` is background, i.e. `p` bridges `f` to the run.
    pub fn requires_retention(&self, pattern: &BinaryPattern) -> bool {
        self.s.iter().all(|q| !pattern.get(q.indices()))
    }
}

/// One context per foreground neighbor of `p` lying beyond it along `axis`.
pub fn deletability_contexts(
    pattern: &BinaryPattern,
    p: &Coord,
    axis: usize,
    direction: Direction,
) -> Result<Vec<DeletabilityContext>, PatternError> {
    check_axis(pattern, axis)?;
    let n_p = neighborhood(pattern, p)?;
    n_p.members
        .iter()
        .filter(|f| pattern.get(f.indices()))
        .filter(|f| match direction {
            Direction::Forward => f[axis] > p[axis],
            Direction::Backward => f[axis] < p[axis],
        })
        .map(|f| DeletabilityContext::build(pattern, p, f, axis, direction))
        .collect()
}

/// Whether the contour cell `p` may be cleared during an erosion along `axis`.
pub fn contour_deletable(
    pattern: &BinaryPattern,
    p: &Coord,
    axis: usize,
    direction: Direction,
) -> Result<bool, ThinError> {
    check_axis(pattern, axis)?;
    let flat = pattern.try_flat_index(p.indices())?;
    if !pattern.get_flat(flat) {
        return Err(PatternError::NotForeground(p.clone()).into());
    }
    let mut beyond = p.indices().to_vec();
    let at_edge = match direction {
        Direction::Forward => beyond[axis] + 1 >= pattern.shape()[axis],
        Direction::Backward => beyond[axis] == 0,
    };
    if !at_edge {
        match direction {
            Direction::Forward => beyond[axis] += 1,
            Direction::Backward => beyond[axis] -= 1,
        }
        if pattern.get(&beyond) {
            return Err(ThinError::NotRunEnd {
                coord: p.clone(),
                axis,
                direction,
            });
        }
    }
    let stencil = Stencil::new(pattern);
    Ok(deletable(pattern, &stencil, p.indices(), flat, axis, direction))
}

/// Hot-path form of [`contour_deletable`] over flat indices and stencil deltas.
fn deletable(
    pattern: &BinaryPattern,
    stencil: &Stencil,
    coord: &[usize],
    flat: usize,
    axis: usize,
    direction: Direction,
) -> bool {
    let shape = pattern.shape();
    let fg = |n: usize| {
        stencil
            .neighbor(shape, coord, flat, n)
            .is_some_and(|j| pattern.get_flat(j))
    };

    let count = (0..stencil.len()).filter(|&n| fg(n)).count();
    if count <= 2 {
        return false;
    }

    let sign = direction.sign();
    for nf in 0..stencil.len() {
        let df = stencil.delta(nf);
        if df[axis] != sign || !fg(nf) {
            continue;
        }
        // S: same axis layer as p (one step back from F), adjacent to F, not p.
        let bridged = (0..stencil.len()).any(|nq| {
            let dq = stencil.delta(nq);
            dq[axis] == 0
                && dq.iter().any(|&x| x != 0)
                && dq.iter().zip(df).all(|(&a, &b)| (a - b).abs() <= 1)
                && fg(nq)
        });
        if !bridged {
            return false;
        }
    }
    true
}

fn subcycle(
    pattern: &mut BinaryPattern,
    stencil: &Stencil,
    axis: usize,
    directions: Directions,
) -> bool {
    let shape = pattern.shape().to_vec();
    let n = shape[axis];
    let stride = pattern.strides()[axis];
    let outer: usize = shape[..axis].iter().product();
    let mut changed = false;

    for o in 0..outer {
        for i in 0..stride {
            let base = o * n * stride + i;
            let mut coord = pattern.coord_of(base).into_inner();
            let mut t = 0;
            while t < n {
                if !pattern.get_flat(base + t * stride) {
                    t += 1;
                    continue;
                }
                let back = t;
                while t + 1 < n && pattern.get_flat(base + (t + 1) * stride) {
                    t += 1;
                }
                let front = t;
                t += 2;
                if front == back {
                    continue;
                }

                if directions.forward() {
                    let flat = base + front * stride;
                    coord[axis] = front;
                    if deletable(pattern, stencil, &coord, flat, axis, Direction::Forward) {
                        pattern.set_flat(flat, false);
                        changed = true;
                    }
                }
                // the cell after P_b must survive, else the run is already one cell wide
                if directions.backward() && pattern.get_flat(base + (back + 1) * stride) {
                    let flat = base + back * stride;
                    coord[axis] = back;
                    if deletable(pattern, stencil, &coord, flat, axis, Direction::Backward) {
                        pattern.set_flat(flat, false);
                        changed = true;
                    }
                }
            }
        }
    }
    changed
}

/// Runs one directional pass along `axis` in place. Returns whether any cell changed.
pub fn thin_subcycle(
    pattern: &mut BinaryPattern,
    axis: usize,
    directions: Directions,
) -> Result<bool, PatternError> {
    check_axis(pattern, axis)?;
    let stencil = Stencil::new(pattern);
    Ok(subcycle(pattern, &stencil, axis, directions))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinOutcome {
    pub skeleton: BinaryPattern,
    /// Full iterations across all phases, including each phase's final
    /// no-change iteration.
    pub iterations: usize,
}

/// Thins `pattern` under `schedule`. Each phase repeats its sub-cycles until
/// an iteration makes no change.
pub fn thin(pattern: &BinaryPattern, schedule: &Schedule) -> Result<ThinOutcome, ThinError> {
    schedule.validate(pattern.ndim())?;
    let stencil = Stencil::new(pattern);
    let mut work = pattern.clone();
    let mut iterations = 0;
    for phase in schedule.phases() {
        loop {
            iterations += 1;
            let mut changed = false;
            for sub in phase {
                changed |= subcycle(&mut work, &stencil, sub.axis, sub.directions);
            }
            if !changed {
                break;
            }
        }
    }
    Ok(ThinOutcome {
        skeleton: work,
        iterations,
    })
}

/// [`thin`] with [`Schedule::default_for`] the pattern's dimension.
pub fn thin_default(pattern: &BinaryPattern) -> ThinOutcome {
    thin(pattern, &Schedule::default_for(pattern.ndim())).expect("default schedule fits pattern")
}
