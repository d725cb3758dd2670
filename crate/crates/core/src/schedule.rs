//! Erosion schedules: which axes and contour directions each thinning
//! iteration visits.
//!
//! Text form: `phase (';' phase)*`, `phase := sub (',' sub)*`,
//! `sub := AXIS ('f' | 'b' | 'fb')`. `f` erodes forward contours (highest
//! index of each run), `b` backward contours (lowest index).
//!
//! ```
//! use seqthin::Schedule;
//! let s: Schedule = "2fb;1fb,0fb".parse().unwrap();
//! assert_eq!(s.phases().len(), 2);
//! assert_eq!(s.to_string(), "2fb;1fb,0fb");
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("schedule has no phases")]
    Empty,
    #[error("phase {0} has no sub-cycles")]
    EmptyPhase(usize),
    #[error("axis {axis} out of range for {k}-dimensional pattern")]
    AxisOutOfRange { axis: usize, k: usize },
    #[error("bad sub-cycle {0:?}: expected AXIS followed by f, b or fb")]
    BadSubCycle(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Directions {
    Forward,
    Backward,
    Both,
}

impl Directions {
    pub fn forward(self) -> bool {
        matches!(self, Directions::Forward | Directions::Both)
    }

    pub fn backward(self) -> bool {
        matches!(self, Directions::Backward | Directions::Both)
    }

    fn suffix(self) -> &'static str {
        match self {
            Directions::Forward => "f",
            Directions::Backward => "b",
            Directions::Both => "fb",
        }
    }
}

/// One directional erosion pass along a single axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubCycle {
    pub axis: usize,
    pub directions: Directions,
}

impl SubCycle {
    pub fn new(axis: usize, directions: Directions) -> Self {
        SubCycle { axis, directions }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schedule {
    phases: Vec<Vec<SubCycle>>,
}

impl Schedule {
    pub fn new(phases: Vec<Vec<SubCycle>>) -> Result<Self, ScheduleError> {
        if phases.is_empty() {
            return Err(ScheduleError::Empty);
        }
        if let Some(i) = phases.iter().position(Vec::is_empty) {
            return Err(ScheduleError::EmptyPhase(i));
        }
        Ok(Schedule { phases })
    }

    /// One phase, every axis once in both directions, last (fastest-varying)
    /// axis first. For 2D this is `1fb,0fb`.
    pub fn default_for(k: usize) -> Self {
        let phase = (0..k)
            .rev()
            .map(|axis| SubCycle::new(axis, Directions::Both))
            .collect();
        Schedule {
            phases: vec![phase],
        }
    }

    pub fn single_phase(subs: Vec<SubCycle>) -> Result<Self, ScheduleError> {
        Self::new(vec![subs])
    }

    pub fn phases(&self) -> &[Vec<SubCycle>] {
        &self.phases
    }

    pub fn validate(&self, k: usize) -> Result<(), ScheduleError> {
        for sub in self.phases.iter().flatten() {
            if sub.axis >= k {
                return Err(ScheduleError::AxisOutOfRange { axis: sub.axis, k });
            }
        }
        Ok(())
    }
}

fn parse_sub(text: &str) -> Result<SubCycle, ScheduleError> {
    let bad = || ScheduleError::BadSubCycle(text.to_string());
    let split = text.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
    let (digits, suffix) = text.split_at(split);
    if digits.is_empty() {
        return Err(bad());
    }
    let axis = digits.parse().map_err(|_| bad())?;
    let directions = match suffix {
        "f" => Directions::Forward,
        "b" => Directions::Backward,
        "fb" => Directions::Both,
        _ => return Err(bad()),
    };
    Ok(SubCycle { axis, directions })
}

impl FromStr for Schedule {
    type Err = ScheduleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Err(ScheduleError::Empty);
        }
        let phases = s
            .split(';')
            .map(|phase| phase.split(',').map(|sub| parse_sub(sub.trim())).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Schedule::new(phases)
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, phase) in self.phases.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            for (j, sub) in phase.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}{}", sub.axis, sub.directions.suffix())?;
            }
        }
        Ok(())
    }
}
