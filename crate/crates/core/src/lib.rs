//! Sequential thinning of k-dimensional binary patterns.
//!
//! The main entry point is [`thin`], which erodes run contours slice by slice
//! under a configurable [`Schedule`] while keeping end-points and
//! connectivity. [`zs_thin`] and [`gh_thin`] provide the classic 2D
//! Zhang-Suen and Guo-Hall parallel algorithms for comparison, and
//! [`metrics`] scores skeletons.
//!
//! ```
//! use seqthin::{thin, BinaryPattern, Schedule};
//!
//! let square = BinaryPattern::from_data(&[7, 7], vec![true; 49]).unwrap();
//! let out = thin(&square, &"1fb".parse::<Schedule>().unwrap()).unwrap();
//! // east-west erosion leaves the center column
//! assert!((0..7).all(|r| out.skeleton.get(&[r, 3])));
//! assert_eq!(out.skeleton.count_foreground(), 7);
//! ```

pub mod baselines;
pub mod io;
pub mod metrics;
pub mod pattern;
pub mod schedule;
pub mod shapes;
pub mod thin;

pub use baselines::{gh_thin, zs_thin};
pub use metrics::{evaluate, measure_mt, size_ratio, MetricsReport};
pub use pattern::{connected_components, neighborhood, non_unit_width_pixels, BinaryPattern, Coord};
pub use schedule::{Directions, Schedule, SubCycle};
pub use thin::{thin, thin_default, thin_subcycle, ThinOutcome};
