//! Skeleton quality measures: convergence to unit width (`m_t`), size ratio
//! (`s_r`, sometimes written `D_r`), iteration count and the change in
//! connected-component count.

use std::fmt::Write as _;

use thiserror::Error;

use crate::pattern::{connected_components, non_unit_width_mask, BinaryPattern, PatternError};
use crate::thin::ThinOutcome;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("metric undefined: {0} has no foreground pixels")]
    Undefined(&'static str),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// `1 − |pixels inside some all-foreground 2×2 window| / |foreground|`.
pub fn measure_mt(skeleton: &BinaryPattern) -> Result<f64, MetricsError> {
    skeleton.require_2d()?;
    let area = skeleton.count_foreground();
    if area == 0 {
        return Err(MetricsError::Undefined("skeleton"));
    }
    let thick = non_unit_width_mask(skeleton)?.count_foreground();
    Ok(1.0 - thick as f64 / area as f64)
}

pub fn size_ratio(input: &BinaryPattern, skeleton: &BinaryPattern) -> Result<f64, MetricsError> {
    input.require_same_shape(skeleton)?;
    let area = input.count_foreground();
    if area == 0 {
        return Err(MetricsError::Undefined("input"));
    }
    Ok(skeleton.count_foreground() as f64 / area as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    /// `None` for patterns that are not 2D.
    pub m_t: Option<f64>,
    pub s_r: f64,
    pub n: usize,
    pub component_delta: i64,
    pub area_input: usize,
    pub area_skeleton: usize,
    /// False when the skeleton has foreground the input lacks.
    pub skeleton_within_input: bool,
}

pub const CSV_HEADER: &str = "algorithm,s_r,m_t,n,component_delta,area_input,area_skeleton";

fn fmt_mt(m_t: Option<f64>) -> String {
    m_t.map_or_else(|| "NA".to_string(), |v| v.to_string())
}

impl MetricsReport {
    /// One CSV row matching [`CSV_HEADER`], without trailing newline.
    pub fn csv_row(&self, algorithm: &str) -> String {
        format!(
            "{algorithm},{},{},{},{},{},{}",
            self.s_r,
            fmt_mt(self.m_t),
            self.n,
            self.component_delta,
            self.area_input,
            self.area_skeleton
        )
    }
}

/// Metrics for one thinning result.
pub fn evaluate(input: &BinaryPattern, result: &ThinOutcome) -> Result<MetricsReport, MetricsError> {
    let skeleton = &result.skeleton;
    let s_r = size_ratio(input, skeleton)?;
    let m_t = if skeleton.ndim() == 2 {
        Some(measure_mt(skeleton)?)
    } else {
        None
    };
    let before = connected_components(input).count as i64;
    let after = connected_components(skeleton).count as i64;
    Ok(MetricsReport {
        m_t,
        s_r,
        n: result.iterations,
        component_delta: after - before,
        area_input: input.count_foreground(),
        area_skeleton: skeleton.count_foreground(),
        skeleton_within_input: skeleton.is_subset_of(input),
    })
}

/// Column-wise mean of several reports as a CSV row. `m_t` averages only the
/// reports that have one and is `NA` if none do.
pub fn mean_csv_row(label: &str, reports: &[MetricsReport]) -> String {
    let n = reports.len().max(1) as f64;
    let mean = |f: &dyn Fn(&MetricsReport) -> f64| reports.iter().map(f).sum::<f64>() / n;
    let mts: Vec<f64> = reports.iter().filter_map(|r| r.m_t).collect();
    let m_t = (!mts.is_empty()).then(|| mts.iter().sum::<f64>() / mts.len() as f64);
    let mut row = String::new();
    write!(
        row,
        "{label},{},{},{},{},{},{}",
        mean(&|r| r.s_r),
        fmt_mt(m_t),
        mean(&|r| r.n as f64),
        mean(&|r| r.component_delta as f64),
        mean(&|r| r.area_input as f64),
        mean(&|r| r.area_skeleton as f64),
    )
    .expect("writing to a String");
    row
}
