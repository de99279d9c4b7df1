//! Stability of frequency estimates as the corpus grows: per-increment
//! absolute deltas over cumulative prefixes, power-law fits of the average
//! delta, and minimum-corpus-size determination.

use thiserror::Error;

use crate::tabulator::{categories, Category, CountingMode};
use crate::transcriber::PhonemeToken;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConvergenceError {
    #[error("increment size must be positive")]
    ZeroIncrement,
    #[error("corpus too short: {actual} expanded units, need at least {required}")]
    CorpusTooShort { required: u64, actual: u64 },
    #[error("power fit needs at least 2 usable points, got {usable}")]
    TooFewPoints { usable: usize },
    #[error("power fit is undefined when every delta is zero")]
    AllDeltasZero,
}

/// Per-category absolute frequency deltas at one increment boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaPoint {
    /// Nominal cumulative phoneme count (multiple of the increment size).
    pub x: u64,
    /// |Δ frequency| per category, percentage points, aligned with the
    /// series' category list.
    pub deltas: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragePoint {
    pub x: u64,
    /// Mean |Δ frequency| over all tracked categories, percentage points.
    pub delta: f64,
}

/// Frequency deltas per increment of expanded phoneme units.
///
/// The k-th prefix contains every token that begins at or before unit
/// k·increment, so a geminate straddling a boundary belongs wholly to the
/// increment in which it begins. The first computable delta is at
/// x = 2·increment.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceSeries {
    pub increment_size: u64,
    pub mode: CountingMode,
    pub points: Vec<DeltaPoint>,
    pub average_points: Vec<AveragePoint>,
}

impl ConvergenceSeries {
    pub fn categories(&self) -> &'static [Category] {
        categories(self.mode)
    }

    /// Average-delta points as (x, y) pairs for fitting.
    pub fn average_xy(&self) -> Vec<(f64, f64)> {
        self.average_points
            .iter()
            .map(|p| (p.x as f64, p.delta))
            .collect()
    }
}

/// Compute the delta series over cumulative prefixes of `tokens`.
///
/// Frequencies are tracked over the category scheme of `mode`; token-wise
/// tracking gives one delta curve per phoneme with geminates as separate
/// curves, which is what the plot data downstream expects.
pub fn delta_series(
    tokens: &[PhonemeToken],
    increment_size: u64,
    mode: CountingMode,
) -> Result<ConvergenceSeries, ConvergenceError> {
    if increment_size == 0 {
        return Err(ConvergenceError::ZeroIncrement);
    }
    let total_expanded: u64 = tokens.iter().map(|t| t.expanded_units()).sum();
    if total_expanded < 2 * increment_size {
        return Err(ConvergenceError::CorpusTooShort {
            required: 2 * increment_size,
            actual: total_expanded,
        });
    }

    let cats = categories(mode);
    let n_increments = (total_expanded / increment_size) as usize;

    // One pass: maintain running counts, snapshot the frequency vector at
    // each boundary. A token beginning at unit `cum_before + 1` belongs to
    // prefix k iff cum_before < k * increment.
    let mut counts = vec![0u64; cats.len()];
    let mut denom = 0u64;
    let mut cum_before = 0u64;
    let mut snapshots: Vec<Vec<f64>> = Vec::with_capacity(n_increments);
    let mut next_boundary = increment_size;
    let mut iter = tokens.iter().peekable();
    while snapshots.len() < n_increments {
        // Consume tokens that begin within the current increment.
        while let Some(&token) = iter.peek() {
            if cum_before >= next_boundary {
                break;
            }
            match mode {
                CountingMode::Expanded => {
                    counts[token.phoneme as usize] += token.expanded_units();
                    denom += token.expanded_units();
                }
                CountingMode::TokenWise => {
                    let idx = cats
                        .iter()
                        .position(|c| c.phoneme == token.phoneme && c.geminate == token.geminate)
                        .expect("token category exists");
                    counts[idx] += 1;
                    denom += 1;
                }
            }
            cum_before += token.expanded_units();
            iter.next();
        }
        snapshots.push(
            counts
                .iter()
                .map(|&c| c as f64 / denom as f64 * 100.0)
                .collect(),
        );
        next_boundary += increment_size;
    }

    let mut points = Vec::with_capacity(n_increments.saturating_sub(1));
    let mut average_points = Vec::with_capacity(points.capacity());
    for k in 1..snapshots.len() {
        let x = (k as u64 + 1) * increment_size;
        let deltas: Vec<f64> = snapshots[k]
            .iter()
            .zip(snapshots[k - 1].iter())
            .map(|(now, before)| (now - before).abs())
            .collect();
        let avg = deltas.iter().sum::<f64>() / deltas.len() as f64;
        points.push(DeltaPoint { x, deltas });
        average_points.push(AveragePoint { x, delta: avg });
    }

    Ok(ConvergenceSeries {
        increment_size,
        mode,
        points,
        average_points,
    })
}

/// Best-fit power curve y = a·x^b.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PowerFit {
    pub a: f64,
    pub b: f64,
    /// Coefficient of determination in log-log space.
    pub r2: f64,
    pub points_used: usize,
    pub points_dropped: usize,
    /// False when more than half the points were dropped (zero deltas have
    /// no logarithm), making the fit unrepresentative.
    pub reliable: bool,
}

/// Least squares on (ln x, ln y). Points with y = 0 are dropped; x must be
/// positive.
pub fn fit_power(points: &[(f64, f64)]) -> Result<PowerFit, ConvergenceError> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(x, y)| x > 0.0 && y > 0.0)
        .collect();
    if usable.len() < 2 {
        if !points.is_empty() && points.iter().all(|&(_, y)| y == 0.0) {
            return Err(ConvergenceError::AllDeltasZero);
        }
        return Err(ConvergenceError::TooFewPoints {
            usable: usable.len(),
        });
    }
    let n = usable.len() as f64;
    let logs: Vec<(f64, f64)> = usable.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mean_x = logs.iter().map(|&(x, _)| x).sum::<f64>() / n;
    let mean_y = logs.iter().map(|&(_, y)| y).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = logs
        .iter()
        .map(|&(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let b = sxy / sxx;
    let intercept = mean_y - b * mean_x;
    let ss_res: f64 = logs
        .iter()
        .map(|&(x, y)| {
            let pred = intercept + b * x;
            (y - pred) * (y - pred)
        })
        .sum();
    let ss_tot: f64 = logs.iter().map(|&(_, y)| (y - mean_y) * (y - mean_y)).sum();
    // Constant y: a perfect horizontal fit.
    let r2 = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    let dropped = points.len() - usable.len();
    Ok(PowerFit {
        a: intercept.exp(),
        b,
        r2,
        points_used: usable.len(),
        points_dropped: dropped,
        reliable: dropped * 2 <= points.len(),
    })
}

/// Evaluate a·x^b.
pub fn evaluate_fit(fit: &PowerFit, x: f64) -> f64 {
    fit.a * x.powf(fit.b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityScope {
    /// Every tracked category must stay under the threshold.
    AllCategories,
    /// The average delta must stay under the threshold.
    Average,
}

/// Smallest series x from which every later delta (inclusive) stays below
/// `threshold` percentage points; None if the series never settles.
pub fn stability_point(
    series: &ConvergenceSeries,
    threshold: f64,
    scope: StabilityScope,
) -> Option<u64> {
    let violates = |idx: usize| -> bool {
        match scope {
            StabilityScope::AllCategories => series.points[idx]
                .deltas
                .iter()
                .any(|&d| d >= threshold),
            StabilityScope::Average => series.average_points[idx].delta >= threshold,
        }
    };
    let n = series.points.len();
    if n == 0 {
        return None;
    }
    let last_violation = (0..n).rev().find(|&i| violates(i));
    match last_violation {
        None => Some(series.points[0].x),
        Some(i) if i + 1 < n => Some(series.points[i + 1].x),
        Some(_) => None,
    }
}
