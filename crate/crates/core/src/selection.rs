//! How a mean selects among measurements.
//!
//! Three diagnostics: the attraction a measurement exerts on a mean (a
//! decreasing function of their squared distance, optionally modulated by the
//! measurement's weight), and the velocity at which a two-point weighted mean
//! moves toward one of its points as that point's weight grows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::means::{mean, MeanKind, WeightedSample};

fn squared_distance(a: f64, b: f64) -> f64 {
    (a - b) * (a - b)
}

/// Squared range of the positively-weighted values; the attraction scale.
pub fn normalization(s: &WeightedSample) -> f64 {
    let (lo, hi) = s.range();
    squared_distance(hi, lo)
}

/// `range^2 / ((x - μ)^2 + 1)`, with μ the `kind` mean of the sample.
pub fn cauchy_attraction(s: &WeightedSample, kind: MeanKind, x: f64) -> Result<f64> {
    let mu = mean(s, kind)?;
    Ok(cauchy_at(normalization(s), mu, x, 1.0))
}

fn cauchy_at(scale: f64, mu: f64, x: f64, w: f64) -> f64 {
    scale / (w * squared_distance(x, mu) + 1.0)
}

fn gaussian_at(scale: f64, mu: f64, x: f64, w: f64) -> f64 {
    scale * (-w * squared_distance(x, mu)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttractionPoint {
    pub x: f64,
    pub attraction: f64,
    /// False when `x` lies outside the sample's range; still evaluated.
    pub within_range: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttractionProfile {
    pub mean_kind: MeanKind,
    pub mu: f64,
    pub points: Vec<AttractionPoint>,
}

/// Cauchy attraction of the `kind` mean of `s`, evaluated at each of `xs`.
pub fn attraction_profile(s: &WeightedSample, kind: MeanKind, xs: &[f64]) -> Result<AttractionProfile> {
    let mu = mean(s, kind)?;
    let scale = normalization(s);
    let (lo, hi) = s.range();
    let points = xs
        .iter()
        .map(|&x| AttractionPoint {
            x,
            attraction: cauchy_at(scale, mu, x, 1.0),
            within_range: (lo..=hi).contains(&x),
        })
        .collect();
    Ok(AttractionProfile { mean_kind: kind, mu, points })
}

fn checked_index(s: &WeightedSample, i: usize) -> Result<()> {
    if i < s.len() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("index {i} out of range for a sample of {}", s.len())))
    }
}

/// `range^2 / (w_i (x_i - μ)^2 + 1)`. Uses the raw weight `w_i`, so an
/// all-ones weighting reproduces [`cauchy_attraction`].
pub fn weighted_attraction_cauchy(s: &WeightedSample, kind: MeanKind, i: usize) -> Result<f64> {
    checked_index(s, i)?;
    let mu = mean(s, kind)?;
    Ok(cauchy_at(normalization(s), mu, s.values()[i], s.weights()[i]))
}

/// `range^2 · exp(-w_i (x_i - μ)^2)`.
pub fn weighted_attraction_gaussian(s: &WeightedSample, kind: MeanKind, i: usize) -> Result<f64> {
    checked_index(s, i)?;
    let mu = mean(s, kind)?;
    Ok(gaussian_at(normalization(s), mu, s.values()[i], s.weights()[i]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    Cauchy,
    Gaussian,
}

/// Weighted attraction of every sample point, in sample order.
pub fn weighted_attractions(s: &WeightedSample, kind: MeanKind, kernel: Kernel) -> Result<Vec<f64>> {
    let mu = mean(s, kind)?;
    let scale = normalization(s);
    let f = match kernel {
        Kernel::Cauchy => cauchy_at,
        Kernel::Gaussian => gaussian_at,
    };
    Ok(s.values()
        .iter()
        .zip(s.weights())
        .map(|(&x, &w)| f(scale, mu, x, w))
        .collect())
}

/// Mean of `{1, x}` with weights `{1 - w, w}`.
pub fn two_point_mean(kind: MeanKind, x: f64, w: f64) -> f64 {
    match kind {
        MeanKind::Arithmetic => (1.0 - w) + w * x,
        MeanKind::Geometric => x.powf(w),
        MeanKind::Harmonic => ((1.0 - w) + w / x).recip(),
    }
}

/// Squared distance between the two-point mean of `{1, x}` (weight `w` on
/// `x`) and `x` itself. Requires `0 < x < 1` and `0 < w <= 1`.
pub fn mean_velocity(kind: MeanKind, x: f64, w: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidArgument(format!("velocity needs 0 < x < 1, got x = {x}")));
    }
    if !(w > 0.0 && w <= 1.0) {
        return Err(Error::InvalidArgument(format!("velocity needs 0 < w <= 1, got w = {w}")));
    }
    Ok(squared_distance(two_point_mean(kind, x, w), x))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VelocityCurve {
    pub mean_kind: MeanKind,
    pub x: f64,
    /// `(w, velocity)` pairs.
    pub samples: Vec<(f64, f64)>,
}

pub fn velocity_curve(kind: MeanKind, x: f64, ws: &[f64]) -> Result<VelocityCurve> {
    let samples = ws
        .iter()
        .map(|&w| mean_velocity(kind, x, w).map(|v| (w, v)))
        .collect::<Result<_>>()?;
    Ok(VelocityCurve { mean_kind: kind, x, samples })
}

/// Regular grid `start, start + step, ..., end` (end included when it falls
/// on the grid). Points are computed as `start + i·step` rather than by
/// accumulation.
pub fn uniform_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && end.is_finite() && step.is_finite() && step > 0.0 && end >= start) {
        return Err(Error::InvalidArgument(format!(
            "grid needs finite start <= end and step > 0, got {start}..{end} step {step}"
        )));
    }
    let intervals = ((end - start) / step + 1e-9).floor();
    if intervals > 1e7 {
        return Err(Error::InvalidArgument(format!("grid of {intervals} intervals is too large")));
    }
    let count = intervals as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// Weight grid `step, 2·step, ..., 1` for velocity curves.
pub fn weight_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::InvalidArgument(format!("weight step must be in (0, 1], got {step}")));
    }
    let count = (1.0 / step + 1e-9).floor() as usize;
    let mut ws: Vec<f64> = (1..=count).map(|i| i as f64 * step).collect();
    if let Some(last) = ws.last_mut() {
        if (*last - 1.0).abs() < 1e-9 {
            *last = 1.0;
        }
    }
    if ws.last() != Some(&1.0) {
        ws.push(1.0);
    }
    Ok(ws)
}
