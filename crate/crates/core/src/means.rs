//! Weighted arithmetic, geometric and harmonic means.
//!
//! All three means are the same estimator seen through a different transform:
//! map each measurement through `T`, take the weighted arithmetic mean in the
//! transformed space (the minimizer of `Σ w_i (T(x_i) - a)^2`), and map the
//! minimizer back through `T⁻¹`. The closed forms below compute each mean
//! directly in the original space; [`quasi_arithmetic_mean`] and
//! [`brute_force_mean`] compute it through the transform so the routes can be
//! cross-checked.
//!
//! Weights are normalized internally, so counts and probabilities are
//! interchangeable.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Invertible monotone map defining which mean is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transform {
    /// `y = x`
    Identity,
    /// `y = ln(x)`
    Log,
    /// `y = 1/x`
    Reciprocal,
}

impl Transform {
    pub const ALL: [Transform; 3] = [Transform::Identity, Transform::Log, Transform::Reciprocal];

    /// Maps `x` into the transformed space. Does not check the domain; see
    /// [`Transform::try_forward`].
    #[inline]
    pub fn forward(self, x: f64) -> f64 {
        match self {
            Transform::Identity => x,
            Transform::Log => x.ln(),
            Transform::Reciprocal => x.recip(),
        }
    }

    #[inline]
    pub fn inverse(self, y: f64) -> f64 {
        match self {
            Transform::Identity => y,
            Transform::Log => y.exp(),
            Transform::Reciprocal => y.recip(),
        }
    }

    /// Whether `x` lies in the domain of the forward map.
    pub fn accepts(self, x: f64) -> bool {
        match self {
            Transform::Identity => x.is_finite(),
            Transform::Log | Transform::Reciprocal => x.is_finite() && x > 0.0,
        }
    }

    pub fn check(self, x: f64) -> Result<()> {
        if self.accepts(x) {
            Ok(())
        } else {
            Err(Error::Domain { value: x, transform: self })
        }
    }

    pub fn try_forward(self, x: f64) -> Result<f64> {
        self.check(x).map(|()| self.forward(x))
    }

    /// The mean this transform produces.
    pub fn mean_kind(self) -> MeanKind {
        match self {
            Transform::Identity => MeanKind::Arithmetic,
            Transform::Log => MeanKind::Geometric,
            Transform::Reciprocal => MeanKind::Harmonic,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Transform::Identity => "identity",
            Transform::Log => "log",
            Transform::Reciprocal => "reciprocal",
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
}

impl MeanKind {
    pub const ALL: [MeanKind; 3] = [MeanKind::Arithmetic, MeanKind::Geometric, MeanKind::Harmonic];

    pub fn transform(self) -> Transform {
        match self {
            MeanKind::Arithmetic => Transform::Identity,
            MeanKind::Geometric => Transform::Log,
            MeanKind::Harmonic => Transform::Reciprocal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MeanKind::Arithmetic => "arithmetic",
            MeanKind::Geometric => "geometric",
            MeanKind::Harmonic => "harmonic",
        }
    }

    /// Two-letter abbreviation (`AM`, `GM`, `HM`).
    pub fn abbreviation(self) -> &'static str {
        match self {
            MeanKind::Arithmetic => "AM",
            MeanKind::Geometric => "GM",
            MeanKind::Harmonic => "HM",
        }
    }
}

impl From<Transform> for MeanKind {
    fn from(t: Transform) -> Self {
        t.mean_kind()
    }
}

impl From<MeanKind> for Transform {
    fn from(k: MeanKind) -> Self {
        k.transform()
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Measurements paired with non-negative weights.
///
/// Values need not be sorted or distinct. Pairs with zero weight are kept but
/// do not take part in any mean, range or domain check.
///
/// Sums run over the positively-weighted pairs sorted by value then weight,
/// so every mean is bit-for-bit independent of input order. They use
/// compensated summation and divide by the weight total once at the end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSample", into = "RawSample")]
pub struct WeightedSample {
    values: Vec<f64>,
    weights: Vec<f64>,
    canonical: Vec<(f64, f64)>,
    total: f64,
}

#[derive(Serialize, Deserialize)]
struct RawSample {
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl TryFrom<RawSample> for WeightedSample {
    type Error = Error;

    fn try_from(raw: RawSample) -> Result<Self> {
        WeightedSample::new(raw.values, raw.weights)
    }
}

impl From<WeightedSample> for RawSample {
    fn from(s: WeightedSample) -> Self {
        RawSample {
            values: s.values,
            weights: s.weights,
        }
    }
}

impl WeightedSample {
    pub fn new(values: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSample("sample is empty".into()));
        }
        if values.len() != weights.len() {
            return Err(Error::InvalidSample(format!(
                "{} values but {} weights",
                values.len(),
                weights.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSample(format!("non-finite value {v}")));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidSample(format!("weight {w} is not a finite non-negative number")));
        }
        let mut canonical: Vec<(f64, f64)> = values
            .iter()
            .zip(&weights)
            .filter(|(_, &w)| w > 0.0)
            .map(|(&x, &w)| (x, w))
            .collect();
        canonical.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let total = compensated_sum(canonical.iter().map(|&(_, w)| w));
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::InvalidSample("weights must have a positive finite sum".into()));
        }
        Ok(Self {
            values,
            weights,
            canonical,
            total,
        })
    }

    pub fn equally_weighted(values: Vec<f64>) -> Result<Self> {
        let weights = vec![1.0; values.len()];
        Self::new(values, weights)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.total
    }

    /// `(value, normalized weight)` for every pair with positive weight, in
    /// ascending value order.
    pub fn active(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let total = self.total;
        self.canonical.iter().map(move |&(x, w)| (x, w / total))
    }

    /// Smallest and largest positively-weighted value.
    pub fn range(&self) -> (f64, f64) {
        self.active()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (x, _)| (lo.min(x), hi.max(x)))
    }

    /// Clamps a computed mean into the data range, which rounding can leave
    /// by an ulp.
    fn within_range(&self, m: f64) -> f64 {
        let (lo, hi) = self.range();
        m.clamp(lo, hi)
    }

    /// `Σ w_i f(x_i) / Σ w_i` over the positively-weighted pairs.
    fn weighted_average(&self, f: impl Fn(f64) -> f64) -> f64 {
        compensated_sum(self.canonical.iter().map(|&(x, w)| w * f(x))) / self.total
    }

    /// The value itself when exactly one pair carries weight.
    fn sole_value(&self) -> Option<f64> {
        let mut active = self.active();
        match (active.next(), active.next()) {
            (Some((x, _)), None) => Some(x),
            _ => None,
        }
    }

    fn check_domain(&self, t: Transform) -> Result<()> {
        self.active().try_for_each(|(x, _)| t.check(x))
    }
}

/// Neumaier's compensated summation.
fn compensated_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for t in terms {
        let next = sum + t;
        carry += if sum.abs() >= t.abs() { (sum - next) + t } else { (t - next) + sum };
        sum = next;
    }
    sum + carry
}

pub fn arithmetic_mean(s: &WeightedSample) -> f64 {
    s.within_range(s.weighted_average(|x| x))
}

/// `Π x_i^(w_i / Σw)`; every positively-weighted value must be `> 0`.
pub fn geometric_mean(s: &WeightedSample) -> Result<f64> {
    s.check_domain(Transform::Log)?;
    Ok(s.within_range(s.active().map(|(x, w)| x.powf(w)).product()))
}

/// `1 / Σ (w_i / Σw) / x_i`; every positively-weighted value must be `> 0`.
pub fn harmonic_mean(s: &WeightedSample) -> Result<f64> {
    s.check_domain(Transform::Reciprocal)?;
    if let Some(x) = s.sole_value() {
        return Ok(x);
    }
    Ok(s.within_range(s.weighted_average(f64::recip).recip()))
}

/// Closed-form mean selected by `kind`.
pub fn mean(s: &WeightedSample, kind: MeanKind) -> Result<f64> {
    match kind {
        MeanKind::Arithmetic => Ok(arithmetic_mean(s)),
        MeanKind::Geometric => geometric_mean(s),
        MeanKind::Harmonic => harmonic_mean(s),
    }
}

/// `T⁻¹(Σ (w_i/Σw) T(x_i))`.
pub fn quasi_arithmetic_mean(s: &WeightedSample, t: Transform) -> Result<f64> {
    s.check_domain(t)?;
    if let Some(x) = s.sole_value() {
        return Ok(x);
    }
    Ok(s.within_range(t.inverse(s.weighted_average(|x| t.forward(x)))))
}

/// Weighted squared error `Σ (w_i/Σw) (T(x_i) - a)^2` of the parameter `a`,
/// expressed in the transformed space.
pub fn criterion_value(s: &WeightedSample, t: Transform, a: f64) -> Result<f64> {
    s.check_domain(t)?;
    if !a.is_finite() {
        return Err(Error::InvalidArgument(format!("parameter {a} is not finite")));
    }
    Ok(s.weighted_average(|x| (t.forward(x) - a).powi(2)))
}

const GOLDEN_TOLERANCE: f64 = 1e-10;

/// Minimizes [`criterion_value`] numerically and returns `T⁻¹(a*)`.
///
/// A uniform scan of `grid_points` parameters over the transformed data
/// range locates the basin; golden-section search then narrows the bracket
/// around the best grid point to `1e-10` (relative to the range once it
/// exceeds one). Intended as an oracle for the closed forms.
pub fn brute_force_mean(s: &WeightedSample, t: Transform, grid_points: usize) -> Result<f64> {
    if grid_points < 3 {
        return Err(Error::InvalidArgument(format!("grid_points must be at least 3, got {grid_points}")));
    }
    s.check_domain(t)?;
    let ys: Vec<(f64, f64)> = s.active().map(|(x, w)| (t.forward(x), w)).collect();
    let (lo, hi) = ys
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(y, _)| (lo.min(y), hi.max(y)));
    if lo == hi {
        return Ok(t.inverse(lo));
    }
    // C(a) - C(b) summed term by term as (b - a)(2y - a - b), which keeps
    // its sign accurate even when both criterion values are large.
    let below = |a: f64, b: f64| ys.iter().map(|&(y, w)| w * (b - a) * (2.0 * y - a - b)).sum::<f64>() < 0.0;

    let step = (hi - lo) / (grid_points - 1) as f64;
    let at = |i: usize| if i + 1 == grid_points { hi } else { lo + step * i as f64 };
    let best = (1..grid_points).fold(0, |best, i| if below(at(i), at(best)) { i } else { best });

    let mut left = at(best.saturating_sub(1));
    let mut right = at((best + 1).min(grid_points - 1));
    let tolerance = GOLDEN_TOLERANCE * (hi - lo).max(1.0);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = right - ratio * (right - left);
    let mut d = left + ratio * (right - left);
    for _ in 0..500 {
        if right - left <= tolerance {
            break;
        }
        if below(c, d) {
            right = d;
            d = c;
            c = right - ratio * (right - left);
        } else {
            left = c;
            c = d;
            d = left + ratio * (right - left);
        }
    }
    Ok(t.inverse(0.5 * (left + right)))
}
