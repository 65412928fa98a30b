//! Best prediction of a discrete outcome under a quadratic gain measured in
//! a transformed space.
//!
//! With gain `g(x, n) = base - penalty (T(x) - T(n))^2`, the expected gain
//! over an empirical distribution is maximized at `x* = T⁻¹(Σ T(n) pr(n))`:
//! the weighted mean of the outcomes matching `T`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::means::{quasi_arithmetic_mean, Transform, WeightedSample};

const PROBABILITY_SUM_TOLERANCE: f64 = 1e-9;

/// Discrete distribution over distinct positive outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    outcomes: Vec<(f64, f64)>,
}

impl EmpiricalDistribution {
    /// `(value, probability)` pairs; probabilities must sum to one.
    pub fn new(outcomes: Vec<(f64, f64)>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        for (i, &(n, p)) in outcomes.iter().enumerate() {
            if !(n.is_finite() && n > 0.0) {
                return Err(Error::InvalidDistribution(format!("outcome {n} is not a positive number")));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidDistribution(format!("probability {p} of outcome {n} is outside [0, 1]")));
            }
            if outcomes[..i].iter().any(|&(m, _)| m == n) {
                return Err(Error::InvalidDistribution(format!("duplicate outcome {n}")));
            }
        }
        let total: f64 = outcomes.iter().map(|&(_, p)| p).sum();
        if (total - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { outcomes })
    }

    /// `(value, count)` pairs, normalized to probabilities.
    pub fn from_counts(counts: Vec<(f64, f64)>) -> Result<Self> {
        if let Some(&(n, c)) = counts.iter().find(|(_, c)| !(c.is_finite() && *c >= 0.0)) {
            return Err(Error::InvalidDistribution(format!("count {c} of outcome {n} is not a non-negative number")));
        }
        let total: f64 = counts.iter().map(|&(_, c)| c).sum();
        if total.is_nan() || total <= 0.0 {
            return Err(Error::InvalidDistribution("counts sum to zero".into()));
        }
        Self::new(counts.into_iter().map(|(n, c)| (n, c / total)).collect())
    }

    pub fn outcomes(&self) -> &[(f64, f64)] {
        &self.outcomes
    }

    /// Outcomes weighted by their probabilities.
    pub fn as_sample(&self) -> WeightedSample {
        let (values, weights) = self.outcomes.iter().copied().unzip();
        WeightedSample::new(values, weights).expect("a valid distribution is a valid sample")
    }

    pub fn support(&self) -> (f64, f64) {
        self.outcomes
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(n, _)| (lo.min(n), hi.max(n)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainSpec {
    pub base: f64,
    pub penalty: f64,
    pub transform: Transform,
}

impl GainSpec {
    pub const DEFAULT_BASE: f64 = 1000.0;
    pub const DEFAULT_PENALTY: f64 = 30.0;

    pub fn new(base: f64, penalty: f64, transform: Transform) -> Result<Self> {
        if !base.is_finite() {
            return Err(Error::InvalidArgument(format!("gain base {base} is not finite")));
        }
        if !(penalty.is_finite() && penalty > 0.0) {
            return Err(Error::InvalidArgument(format!("gain penalty must be positive, got {penalty}")));
        }
        Ok(Self { base, penalty, transform })
    }

    /// Base 1000, penalty 30.
    pub fn with_transform(transform: Transform) -> Self {
        Self {
            base: Self::DEFAULT_BASE,
            penalty: Self::DEFAULT_PENALTY,
            transform,
        }
    }
}

pub fn gain(spec: &GainSpec, x: f64, n: f64) -> Result<f64> {
    let t = spec.transform;
    let err = t.try_forward(x)? - t.try_forward(n)?;
    Ok(spec.base - spec.penalty * err * err)
}

/// Expected gain `R(x)` over `dist`.
pub fn return_function(spec: &GainSpec, dist: &EmpiricalDistribution, x: f64) -> Result<f64> {
    let t = spec.transform;
    let tx = t.try_forward(x)?;
    let expected_loss = dist
        .outcomes()
        .iter()
        .map(|&(n, p)| Ok(p * (tx - t.try_forward(n)?).powi(2)))
        .sum::<Result<f64>>()?;
    Ok(spec.base - spec.penalty * expected_loss)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub transform: Transform,
    pub x_star: f64,
    pub return_star: f64,
}

pub fn best_predictor(spec: &GainSpec, dist: &EmpiricalDistribution) -> Result<Prediction> {
    let x_star = quasi_arithmetic_mean(&dist.as_sample(), spec.transform)?;
    let return_star = return_function(spec, dist, x_star)?;
    Ok(Prediction {
        transform: spec.transform,
        x_star,
        return_star,
    })
}
