//! Weighted arithmetic, geometric and harmonic means treated as least-squares
//! estimators in a transformed space, plus the tools built on them:
//!
//! - [`means`]: closed forms, the transform-space criterion, and a numeric
//!   minimizer used as an oracle.
//! - [`geometry`]: hyperrectangle and semicircle readings of the means, and
//!   the arithmetic-geometric mean.
//! - [`selection`]: attraction functions and mean velocities.
//! - [`predictor`]: best prediction under a transformed quadratic gain.
//! - [`index`]: all-items price index aggregation.
//! - [`ellipse`]: per-mean enclosing ellipses for 2D point clouds.
//!
//! Everything here is a pure function of its inputs.

pub mod ellipse;
pub mod error;
pub mod geometry;
pub mod index;
pub mod means;
pub mod predictor;
pub mod selection;

pub use error::{Error, Result};
pub use means::{MeanKind, Transform, WeightedSample};
