//! Enclosing ellipses for 2D point clouds, one per mean.
//!
//! Each coordinate is mapped through the transform of the chosen mean. The
//! center is the coordinate-wise arithmetic mean in that space (so in the
//! original space it is the chosen mean of each coordinate), and the axes are
//! the eigenvectors of the transformed sample covariance. The boundary is
//! traced in transformed space at a fixed Mahalanobis radius and carried back
//! point by point through the inverse transform; for the log and reciprocal
//! transforms the result is a closed curve rather than an exact ellipse.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::means::{MeanKind, Transform};

pub type Point = [f64; 2];

pub const DEFAULT_SCALE: f64 = 2.0;
pub const BOUNDARY_SEGMENTS: usize = 128;
const SINGULAR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCloud2D {
    points: Vec<Point>,
}

impl PointCloud2D {
    /// Requires at least three finite points that do not all lie on a line.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::DegenerateCloud(format!("need at least 3 points, got {}", points.len())));
        }
        if let Some(p) = points.iter().find(|p| !(p[0].is_finite() && p[1].is_finite())) {
            return Err(Error::DegenerateCloud(format!("non-finite point ({}, {})", p[0], p[1])));
        }
        let cov = covariance(&points, mean_point(&points));
        if is_singular(&eig2x2_sym(cov[0], cov[1], cov[2])) {
            return Err(Error::DegenerateCloud("points are collinear".into()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Eigen-decomposition of a symmetric 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymEigen2 {
    /// Descending.
    pub values: [f64; 2],
    /// Unit eigenvectors matching `values`; the first nonzero component of
    /// each is positive.
    pub vectors: [[f64; 2]; 2],
}

fn canonical_sign(v: [f64; 2]) -> [f64; 2] {
    let lead = if v[0] != 0.0 { v[0] } else { v[1] };
    if lead < 0.0 {
        [-v[0], -v[1]]
    } else {
        v
    }
}

/// Closed-form eigen-decomposition of `[[cxx, cxy], [cxy, cyy]]`.
///
/// Diagonal matrices, including repeated eigenvalues, get the coordinate
/// axes as eigenvectors.
pub fn eig2x2_sym(cxx: f64, cxy: f64, cyy: f64) -> SymEigen2 {
    let mid = 0.5 * (cxx + cyy);
    let radius = (0.5 * (cxx - cyy)).hypot(cxy);
    let values = [mid + radius, mid - radius];
    let major = if cxy == 0.0 {
        if cxx >= cyy {
            [1.0, 0.0]
        } else {
            [0.0, 1.0]
        }
    } else {
        let angle = 0.5 * (2.0 * cxy).atan2(cxx - cyy);
        [angle.cos(), angle.sin()]
    };
    let minor = [-major[1], major[0]];
    SymEigen2 {
        values,
        vectors: [canonical_sign(major), canonical_sign(minor)],
    }
}

fn is_singular(e: &SymEigen2) -> bool {
    e.values[0].is_nan() || e.values[0] <= 0.0 || e.values[1] <= SINGULAR_TOLERANCE * e.values[0]
}

fn mean_point(points: &[Point]) -> Point {
    let m = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(sx, sy), p| (sx + p[0], sy + p[1]));
    [sx / m, sy / m]
}

/// Sample covariance `[cxx, cxy, cyy]` with `1/(m-1)` normalization.
fn covariance(points: &[Point], center: Point) -> [f64; 3] {
    let denom = (points.len() - 1) as f64;
    let (xx, xy, yy) = points.iter().fold((0.0, 0.0, 0.0), |(xx, xy, yy), p| {
        let dx = p[0] - center[0];
        let dy = p[1] - center[1];
        (xx + dx * dx, xy + dx * dy, yy + dy * dy)
    });
    [xx / denom, xy / denom, yy / denom]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipseFit {
    pub mean_kind: MeanKind,
    pub center_original: Point,
    pub center_transformed: Point,
    /// Principal directions in transformed space, major axis first.
    pub directions: [[f64; 2]; 2],
    /// Covariance eigenvalues, descending.
    pub spreads: [f64; 2],
    /// `[cxx, cxy, cyy]` of the transformed points.
    pub covariance: [f64; 3],
    pub scale: f64,
    /// Closed polyline in the original space; the first point is repeated at
    /// the end.
    pub boundary: Vec<Point>,
}

impl EllipseFit {
    pub fn transform(&self) -> Transform {
        self.mean_kind.transform()
    }

    /// Mahalanobis distance of a transformed-space point from the center.
    pub fn mahalanobis_transformed(&self, q: Point) -> f64 {
        let d = [q[0] - self.center_transformed[0], q[1] - self.center_transformed[1]];
        self.directions
            .iter()
            .zip(self.spreads)
            .map(|(v, lambda)| {
                let along = d[0] * v[0] + d[1] * v[1];
                along * along / lambda
            })
            .sum::<f64>()
            .sqrt()
    }
}

pub fn fit_ellipse(cloud: &PointCloud2D, kind: MeanKind, scale: f64) -> Result<EllipseFit> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidArgument(format!("scale must be positive, got {scale}")));
    }
    let t = kind.transform();
    let transformed = cloud
        .points()
        .iter()
        .map(|p| Ok([t.try_forward(p[0])?, t.try_forward(p[1])?]))
        .collect::<Result<Vec<Point>>>()?;

    let center_transformed = mean_point(&transformed);
    let cov = covariance(&transformed, center_transformed);
    let eig = eig2x2_sym(cov[0], cov[1], cov[2]);
    if is_singular(&eig) {
        return Err(Error::DegenerateCloud(format!(
            "{} covariance is singular (eigenvalues {:e}, {:e})",
            kind, eig.values[0], eig.values[1]
        )));
    }

    let [v1, v2] = eig.vectors;
    let (r1, r2) = (scale * eig.values[0].sqrt(), scale * eig.values[1].sqrt());
    let mut boundary = Vec::with_capacity(BOUNDARY_SEGMENTS + 1);
    for i in 0..BOUNDARY_SEGMENTS {
        let theta = TAU * i as f64 / BOUNDARY_SEGMENTS as f64;
        let (s, c) = theta.sin_cos();
        let q = [
            center_transformed[0] + r1 * c * v1[0] + r2 * s * v2[0],
            center_transformed[1] + r1 * c * v1[1] + r2 * s * v2[1],
        ];
        let p = [t.inverse(q[0]), t.inverse(q[1])];
        // The inverse of the reciprocal is only meaningful on the positive side.
        if !(t.accepts(p[0]) && t.accepts(p[1])) {
            return Err(Error::InvalidArgument(format!(
                "{kind} boundary at scale {scale} leaves the domain of the {t} transform; use a smaller scale"
            )));
        }
        boundary.push(p);
    }
    boundary.push(boundary[0]);

    Ok(EllipseFit {
        mean_kind: kind,
        center_original: [t.inverse(center_transformed[0]), t.inverse(center_transformed[1])],
        center_transformed,
        directions: eig.vectors,
        spreads: eig.values,
        covariance: cov,
        scale,
        boundary,
    })
}
