//! Equal-weight means read off geometric figures.
//!
//! For `n >= 2` measurements taken as the edge lengths of a hyperrectangle,
//! the arithmetic mean is the hyperperimeter over `2^(n-1) n`, the geometric
//! mean is the `n`-th root of the hypervolume, and the harmonic mean is the
//! hypervolume over the mean volume of the `(n-1)`-dimensional facets. For two
//! values the classical semicircle construction gives all three as segment
//! lengths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest dimension accepted; `2^(n-1)` overflows `f64` shortly after.
pub const MAX_DIMENSION: usize = 1000;

/// Hyperrectangle given by its edge lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperRect {
    edges: Vec<f64>,
}

impl HyperRect {
    pub fn new(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a hyperrectangle needs at least 2 edges, got {}",
                edges.len()
            )));
        }
        if edges.len() > MAX_DIMENSION {
            return Err(Error::InvalidArgument(format!(
                "at most {MAX_DIMENSION} edges are supported, got {}",
                edges.len()
            )));
        }
        if let Some(e) = edges.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
            return Err(Error::InvalidArgument(format!("edge length {e} is not strictly positive")));
        }
        Ok(Self { edges })
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn dimension(&self) -> usize {
        self.edges.len()
    }

    /// Each edge appears `2^(n-1)` times.
    fn edge_multiplicity(&self) -> f64 {
        2f64.powi(self.dimension() as i32 - 1)
    }
}

/// `P_n = 2^(n-1) Σ x_i`.
pub fn hyperperimeter(r: &HyperRect) -> f64 {
    r.edge_multiplicity() * r.edges.iter().sum::<f64>()
}

/// `P_n / (2^(n-1) n)`.
pub fn am_from_perimeter(r: &HyperRect) -> f64 {
    hyperperimeter(r) / (r.edge_multiplicity() * r.dimension() as f64)
}

/// `V_n = Π x_i`. May overflow to infinity or underflow to zero for extreme
/// edges; the derived means below compensate for that.
pub fn hypervolume(r: &HyperRect) -> f64 {
    r.edges.iter().product()
}

fn representable(v: f64) -> bool {
    v.is_normal()
}

/// `V_n^(1/n)`.
pub fn gm_from_volume(r: &HyperRect) -> f64 {
    let v = hypervolume(r);
    let n = r.dimension() as f64;
    if representable(v) {
        v.powf(n.recip())
    } else {
        // Π x_i^(1/n) never leaves the range of the edges.
        r.edges.iter().map(|x| x.powf(n.recip())).product()
    }
}

/// Volumes of the `n` distinct facets, `V_(n-1,j) = Π_(i≠j) x_i`.
pub fn facet_volumes(r: &HyperRect) -> Vec<f64> {
    let v = hypervolume(r);
    if representable(v) {
        r.edges.iter().map(|x| v / x).collect()
    } else {
        (0..r.dimension())
            .map(|j| {
                r.edges
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, x)| x)
                    .product()
            })
            .collect()
    }
}

/// `A_n`: mean volume of the `2n` facets, which come in `n` equal pairs.
pub fn facet_volume_mean(r: &HyperRect) -> f64 {
    facet_volumes(r).iter().sum::<f64>() / r.dimension() as f64
}

/// `H_n = V_n / A_n`.
pub fn hm_from_ratio(r: &HyperRect) -> f64 {
    let v = hypervolume(r);
    let a = facet_volume_mean(r);
    if representable(v) && representable(a) {
        return v / a;
    }
    // The ratio is homogeneous of degree one in the edges: rescale by the
    // geometric mean so the volume is ~1, then undo the scaling.
    let scale = gm_from_volume(r);
    let scaled = HyperRect {
        edges: r.edges.iter().map(|x| x / scale).collect(),
    };
    scale * hypervolume(&scaled) / facet_volume_mean(&scaled)
}

/// Two values laid end to end along the diameter `BC` of a circle.
///
/// `B` sits at the origin, `G` at `x1`, `C` at `x1 + x2`; `O` is the center.
/// `H` is the point on the circle above `G` and `D` the foot of the
/// perpendicular from `G` onto the radius `OH`. Then `OH`, `HG` and `HD` are
/// the arithmetic, geometric and harmonic means of `x1` and `x2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleConstruction {
    pub x1: f64,
    pub x2: f64,
    pub radius_oh: f64,
    pub chord_hg: f64,
    pub segment_hd: f64,
}

/// Named points of the construction in the plane of the figure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstructionPoints {
    pub b: [f64; 2],
    pub g: [f64; 2],
    pub c: [f64; 2],
    pub o: [f64; 2],
    pub h: [f64; 2],
    pub d: [f64; 2],
}

impl CircleConstruction {
    pub fn points(&self) -> ConstructionPoints {
        let radius = 0.5 * (self.x1 + self.x2);
        let o = [radius, 0.0];
        let g = [self.x1, 0.0];
        let h = [self.x1, self.chord_hg];
        // D = H + (HD / OH) (O - H)
        let t = self.segment_hd / self.radius_oh;
        let d = [h[0] + t * (o[0] - h[0]), h[1] + t * (o[1] - h[1])];
        ConstructionPoints {
            b: [0.0, 0.0],
            g,
            c: [self.x1 + self.x2, 0.0],
            o,
            h,
            d,
        }
    }
}

pub fn circle_construction(x1: f64, x2: f64) -> Result<CircleConstruction> {
    for x in [x1, x2] {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::InvalidArgument(format!("circle construction needs positive lengths, got {x}")));
        }
    }
    let radius_oh = 0.5 * (x1 + x2);
    // |OG| along the diameter; H lies on the circle directly above G.
    let og = (x1 - radius_oh).abs();
    let chord_hg = ((radius_oh - og) * (radius_oh + og)).sqrt();
    // Right triangle OGH with the altitude from G: HG^2 = HD * OH.
    let segment_hd = chord_hg * chord_hg / radius_oh;
    Ok(CircleConstruction {
        x1,
        x2,
        radius_oh,
        chord_hg,
        segment_hd,
    })
}

/// Result of the arithmetic-geometric mean iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Agm {
    pub value: f64,
    pub iterations: usize,
}

const AGM_TOLERANCE: f64 = 1e-12;
const AGM_MAX_ITERATIONS: usize = 100;

/// Iterates `(a, b) <- ((a + b)/2, sqrt(ab))` until the pair agrees to a
/// relative `1e-12`.
pub fn arithmetic_geometric_mean(a: f64, b: f64) -> Result<f64> {
    agm_iterate(a, b).map(|r| r.value)
}

pub fn agm_iterate(a: f64, b: f64) -> Result<Agm> {
    for x in [a, b] {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "arithmetic-geometric mean needs positive inputs, got {x}"
            )));
        }
    }
    let (mut a, mut b) = (a, b);
    let mut iterations = 0;
    while (a - b).abs() > AGM_TOLERANCE * a.max(b) && iterations < AGM_MAX_ITERATIONS {
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
        iterations += 1;
    }
    Ok(Agm {
        value: 0.5 * (a + b),
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rect(edges: &[f64]) -> HyperRect {
        HyperRect::new(edges.to_vec()).unwrap()
    }

    #[test]
    fn perimeter_examples() {
        assert_eq!(hyperperimeter(&rect(&[3.0, 4.0])), 14.0);
        assert_eq!(hyperperimeter(&rect(&[1.0, 2.0, 3.0])), 24.0);
        let c = 2.5;
        for n in 2..8 {
            let r = rect(&vec![c; n]);
            assert_relative_eq!(hyperperimeter(&r), 2f64.powi(n as i32 - 1) * n as f64 * c);
        }
    }

    #[test]
    fn am_from_perimeter_examples() {
        assert_eq!(am_from_perimeter(&rect(&[3.0, 4.0])), 3.5);
        assert_eq!(am_from_perimeter(&rect(&[8.0, 13.0, 14.0, 10.0, 1000.0])), 209.0);
        assert_eq!(am_from_perimeter(&rect(&[1.0, 2.0, 3.0])), 2.0);
    }

    #[test]
    fn volume_examples() {
        let r = rect(&[1.0, 4.0]);
        assert_eq!(hypervolume(&r), 4.0);
        assert_relative_eq!(gm_from_volume(&r), 2.0, max_relative = 1e-15);
        let r = rect(&[1.0, 2.0, 3.0]);
        assert_eq!(hypervolume(&r), 6.0);
        assert_relative_eq!(gm_from_volume(&r), 6f64.cbrt(), max_relative = 1e-15);
        let r = rect(&[8.0, 13.0, 14.0, 10.0, 1000.0]);
        assert!((gm_from_volume(&r) - 27.079).abs() < 1e-3);
    }

    #[test]
    fn facet_examples() {
        assert_eq!(facet_volume_mean(&rect(&[3.0, 4.0])), 3.5);
        assert_relative_eq!(facet_volume_mean(&rect(&[1.0, 2.0, 3.0])), 11.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(facet_volume_mean(&rect(&[1.5, 1.5, 1.5])), 2.25, max_relative = 1e-15);
    }

    #[test]
    fn harmonic_ratio_examples() {
        assert_relative_eq!(hm_from_ratio(&rect(&[1.0, 2.0, 3.0])), 18.0 / 11.0, max_relative = 1e-15);
        assert_relative_eq!(hm_from_ratio(&rect(&[0.7; 6])), 0.7, max_relative = 1e-14);
        assert!((hm_from_ratio(&rect(&[8.0, 13.0, 14.0, 10.0, 1000.0])) - 13.36).abs() < 0.01);
    }

    #[test]
    fn extreme_magnitudes_fall_back() {
        let big = rect(&[1e200, 2e200, 4e200]);
        assert!(hypervolume(&big).is_infinite());
        assert_relative_eq!(gm_from_volume(&big), 2e200, max_relative = 1e-12);
        assert_relative_eq!(hm_from_ratio(&big), 3.0 / (1.75e-200), max_relative = 1e-12);
        let small = rect(&[1e-200, 1e-200, 4e-200]);
        assert_eq!(hypervolume(&small), 0.0);
        assert_relative_eq!(gm_from_volume(&small), 4f64.cbrt() * 1e-200, max_relative = 1e-12);
        assert_relative_eq!(hm_from_ratio(&small), 3.0 / 2.25e200, max_relative = 1e-12);
    }

    #[test]
    fn hyperrect_rejects_bad_edges() {
        assert!(HyperRect::new(vec![1.0]).is_err());
        assert!(HyperRect::new(vec![1.0, 0.0]).is_err());
        assert!(HyperRect::new(vec![1.0, -2.0]).is_err());
        assert!(HyperRect::new(vec![1.0; MAX_DIMENSION + 1]).is_err());
    }

    #[test]
    fn circle_examples() {
        let c = circle_construction(1.0, 1.0).unwrap();
        assert_eq!((c.radius_oh, c.chord_hg, c.segment_hd), (1.0, 1.0, 1.0));
        let c = circle_construction(1.0, 4.0).unwrap();
        assert_relative_eq!(c.radius_oh, 2.5);
        assert_relative_eq!(c.chord_hg, 2.0, max_relative = 1e-15);
        assert_relative_eq!(c.segment_hd, 1.6, max_relative = 1e-15);
        let c = circle_construction(2.0, 8.0).unwrap();
        assert_relative_eq!(c.radius_oh, 5.0);
        assert_relative_eq!(c.chord_hg, 4.0, max_relative = 1e-15);
        assert_relative_eq!(c.segment_hd, 3.2, max_relative = 1e-15);
        assert!(circle_construction(0.0, 1.0).is_err());
    }

    #[test]
    fn construction_points_are_consistent() {
        let c = circle_construction(1.0, 4.0).unwrap();
        let p = c.points();
        let dist = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).hypot(a[1] - b[1]);
        assert_relative_eq!(dist(p.o, p.h), c.radius_oh, max_relative = 1e-12);
        assert_relative_eq!(dist(p.o, p.b), c.radius_oh, max_relative = 1e-12);
        assert_relative_eq!(dist(p.h, p.g), c.chord_hg, max_relative = 1e-12);
        assert_relative_eq!(dist(p.h, p.d), c.segment_hd, max_relative = 1e-12);
        // GD is perpendicular to OH.
        let gd = [p.d[0] - p.g[0], p.d[1] - p.g[1]];
        let oh = [p.h[0] - p.o[0], p.h[1] - p.o[1]];
        assert!((gd[0] * oh[0] + gd[1] * oh[1]).abs() < 1e-12);
    }

    #[test]
    fn agm_examples() {
        assert_eq!(arithmetic_geometric_mean(3.0, 3.0).unwrap(), 3.0);
        let m = arithmetic_geometric_mean(1.0, 2.0).unwrap();
        assert!(m > 2f64.sqrt() && m < 1.5);
        // Reference value of AGM(1, 2).
        assert_relative_eq!(m, 1.456_791_031_046_907, max_relative = 1e-12);
        let m = arithmetic_geometric_mean(1.0, 4.0).unwrap();
        assert!(m > 2.0 && m < 2.5);
        assert!(arithmetic_geometric_mean(-1.0, 4.0).is_err());
    }
}
