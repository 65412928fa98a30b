//! Report records produced by each subcommand, and their text/CSV renderings.
//!
//! JSON is the serde form of [`Report`] and carries full precision; its
//! layout is pinned by `schemas/report.schema.json`. Text mode rounds every
//! number to two decimals. CSV mode is one flat table per subcommand.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use pythagorean_core::ellipse::EllipseFit;
use pythagorean_core::geometry::{Agm, CircleConstruction};
use pythagorean_core::index::IndexReport;
use pythagorean_core::selection::Kernel;
use pythagorean_core::{MeanKind, Transform};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanValue {
    pub mean: MeanKind,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeansReport {
    pub n: usize,
    pub total_weight: f64,
    pub min: f64,
    pub max: f64,
    pub means: Vec<MeanValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperrectReport {
    pub dimension: usize,
    pub edges: Vec<f64>,
    pub hyperperimeter: f64,
    pub hypervolume: f64,
    pub facet_volume_mean: f64,
    pub arithmetic: f64,
    pub geometric: f64,
    pub harmonic: f64,
    /// Only for two edges.
    pub circle: Option<CircleConstruction>,
    /// Only for two edges.
    pub agm: Option<Agm>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttractionRow {
    pub x: f64,
    pub weight: f64,
    pub within_range: bool,
    pub attraction: BTreeMap<MeanKind, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttractionReport {
    /// `None` for the unweighted Cauchy attraction.
    pub kernel: Option<Kernel>,
    pub normalization: f64,
    pub centers: Vec<MeanValue>,
    pub rows: Vec<AttractionRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VelocityRow {
    pub w: f64,
    pub velocity: BTreeMap<MeanKind, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VelocityReport {
    pub x: f64,
    pub rows: Vec<VelocityRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PredictionRow {
    pub transform: Transform,
    pub mean: MeanKind,
    pub x_star: f64,
    pub return_star: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictReport {
    pub base: f64,
    pub penalty: f64,
    pub predictions: Vec<PredictionRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexSummary {
    pub categories: usize,
    #[serde(flatten)]
    pub report: IndexReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllipseReport {
    pub points: usize,
    pub scale: f64,
    pub fits: Vec<EllipseFit>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Means(MeansReport),
    Hyperrect(HyperrectReport),
    Attraction(AttractionReport),
    Velocity(VelocityReport),
    Predict(PredictReport),
    Index(IndexSummary),
    Ellipse(EllipseReport),
}

fn f2(v: f64) -> String {
    format!("{v:.2}")
}

fn header_for(kinds: impl Iterator<Item = MeanKind>) -> String {
    kinds.map(|k| format!("{:>12}", k.abbreviation())).collect()
}

fn row_for(values: &BTreeMap<MeanKind, f64>) -> String {
    values.values().map(|v| format!("{:>12}", f2(*v))).collect()
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only serializable data")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Means(r) => {
                let _ = writeln!(
                    s,
                    "n = {}, total weight {}, range [{}, {}]",
                    r.n,
                    f2(r.total_weight),
                    f2(r.min),
                    f2(r.max)
                );
                for m in &r.means {
                    let _ = writeln!(s, "{}  {:>12}", m.mean.abbreviation(), f2(m.value));
                }
            }
            Report::Hyperrect(r) => {
                let _ = writeln!(s, "dimension          {}", r.dimension);
                let _ = writeln!(s, "hyperperimeter     {}", f2(r.hyperperimeter));
                let _ = writeln!(s, "hypervolume        {}", f2(r.hypervolume));
                let _ = writeln!(s, "facet volume mean  {}", f2(r.facet_volume_mean));
                let _ = writeln!(s, "AM = P/(2^(n-1) n) {}", f2(r.arithmetic));
                let _ = writeln!(s, "GM = V^(1/n)       {}", f2(r.geometric));
                let _ = writeln!(s, "HM = V/A            {}", f2(r.harmonic));
                if let Some(c) = &r.circle {
                    let _ = writeln!(
                        s,
                        "circle: OH {}  HG {}  HD {}",
                        f2(c.radius_oh),
                        f2(c.chord_hg),
                        f2(c.segment_hd)
                    );
                }
                if let Some(a) = &r.agm {
                    let _ = writeln!(s, "AGM {} ({} iterations)", f2(a.value), a.iterations);
                }
            }
            Report::Attraction(r) => {
                let kernel = match r.kernel {
                    None => "cauchy (unweighted)",
                    Some(Kernel::Cauchy) => "cauchy (weighted)",
                    Some(Kernel::Gaussian) => "gaussian (weighted)",
                };
                let _ = writeln!(s, "kernel {kernel}, normalization {}", f2(r.normalization));
                for c in &r.centers {
                    let _ = writeln!(s, "{} = {}", c.mean.abbreviation(), f2(c.value));
                }
                let _ = writeln!(
                    s,
                    "{:>12}{:>12}{}",
                    "x",
                    "weight",
                    header_for(r.centers.iter().map(|c| c.mean))
                );
                for row in &r.rows {
                    let flag = if row.within_range { "" } else { "  (outside range)" };
                    let _ = writeln!(s, "{:>12}{:>12}{}{flag}", f2(row.x), f2(row.weight), row_for(&row.attraction));
                }
            }
            Report::Velocity(r) => {
                let _ = writeln!(s, "x = {}", f2(r.x));
                let kinds = r.rows.first().map(|row| row.velocity.keys().copied().collect::<Vec<_>>());
                let _ = writeln!(s, "{:>12}{}", "w", header_for(kinds.unwrap_or_default().into_iter()));
                for row in &r.rows {
                    let _ = writeln!(s, "{:>12}{}", f2(row.w), row_for(&row.velocity));
                }
            }
            Report::Predict(r) => {
                let _ = writeln!(s, "gain {} - {} (T(x) - T(n))^2", f2(r.base), f2(r.penalty));
                let _ = writeln!(s, "{:<12}{:>6}{:>12}{:>12}", "transform", "mean", "x*", "R(x*)");
                for p in &r.predictions {
                    let _ = writeln!(
                        s,
                        "{:<12}{:>6}{:>12}{:>12}",
                        p.transform.name(),
                        p.mean.abbreviation(),
                        f2(p.x_star),
                        f2(p.return_star)
                    );
                }
            }
            Report::Index(r) => {
                let i = &r.report;
                let _ = writeln!(s, "categories {}", r.categories);
                let _ = writeln!(s, "AM {}", f2(i.arithmetic));
                let _ = writeln!(s, "GM {}", f2(i.geometric));
                let _ = writeln!(s, "HM {}", f2(i.harmonic));
                let _ = writeln!(s, "AM-GM {}", f2(i.arithmetic_minus_geometric));
                let _ = writeln!(s, "GM-HM {}", f2(i.geometric_minus_harmonic));
                let _ = writeln!(s, "AM-HM {} ({}% of AM)", f2(i.arithmetic_minus_harmonic), f2(i.spread_percent));
            }
            Report::Ellipse(r) => {
                let _ = writeln!(s, "points {}, scale {}", r.points, f2(r.scale));
                for fit in &r.fits {
                    let [v1, v2] = fit.directions;
                    let _ = writeln!(
                        s,
                        "{}  center ({}, {})  spreads {} {}  axes ({}, {}) ({}, {})",
                        fit.mean_kind.abbreviation(),
                        f2(fit.center_original[0]),
                        f2(fit.center_original[1]),
                        f2(fit.spreads[0]),
                        f2(fit.spreads[1]),
                        f2(v1[0]),
                        f2(v1[1]),
                        f2(v2[0]),
                        f2(v2[1])
                    );
                }
            }
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let names = |m: &BTreeMap<MeanKind, f64>| m.keys().map(|k| k.name()).collect::<Vec<_>>().join(",");
        let vals = |m: &BTreeMap<MeanKind, f64>| m.values().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Report::Means(r) => {
                s.push_str("mean,value\n");
                for m in &r.means {
                    let _ = writeln!(s, "{},{}", m.mean, m.value);
                }
            }
            Report::Hyperrect(r) => {
                s.push_str("quantity,value\n");
                for (k, v) in [
                    ("dimension", r.dimension as f64),
                    ("hyperperimeter", r.hyperperimeter),
                    ("hypervolume", r.hypervolume),
                    ("facet_volume_mean", r.facet_volume_mean),
                    ("arithmetic", r.arithmetic),
                    ("geometric", r.geometric),
                    ("harmonic", r.harmonic),
                ] {
                    let _ = writeln!(s, "{k},{v}");
                }
                if let Some(a) = &r.agm {
                    let _ = writeln!(s, "agm,{}", a.value);
                }
            }
            Report::Attraction(r) => {
                let cols = r.rows.first().map(|row| names(&row.attraction)).unwrap_or_default();
                let _ = writeln!(s, "x,weight,within_range,{cols}");
                for row in &r.rows {
                    let _ = writeln!(s, "{},{},{},{}", row.x, row.weight, row.within_range, vals(&row.attraction));
                }
            }
            Report::Velocity(r) => {
                let cols = r.rows.first().map(|row| names(&row.velocity)).unwrap_or_default();
                let _ = writeln!(s, "w,{cols}");
                for row in &r.rows {
                    let _ = writeln!(s, "{},{}", row.w, vals(&row.velocity));
                }
            }
            Report::Predict(r) => {
                s.push_str("transform,mean,x_star,return_star\n");
                for p in &r.predictions {
                    let _ = writeln!(s, "{},{},{},{}", p.transform, p.mean, p.x_star, p.return_star);
                }
            }
            Report::Index(r) => {
                let i = &r.report;
                s.push_str("mean,value\n");
                let _ = writeln!(s, "arithmetic,{}", i.arithmetic);
                let _ = writeln!(s, "geometric,{}", i.geometric);
                let _ = writeln!(s, "harmonic,{}", i.harmonic);
            }
            Report::Ellipse(r) => {
                s.push_str("mean,center_x,center_y,spread_major,spread_minor,major_x,major_y,minor_x,minor_y\n");
                for fit in &r.fits {
                    let [v1, v2] = fit.directions;
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{},{},{},{}",
                        fit.mean_kind,
                        fit.center_original[0],
                        fit.center_original[1],
                        fit.spreads[0],
                        fit.spreads[1],
                        v1[0],
                        v1[1],
                        v2[0],
                        v2[1]
                    );
                }
            }
        }
        s
    }
}
