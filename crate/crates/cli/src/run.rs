use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use pythagorean_core::ellipse::{fit_ellipse, DEFAULT_SCALE};
use pythagorean_core::geometry::{
    agm_iterate, am_from_perimeter, circle_construction, facet_volume_mean, gm_from_volume, hm_from_ratio,
    hyperperimeter, hypervolume, HyperRect,
};
use pythagorean_core::index::index_report;
use pythagorean_core::means::mean;
use pythagorean_core::predictor::{best_predictor, return_function, GainSpec};
use pythagorean_core::selection::{
    cauchy_attraction, mean_velocity, normalization, uniform_grid, weight_grid, weighted_attractions, Kernel,
};
use pythagorean_core::{MeanKind, Transform, WeightedSample};

use crate::csv_io::{parse_basket_csv, parse_distribution_csv, parse_points_csv, parse_weighted_csv};
use crate::error::{CliError, Result};
use crate::report::{
    AttractionReport, AttractionRow, EllipseReport, HyperrectReport, IndexSummary, MeanValue, MeansReport,
    PredictReport, PredictionRow, Report, VelocityReport, VelocityRow,
};
use crate::svg::{circle_plot, ellipse_plot, line_chart, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AttractionSource {
    File(PathBuf),
    Grid { start: f64, end: f64, step: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Means { input: PathBuf },
    Hyperrect { input: PathBuf },
    Attraction { source: AttractionSource, kernel: Option<Kernel> },
    Velocity { x: f64, step: f64 },
    Predict { input: PathBuf, transforms: Vec<Transform>, base: f64, penalty: f64 },
    Index { input: PathBuf },
    Ellipse { input: PathBuf, scale: f64 },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Means { .. } => "means",
            Command::Hyperrect { .. } => "hyperrect",
            Command::Attraction { .. } => "attraction",
            Command::Velocity { .. } => "velocity",
            Command::Predict { .. } => "predict",
            Command::Index { .. } => "index",
            Command::Ellipse { .. } => "ellipse",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Which means to report; ignored by `hyperrect` and `index`, which
    /// always report all three.
    pub means: Vec<MeanKind>,
    pub format: OutputFormat,
    pub plot: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            means: MeanKind::ALL.to_vec(),
            format: OutputFormat::Text,
            plot: None,
        }
    }

    /// Checks the numeric options; data problems surface later, from `run`.
    pub fn validate(&self) -> Result<()> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.means.is_empty() {
            return usage("at least one mean must be selected".into());
        }
        match &self.command {
            Command::Attraction {
                source: AttractionSource::Grid { start, end, step },
                ..
            } => {
                if !(start.is_finite() && end.is_finite() && *start > 0.0 && end > start) {
                    return usage(format!("grid needs 0 < start < end, got {start}..{end}"));
                }
                if !(step.is_finite() && *step > 0.0) || (end - start) / step > 1e6 {
                    return usage(format!("grid step {step} must be positive and give at most 1e6 points"));
                }
            }
            Command::Velocity { x, step } => {
                if !(*x > 0.0 && *x < 1.0) {
                    return usage(format!("--x must be in (0, 1), got {x}"));
                }
                if !(*step > 0.0 && *step <= 1.0) {
                    return usage(format!("--step must be in (0, 1], got {step}"));
                }
            }
            Command::Predict { transforms, base, penalty, .. } => {
                if transforms.is_empty() {
                    return usage("at least one transform must be selected".into());
                }
                if !base.is_finite() {
                    return usage(format!("--base must be finite, got {base}"));
                }
                if !(penalty.is_finite() && *penalty > 0.0) {
                    return usage(format!("--penalty must be positive, got {penalty}"));
                }
            }
            Command::Ellipse { scale, .. } if !(scale.is_finite() && *scale > 0.0) => {
                return usage(format!("--scale must be positive, got {scale}"));
            }
            _ => {}
        }
        if self.plot.is_some() && matches!(self.command, Command::Means { .. } | Command::Index { .. }) {
            return usage(format!("--plot is not available for `{}`", self.command.name()));
        }
        Ok(())
    }
}

pub const DEFAULT_GRID: (f64, f64, f64) = (0.1, 10.0, 0.01);
pub const DEFAULT_VELOCITY_STEP: f64 = 0.01;
pub const DEFAULT_ELLIPSE_SCALE: f64 = DEFAULT_SCALE;

/// Runs one subcommand: writes the rendered report to `out`, the plot to
/// its path when one is requested, and returns the report.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<Report> {
    config.validate()?;
    let (report, plot) = build(config)?;
    let rendered = match config.format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Csv => report.to_csv(),
    };
    out.write_all(rendered.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })?;
    if let (Some(path), Some(svg)) = (&config.plot, plot) {
        write_plot(path, &svg)?;
    }
    Ok(report)
}

fn write_plot(path: &Path, svg: &str) -> Result<()> {
    std::fs::write(path, svg).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn build(config: &RunConfig) -> Result<(Report, Option<String>)> {
    let wants_plot = config.plot.is_some();
    let kinds = &config.means;
    match &config.command {
        Command::Means { input } => {
            let s = parse_weighted_csv(input)?;
            let (min, max) = s.range();
            let means = kinds
                .iter()
                .map(|&k| Ok(MeanValue { mean: k, value: mean(&s, k)? }))
                .collect::<Result<_>>()?;
            Ok((
                Report::Means(MeansReport {
                    n: s.len(),
                    total_weight: s.total_weight(),
                    min,
                    max,
                    means,
                }),
                None,
            ))
        }
        Command::Hyperrect { input } => {
            let s = parse_weighted_csv(input)?;
            if s.weights().windows(2).any(|w| w[0] != w[1]) {
                return Err(CliError::Usage("hyperrectangle means use equal weights; drop the weight column".into()));
            }
            let r = HyperRect::new(s.values().to_vec())?;
            let (circle, agm) = match *r.edges() {
                [a, b] => (Some(circle_construction(a, b)?), Some(agm_iterate(a, b)?)),
                _ => (None, None),
            };
            if wants_plot && circle.is_none() {
                return Err(CliError::Usage("--plot for `hyperrect` draws the two-value construction; give exactly two values".into()));
            }
            let plot = circle.as_ref().map(circle_plot);
            Ok((
                Report::Hyperrect(HyperrectReport {
                    dimension: r.dimension(),
                    edges: r.edges().to_vec(),
                    hyperperimeter: hyperperimeter(&r),
                    hypervolume: hypervolume(&r),
                    facet_volume_mean: facet_volume_mean(&r),
                    arithmetic: am_from_perimeter(&r),
                    geometric: gm_from_volume(&r),
                    harmonic: hm_from_ratio(&r),
                    circle,
                    agm,
                }),
                plot,
            ))
        }
        Command::Attraction { source, kernel } => {
            let s = match source {
                AttractionSource::File(path) => parse_weighted_csv(path)?,
                AttractionSource::Grid { start, end, step } => {
                    WeightedSample::equally_weighted(uniform_grid(*start, *end, *step)?)?
                }
            };
            let centers = kinds
                .iter()
                .map(|&k| Ok(MeanValue { mean: k, value: mean(&s, k)? }))
                .collect::<Result<Vec<_>>>()?;
            let (lo, hi) = s.range();
            let mut columns: BTreeMap<MeanKind, Vec<f64>> = BTreeMap::new();
            for &k in kinds {
                let col = match kernel {
                    Some(kernel) => weighted_attractions(&s, k, *kernel)?,
                    None => s
                        .values()
                        .iter()
                        .map(|&x| cauchy_attraction(&s, k, x))
                        .collect::<pythagorean_core::Result<_>>()?,
                };
                columns.insert(k, col);
            }
            let rows: Vec<AttractionRow> = s
                .values()
                .iter()
                .zip(s.weights())
                .enumerate()
                .map(|(i, (&x, &w))| AttractionRow {
                    x,
                    weight: w,
                    within_range: (lo..=hi).contains(&x),
                    attraction: columns.iter().map(|(&k, col)| (k, col[i])).collect(),
                })
                .collect();
            let plot = wants_plot.then(|| {
                let mut order: Vec<usize> = (0..rows.len()).collect();
                order.sort_by(|&a, &b| rows[a].x.total_cmp(&rows[b].x));
                let series: Vec<Series> = columns
                    .iter()
                    .map(|(&k, col)| Series {
                        label: k.name().into(),
                        kind: k,
                        points: order.iter().map(|&i| (rows[i].x, col[i])).collect(),
                    })
                    .collect();
                line_chart("Attraction functions", "x", "attraction", &series)
            });
            Ok((
                Report::Attraction(AttractionReport {
                    kernel: *kernel,
                    normalization: normalization(&s),
                    centers,
                    rows,
                }),
                plot,
            ))
        }
        Command::Velocity { x, step } => {
            let ws = weight_grid(*step)?;
            let rows = ws
                .iter()
                .map(|&w| {
                    let velocity = kinds
                        .iter()
                        .map(|&k| Ok((k, mean_velocity(k, *x, w)?)))
                        .collect::<Result<_>>()?;
                    Ok(VelocityRow { w, velocity })
                })
                .collect::<Result<Vec<_>>>()?;
            let plot = wants_plot.then(|| {
                let series: Vec<Series> = kinds
                    .iter()
                    .map(|&k| Series {
                        label: k.name().into(),
                        kind: k,
                        points: rows.iter().map(|r| (r.w, r.velocity[&k])).collect(),
                    })
                    .collect();
                line_chart(&format!("Mean velocities, x = {x}"), "w", "velocity", &series)
            });
            Ok((Report::Velocity(VelocityReport { x: *x, rows }), plot))
        }
        Command::Predict {
            input,
            transforms,
            base,
            penalty,
        } => {
            let dist = parse_distribution_csv(input)?;
            let mut predictions = Vec::with_capacity(transforms.len());
            let mut series = Vec::new();
            let (lo, hi) = dist.support();
            for &t in transforms {
                let spec = GainSpec::new(*base, *penalty, t)?;
                let p = best_predictor(&spec, &dist)?;
                predictions.push(PredictionRow {
                    transform: t,
                    mean: t.mean_kind(),
                    x_star: p.x_star,
                    return_star: p.return_star,
                });
                if wants_plot {
                    let points = (0..=400)
                        .map(|i| {
                            let x = lo + (hi - lo) * i as f64 / 400.0;
                            Ok((x, return_function(&spec, &dist, x)?))
                        })
                        .collect::<Result<_>>()?;
                    series.push(Series {
                        label: format!("R(x), {t}"),
                        kind: t.mean_kind(),
                        points,
                    });
                }
            }
            let plot = wants_plot.then(|| line_chart("Return functions", "x", "R(x)", &series));
            Ok((
                Report::Predict(PredictReport {
                    base: *base,
                    penalty: *penalty,
                    predictions,
                }),
                plot,
            ))
        }
        Command::Index { input } => {
            let basket = parse_basket_csv(input)?;
            Ok((
                Report::Index(IndexSummary {
                    categories: basket.entries().len(),
                    report: index_report(&basket)?,
                }),
                None,
            ))
        }
        Command::Ellipse { input, scale } => {
            let cloud = parse_points_csv(input)?;
            let fits = kinds
                .iter()
                .map(|&k| Ok(fit_ellipse(&cloud, k, *scale)?))
                .collect::<Result<Vec<_>>>()?;
            let plot = wants_plot.then(|| ellipse_plot(cloud.points(), &fits));
            Ok((
                Report::Ellipse(EllipseReport {
                    points: cloud.len(),
                    scale: *scale,
                    fits,
                }),
                plot,
            ))
        }
    }
}
