use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pythagorean_core::selection::Kernel;
use pythagorean_core::{MeanKind, Transform};

use crate::run::{
    AttractionSource, Command, OutputFormat, RunConfig, DEFAULT_ELLIPSE_SCALE, DEFAULT_GRID, DEFAULT_VELOCITY_STEP,
};

#[derive(Debug, Parser)]
#[command(name = "pythag", version, about = "Arithmetic, geometric and harmonic means and their applications")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeanArg {
    #[value(name = "am", alias = "arithmetic")]
    Am,
    #[value(name = "gm", alias = "geometric")]
    Gm,
    #[value(name = "hm", alias = "harmonic")]
    Hm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformArg {
    Identity,
    Log,
    Reciprocal,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KernelArg {
    Cauchy,
    Gaussian,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,
    /// Comma-separated subset of means to report.
    #[arg(long = "mean", value_enum, value_delimiter = ',', default_values = ["am", "gm", "hm"])]
    pub means: Vec<MeanArg>,
    /// Write an SVG plot to this path.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Weighted means of a `value[,weight]` CSV.
    Means {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Hyperrectangle reading of the means of a `value` CSV (equal weights).
    Hyperrect {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Attraction of each measurement toward each mean.
    Attraction {
        /// `value[,weight]` CSV; without it a regular grid is used.
        #[arg(long, conflicts_with_all = ["start", "end", "step"])]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_GRID.0)]
        start: f64,
        #[arg(long, default_value_t = DEFAULT_GRID.1)]
        end: f64,
        #[arg(long, default_value_t = DEFAULT_GRID.2)]
        step: f64,
        /// Use the weighted attraction with this kernel.
        #[arg(long, value_enum)]
        weighted: Option<KernelArg>,
        #[command(flatten)]
        common: Common,
    },
    /// Velocity of the means of {1, x} as the weight of x grows.
    Velocity {
        #[arg(long)]
        x: f64,
        /// Spacing of the weight grid over (0, 1].
        #[arg(long, default_value_t = DEFAULT_VELOCITY_STEP)]
        step: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Best predictor of a `value,probability` or `value,count` CSV.
    Predict {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        transform: TransformArg,
        #[arg(long, default_value_t = 1000.0)]
        base: f64,
        #[arg(long, default_value_t = 30.0)]
        penalty: f64,
        #[command(flatten)]
        common: Common,
    },
    /// All-items index of a `category,weight,index` CSV.
    Index {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Per-mean ellipses of an `x,y` CSV.
    Ellipse {
        #[arg(long)]
        input: PathBuf,
        /// Mahalanobis radius of the boundary.
        #[arg(long, default_value_t = DEFAULT_ELLIPSE_SCALE)]
        scale: f64,
        #[command(flatten)]
        common: Common,
    },
}

impl From<MeanArg> for MeanKind {
    fn from(m: MeanArg) -> Self {
        match m {
            MeanArg::Am => MeanKind::Arithmetic,
            MeanArg::Gm => MeanKind::Geometric,
            MeanArg::Hm => MeanKind::Harmonic,
        }
    }
}

fn config(command: Command, common: Common) -> RunConfig {
    let mut means: Vec<MeanKind> = common.means.into_iter().map(MeanKind::from).collect();
    means.sort();
    means.dedup();
    RunConfig {
        command,
        means,
        format: match common.format {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        },
        plot: common.plot,
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        match cli.command {
            Sub::Means { input, common } => config(Command::Means { input }, common),
            Sub::Hyperrect { input, common } => config(Command::Hyperrect { input }, common),
            Sub::Attraction {
                input,
                start,
                end,
                step,
                weighted,
                common,
            } => {
                let source = match input {
                    Some(path) => AttractionSource::File(path),
                    None => AttractionSource::Grid { start, end, step },
                };
                let kernel = weighted.map(|k| match k {
                    KernelArg::Cauchy => Kernel::Cauchy,
                    KernelArg::Gaussian => Kernel::Gaussian,
                });
                config(Command::Attraction { source, kernel }, common)
            }
            Sub::Velocity { x, step, common } => config(Command::Velocity { x, step }, common),
            Sub::Predict {
                input,
                transform,
                base,
                penalty,
                common,
            } => {
                let transforms = match transform {
                    TransformArg::Identity => vec![Transform::Identity],
                    TransformArg::Log => vec![Transform::Log],
                    TransformArg::Reciprocal => vec![Transform::Reciprocal],
                    TransformArg::All => Transform::ALL.to_vec(),
                };
                config(
                    Command::Predict {
                        input,
                        transforms,
                        base,
                        penalty,
                    },
                    common,
                )
            }
            Sub::Index { input, common } => config(Command::Index { input }, common),
            Sub::Ellipse { input, scale, common } => config(Command::Ellipse { input, scale }, common),
        }
    }
}
