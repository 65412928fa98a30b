//! CSV formats read and written by the CLI.
//!
//! | file        | header                                       |
//! |-------------|----------------------------------------------|
//! | sample      | `value` or `value,weight`                    |
//! | distribution| `value,probability` or `value,count`         |
//! | basket      | `category,weight,index`                      |
//! | points      | `x,y`                                        |
//!
//! UTF-8, comma separated, `.` as decimal separator. Every row-level problem
//! is reported with the line number it occurs on (the header is line 1).

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use pythagorean_core::ellipse::{Point, PointCloud2D};
use pythagorean_core::index::{BasketEntry, IndexBasket};
use pythagorean_core::predictor::EmpiricalDistribution;
use pythagorean_core::WeightedSample;

use crate::error::{CliError, Result};

struct Row {
    line: u64,
    fields: Vec<String>,
}

fn read_table<R: Read>(reader: R, source: &str, accepted: &[&[&str]]) -> Result<(usize, Vec<Row>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| CliError::parse(source, 1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let layout = accepted
        .iter()
        .position(|cols| cols.len() == header.len() && cols.iter().zip(&header).all(|(a, b)| a == b))
        .ok_or_else(|| {
            let expected: Vec<String> = accepted.iter().map(|c| format!("`{}`", c.join(","))).collect();
            CliError::parse(
                source,
                1,
                format!("unexpected header `{}`; expected {}", header.join(","), expected.join(" or ")),
            )
        })?;
    let width = header.len();

    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            CliError::parse(source, line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != width {
            return Err(CliError::parse(
                source,
                line,
                format!("expected {width} fields, found {}", record.len()),
            ));
        }
        rows.push(Row {
            line,
            fields: record.iter().map(str::to_string).collect(),
        });
    }
    if rows.is_empty() {
        return Err(CliError::parse(source, 1, "no data rows"));
    }
    Ok((layout, rows))
}

fn number(source: &str, row: &Row, column: usize, name: &str) -> Result<f64> {
    let cell = &row.fields[column];
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::parse(source, row.line, format!("{name} `{cell}` is not a finite number"))),
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn source_name(path: &Path) -> String {
    path.display().to_string()
}

pub fn parse_weighted_csv(path: &Path) -> Result<WeightedSample> {
    read_weighted(open(path)?, &source_name(path))
}

/// A missing `weight` column means equal weights.
pub fn read_weighted<R: Read>(reader: R, source: &str) -> Result<WeightedSample> {
    let (layout, rows) = read_table(reader, source, &[&["value"], &["value", "weight"]])?;
    let mut values = Vec::with_capacity(rows.len());
    let mut weights = Vec::with_capacity(rows.len());
    for row in &rows {
        values.push(number(source, row, 0, "value")?);
        let w = if layout == 1 { number(source, row, 1, "weight")? } else { 1.0 };
        if w < 0.0 {
            return Err(CliError::parse(source, row.line, format!("weight {w} is negative")));
        }
        weights.push(w);
    }
    Ok(WeightedSample::new(values, weights)?)
}

pub fn parse_distribution_csv(path: &Path) -> Result<EmpiricalDistribution> {
    read_distribution(open(path)?, &source_name(path))
}

/// `value,count` rows are normalized to probabilities.
pub fn read_distribution<R: Read>(reader: R, source: &str) -> Result<EmpiricalDistribution> {
    let (layout, rows) = read_table(reader, source, &[&["value", "probability"], &["value", "count"]])?;
    let column = if layout == 0 { "probability" } else { "count" };
    let mut outcomes: Vec<(f64, f64, u64)> = Vec::with_capacity(rows.len());
    for row in &rows {
        let n = number(source, row, 0, "value")?;
        let p = number(source, row, 1, column)?;
        if n <= 0.0 {
            return Err(CliError::parse(source, row.line, format!("outcome {n} is not positive")));
        }
        if p < 0.0 {
            return Err(CliError::parse(source, row.line, format!("{column} {p} is negative")));
        }
        if let Some(&(_, _, first)) = outcomes.iter().find(|o| o.0 == n) {
            return Err(CliError::parse(
                source,
                row.line,
                format!("duplicate outcome {n} (first seen on line {first})"),
            ));
        }
        outcomes.push((n, p, row.line));
    }
    let pairs = outcomes.into_iter().map(|(n, p, _)| (n, p)).collect();
    Ok(if layout == 0 {
        EmpiricalDistribution::new(pairs)?
    } else {
        EmpiricalDistribution::from_counts(pairs)?
    })
}

pub fn parse_basket_csv(path: &Path) -> Result<IndexBasket> {
    read_basket(open(path)?, &source_name(path))
}

pub fn read_basket<R: Read>(reader: R, source: &str) -> Result<IndexBasket> {
    let (_, rows) = read_table(reader, source, &[&["category", "weight", "index"]])?;
    let mut entries: Vec<(BasketEntry, u64)> = Vec::with_capacity(rows.len());
    for row in &rows {
        let category = row.fields[0].clone();
        if category.is_empty() {
            return Err(CliError::parse(source, row.line, "empty category"));
        }
        let weight = number(source, row, 1, "weight")?;
        let sub_index = number(source, row, 2, "index")?;
        if !(weight > 0.0 && weight <= 1.0) {
            return Err(CliError::parse(source, row.line, format!("weight {weight} is outside (0, 1]")));
        }
        if sub_index <= 0.0 {
            return Err(CliError::parse(source, row.line, format!("index {sub_index} is not positive")));
        }
        if let Some((_, first)) = entries.iter().find(|(e, _)| e.category == category) {
            return Err(CliError::parse(
                source,
                row.line,
                format!("duplicate category '{category}' (first seen on line {first})"),
            ));
        }
        entries.push((
            BasketEntry {
                category,
                weight,
                sub_index,
            },
            row.line,
        ));
    }
    Ok(IndexBasket::new(entries.into_iter().map(|(e, _)| e).collect())?)
}

pub fn parse_points_csv(path: &Path) -> Result<PointCloud2D> {
    read_points(open(path)?, &source_name(path))
}

pub fn read_points<R: Read>(reader: R, source: &str) -> Result<PointCloud2D> {
    let (_, rows) = read_table(reader, source, &[&["x", "y"]])?;
    let points = rows
        .iter()
        .map(|row| Ok([number(source, row, 0, "x")?, number(source, row, 1, "y")?]))
        .collect::<Result<Vec<Point>>>()?;
    Ok(PointCloud2D::new(points)?)
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io {
        path: "<output>".into(),
        source: e.into(),
    }
}

fn finish<W: Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush().map_err(|source| CliError::Io {
        path: "<output>".into(),
        source,
    })
}

// `{}` on f64 prints the shortest representation that parses back to the
// same value, so these writers round-trip exactly.

pub fn write_weighted<W: Write>(out: W, s: &WeightedSample) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["value", "weight"]).map_err(csv_error)?;
    for (x, wt) in s.values().iter().zip(s.weights()) {
        w.write_record([x.to_string(), wt.to_string()]).map_err(csv_error)?;
    }
    finish(w)
}

pub fn write_distribution<W: Write>(out: W, d: &EmpiricalDistribution) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["value", "probability"]).map_err(csv_error)?;
    for (n, p) in d.outcomes() {
        w.write_record([n.to_string(), p.to_string()]).map_err(csv_error)?;
    }
    finish(w)
}

pub fn write_basket<W: Write>(out: W, b: &IndexBasket) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["category", "weight", "index"]).map_err(csv_error)?;
    for e in b.entries() {
        w.write_record([e.category.clone(), e.weight.to_string(), e.sub_index.to_string()])
            .map_err(csv_error)?;
    }
    finish(w)
}

pub fn write_points<W: Write>(out: W, cloud: &PointCloud2D) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y"]).map_err(csv_error)?;
    for p in cloud.points() {
        w.write_record([p[0].to_string(), p[1].to_string()]).map_err(csv_error)?;
    }
    finish(w)
}
