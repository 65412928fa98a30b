//! All-items price index from weighted category sub-indices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::means::{mean, MeanKind, WeightedSample};

/// Published basket weights are rounded, typically to four decimals.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasketEntry {
    pub category: String,
    pub weight: f64,
    pub sub_index: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexBasket {
    entries: Vec<BasketEntry>,
}

impl IndexBasket {
    pub fn new(entries: Vec<BasketEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidBasket("basket is empty".into()));
        }
        for (i, e) in entries.iter().enumerate() {
            if !(e.weight > 0.0 && e.weight <= 1.0) {
                return Err(Error::InvalidBasket(format!(
                    "weight {} of '{}' is outside (0, 1]",
                    e.weight, e.category
                )));
            }
            if !(e.sub_index.is_finite() && e.sub_index > 0.0) {
                return Err(Error::InvalidBasket(format!(
                    "index {} of '{}' is not positive",
                    e.sub_index, e.category
                )));
            }
            if entries[..i].iter().any(|other| other.category == e.category) {
                return Err(Error::InvalidBasket(format!("duplicate category '{}'", e.category)));
            }
        }
        let total: f64 = entries.iter().map(|e| e.weight).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::InvalidBasket(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[BasketEntry] {
        &self.entries
    }

    fn as_sample(&self) -> WeightedSample {
        let (values, weights) = self.entries.iter().map(|e| (e.sub_index, e.weight)).unzip();
        WeightedSample::new(values, weights).expect("a valid basket is a valid sample")
    }
}

pub fn aggregate_index(b: &IndexBasket, kind: MeanKind) -> Result<f64> {
    mean(&b.as_sample(), kind)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub arithmetic: f64,
    pub geometric: f64,
    pub harmonic: f64,
    pub arithmetic_minus_geometric: f64,
    pub geometric_minus_harmonic: f64,
    pub arithmetic_minus_harmonic: f64,
    /// `(AM - HM) / AM`, in percent.
    pub spread_percent: f64,
}

pub fn index_report(b: &IndexBasket) -> Result<IndexReport> {
    let arithmetic = aggregate_index(b, MeanKind::Arithmetic)?;
    let geometric = aggregate_index(b, MeanKind::Geometric)?;
    let harmonic = aggregate_index(b, MeanKind::Harmonic)?;
    Ok(IndexReport {
        arithmetic,
        geometric,
        harmonic,
        arithmetic_minus_geometric: arithmetic - geometric,
        geometric_minus_harmonic: geometric - harmonic,
        arithmetic_minus_harmonic: arithmetic - harmonic,
        spread_percent: 100.0 * (arithmetic - harmonic) / arithmetic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn basket(rows: &[(&str, f64, f64)]) -> IndexBasket {
        IndexBasket::new(
            rows.iter()
                .map(|&(c, w, i)| BasketEntry {
                    category: c.into(),
                    weight: w,
                    sub_index: i,
                })
                .collect(),
        )
        .unwrap()
    }

    fn canada_2017() -> IndexBasket {
        basket(&[
            ("Food", 0.1648, 141.5),
            ("Shelter", 0.2736, 137.8),
            ("Household operations, furnishings and equipment", 0.1280, 121.4),
            ("Clothing and footwear", 0.0517, 91.1),
            ("Transportation", 0.1995, 133.0),
            ("Health and personal care", 0.0479, 123.4),
            ("Recreation, education and reading", 0.1024, 111.3),
            ("Alcoholic beverages, tobacco products and recreational cannabis", 0.0321, 158.7),
        ])
    }

    #[test]
    fn all_items_index() {
        let b = canada_2017();
        assert!((aggregate_index(&b, MeanKind::Arithmetic).unwrap() - 130.20).abs() < 0.01);
        assert!((aggregate_index(&b, MeanKind::Geometric).unwrap() - 129.40).abs() < 0.01);
        assert!((aggregate_index(&b, MeanKind::Harmonic).unwrap() - 128.50).abs() < 0.01);
        let r = index_report(&b).unwrap();
        assert!((r.spread_percent - 1.3).abs() < 0.1);
    }

    #[test]
    fn uniform_basket_has_no_spread() {
        let r = index_report(&basket(&[("a", 0.25, 117.0), ("b", 0.5, 117.0), ("c", 0.25, 117.0)])).unwrap();
        assert_relative_eq!(r.arithmetic, 117.0, max_relative = 1e-15);
        assert_relative_eq!(r.geometric, 117.0, max_relative = 1e-14);
        assert_relative_eq!(r.harmonic, 117.0, max_relative = 1e-15);
        assert!(r.spread_percent.abs() < 1e-12);
    }

    #[test]
    fn two_category_basket() {
        let r = index_report(&basket(&[("a", 0.5, 100.0), ("b", 0.5, 400.0)])).unwrap();
        assert_relative_eq!(r.arithmetic, 250.0);
        assert_relative_eq!(r.geometric, 200.0, max_relative = 1e-14);
        assert_relative_eq!(r.harmonic, 160.0, max_relative = 1e-14);
        assert_relative_eq!(r.spread_percent, 36.0, max_relative = 1e-12);
    }

    #[test]
    fn single_category_is_exact() {
        let b = basket(&[("only", 1.0, 123.4)]);
        for k in MeanKind::ALL {
            assert_eq!(aggregate_index(&b, k).unwrap(), 123.4);
        }
    }

    #[test]
    fn invalid_baskets() {
        let e = |c: &str, w, i| BasketEntry {
            category: c.into(),
            weight: w,
            sub_index: i,
        };
        assert!(IndexBasket::new(vec![]).is_err());
        assert!(IndexBasket::new(vec![e("a", 0.5, 100.0), e("b", 0.4, 100.0)]).is_err());
        assert!(IndexBasket::new(vec![e("a", 0.5, 100.0), e("a", 0.5, 100.0)]).is_err());
        assert!(IndexBasket::new(vec![e("a", 0.5, 0.0), e("b", 0.5, 100.0)]).is_err());
        assert!(IndexBasket::new(vec![e("a", 0.0, 10.0), e("b", 1.0, 100.0)]).is_err());
        assert!(matches!(
            IndexBasket::new(vec![e("a", 1.5, 10.0)]),
            Err(Error::InvalidBasket(_))
        ));
    }
}
