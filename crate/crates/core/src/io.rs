//! JSON exchange format for polynomials and truncated series.
//!
//! ```json
//! {"dimension": 2, "degree_cap": 10, "degree": 1,
//!  "terms": [{"exponents": [0, 0], "coeff": [1, 0]},
//!            {"exponents": [1, 0], "coeff": -1}]}
//! ```
//!
//! `coeff` is either a real number or `[re, im]`. Repeated exponents are
//! summed. Without `degree_cap` the series is treated as a polynomial whose
//! cap is its total degree. `degree` is an optional declared degree bound.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Coeff> for Complex64 {
    fn from(c: Coeff) -> Self {
        match c {
            Coeff::Real(re) => Complex64::new(re, 0.0),
            Coeff::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Term {
    exponents: Vec<u32>,
    coeff: Coeff,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<u32>,
    terms: Vec<Term>,
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub struct SeriesInput {
    pub series: TruncatedSeries,
    pub declared_degree: Option<u32>,
}

pub fn parse_series(text: &str) -> Result<SeriesInput> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.dimension == 0 {
        return Err(Error::ZeroDimension);
    }
    if let Some(t) = doc.terms.iter().find(|t| t.exponents.len() != doc.dimension) {
        return Err(Error::DimensionMismatch {
            left: doc.dimension,
            right: t.exponents.len(),
        });
    }
    let terms = doc
        .terms
        .into_iter()
        .map(|t| (t.exponents, Complex64::from(t.coeff)));
    let series = match doc.degree_cap {
        Some(cap) => TruncatedSeries::from_terms(doc.dimension, cap, terms)?,
        None => TruncatedSeries::polynomial(doc.dimension, terms)?,
    };
    Ok(SeriesInput {
        series,
        declared_degree: doc.degree,
    })
}

pub fn read_series(path: impl AsRef<Path>) -> Result<SeriesInput> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_series(&text)
}

/// The JSON document for `series`, with an explicit cap.
pub fn series_to_json(series: &TruncatedSeries, declared_degree: Option<u32>) -> serde_json::Value {
    let doc = Document {
        dimension: series.dim(),
        degree_cap: Some(series.cap()),
        degree: declared_degree,
        terms: series
            .terms()
            .map(|(k, v)| Term {
                exponents: k.exponents().to_vec(),
                coeff: Coeff::Complex([v.re, v.im]),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("series documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_sum_duplicates() {
        let text = r#"{"dimension": 2, "terms": [
            {"exponents": [1, 1], "coeff": [1, 0]},
            {"exponents": [1, 1], "coeff": 0.5},
            {"exponents": [0, 0], "coeff": [0, 2]}]}"#;
        let input = parse_series(text).unwrap();
        assert_eq!(input.series.coeff_of(&[1, 1]), Complex64::new(1.5, 0.0));
        assert_eq!(input.series.constant_term(), Complex64::new(0.0, 2.0));
        assert_eq!(input.series.cap(), 2);
        assert_eq!(input.declared_degree, None);
    }

    #[test]
    fn explicit_cap_and_degree() {
        let text = r#"{"dimension": 1, "degree_cap": 5, "degree": 3, "terms": [{"exponents": [9], "coeff": 1}]}"#;
        let input = parse_series(text).unwrap();
        assert_eq!(input.series.cap(), 5);
        assert!(input.series.is_empty());
        assert_eq!(input.declared_degree, Some(3));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_series("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_series(r#"{"dimension": 2, "terms": [{"exponents": [1], "coeff": 1}]}"#),
            Err(Error::DimensionMismatch { left: 2, right: 1 })
        ));
        assert!(matches!(
            parse_series(r#"{"dimension": 0, "terms": []}"#),
            Err(Error::ZeroDimension)
        ));
    }

    #[test]
    fn roundtrip() {
        let s = TruncatedSeries::from_terms(
            3,
            4,
            [(vec![1, 0, 2], Complex64::new(0.25, -1.0)), (vec![0, 0, 0], Complex64::new(2.0, 0.0))],
        )
        .unwrap();
        let text = series_to_json(&s, Some(3)).to_string();
        let back = parse_series(&text).unwrap();
        assert_eq!(back.series, s);
        assert_eq!(back.series.cap(), 4);
        assert_eq!(back.declared_degree, Some(3));
    }
}
