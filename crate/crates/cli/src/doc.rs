//! JSON documents: maps in, reports out.
//!
//! Complex numbers are `[re, im]`; the point at infinity is the string
//! `"inf"`.

use std::path::Path;

use fixdyn::{
    AnalysisReport, Complex64, ExtendedComplex, FixedPointRecord, GeometryVerdict, PeriodicReport,
    Polynomial, RationalMap, Tolerances,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MapDocument {
    Polynomial { coeffs: Vec<[f64; 2]> },
    Rational { numerator: Vec<[f64; 2]>, denominator: Vec<[f64; 2]> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoadedMap {
    Polynomial(Polynomial),
    Rational(RationalMap),
}

impl LoadedMap {
    pub fn to_rational(&self) -> RationalMap {
        match self {
            LoadedMap::Polynomial(p) => RationalMap::polynomial(p.clone()),
            LoadedMap::Rational(r) => r.clone(),
        }
    }

    /// The map as a polynomial, if its denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        match self {
            LoadedMap::Polynomial(p) => Some(p.clone()),
            LoadedMap::Rational(r) => r.as_polynomial(),
        }
    }
}

fn to_complex(pairs: &[[f64; 2]]) -> Result<Vec<Complex64>, CliError> {
    pairs
        .iter()
        .map(|&[re, im]| {
            if re.is_finite() && im.is_finite() {
                Ok(Complex64::new(re, im))
            } else {
                Err(CliError::Parse(format!("non-finite coefficient [{re}, {im}]")))
            }
        })
        .collect()
}

fn to_pairs(p: &Polynomial) -> Vec<[f64; 2]> {
    p.coeffs().iter().map(|c| [c.re + 0.0, c.im + 0.0]).collect()
}

impl MapDocument {
    pub fn from_polynomial(p: &Polynomial) -> Self {
        MapDocument::Polynomial { coeffs: to_pairs(p) }
    }

    pub fn from_rational(r: &RationalMap) -> Self {
        MapDocument::Rational { numerator: to_pairs(r.numerator()), denominator: to_pairs(r.denominator()) }
    }

    /// Builds the map, re-checking the core invariants.
    pub fn load(&self, tol: &Tolerances) -> Result<LoadedMap, CliError> {
        match self {
            MapDocument::Polynomial { coeffs } => {
                if coeffs.is_empty() {
                    return Err(CliError::Parse("empty coefficient list".into()));
                }
                Ok(LoadedMap::Polynomial(Polynomial::new(to_complex(coeffs)?)))
            }
            MapDocument::Rational { numerator, denominator } => {
                if numerator.is_empty() || denominator.is_empty() {
                    return Err(CliError::Parse("empty coefficient list".into()));
                }
                let num = Polynomial::new(to_complex(numerator)?);
                let den = Polynomial::new(to_complex(denominator)?);
                Ok(LoadedMap::Rational(RationalMap::new(num, den, tol)?))
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("map documents always serialize");
        s.push('\n');
        s
    }
}

pub fn parse_map_str(text: &str, tol: &Tolerances) -> Result<LoadedMap, CliError> {
    let doc: MapDocument = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    doc.load(tol)
}

pub fn parse_map(path: &Path, tol: &Tolerances) -> Result<LoadedMap, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Domain(fixdyn::Error::IoFailure(format!("{}: {e}", path.display()))))?;
    parse_map_str(&text, tol)
}

/// `[re, im]`, with negative zero written as zero.
pub fn complex(z: Complex64) -> Value {
    json!([z.re + 0.0, z.im + 0.0])
}

pub fn extended(z: ExtendedComplex) -> Value {
    match z {
        ExtendedComplex::Finite(w) => complex(w),
        ExtendedComplex::Infinity => json!("inf"),
    }
}

fn record(r: &FixedPointRecord) -> Value {
    json!({
        "location": extended(r.location),
        "multiplier": complex(r.multiplier),
        "multiplicity": r.multiplicity,
        "index": complex(r.index),
        "class": r.class.as_str(),
        "weakly_repelling": r.weakly_repelling,
    })
}

pub fn analysis_json(report: &AnalysisReport, secondary: Option<(Option<ExtendedComplex>, Option<ExtendedComplex>)>) -> Value {
    let mut v = json!({
        "degree": report.degree,
        "is_polynomial": report.is_polynomial,
        "fixed_points": report.records.iter().map(record).collect::<Vec<_>>(),
        "rfpt_sum": complex(report.rfpt_sum),
        "rfpt_residual": report.rfpt_residual,
        "finite_sum": report.finite_sum.map(complex),
        "rnfp_witness": report.rnfp_witness.map(extended),
        "weakly_repelling_witness": report.weakly_repelling_witness.map(extended),
    });
    if let Some((first, second)) = secondary {
        v["secondary_witnesses"] = json!([first.map(extended), second.map(extended)]);
    }
    v
}

pub fn geometry_json(v: &GeometryVerdict) -> Value {
    json!({
        "equidistant": v.equidistant,
        "common_distance": v.common_distance,
        "shape": v.shape.label(),
        "all_real_part_one": v.all_real_part_one,
        "theorem_consistent": v.theorem_consistent,
        "reason": v.reason,
    })
}

pub fn periodic_json(report: &PeriodicReport) -> Value {
    json!({
        "period": report.period,
        "points": report.records.iter().map(record).collect::<Vec<_>>(),
        "cycles": report.cycles.iter().map(|c| json!({
            "points": c.points.iter().copied().map(complex).collect::<Vec<_>>(),
            "multiplier": complex(c.multiplier),
        })).collect::<Vec<_>>(),
        "rnfp_witness": report.rnfp_witness.map(complex),
    })
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports always serialize");
    s.push('\n');
    s
}
