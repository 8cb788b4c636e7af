//! JSON and table rendering of a [`SolutionSet`].
//!
//! Exact rationals are `"p/q"` strings, floats are rounded to 15
//! significant digits, so parsing a report and writing it again gives the
//! same bytes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::classify::{EinsteinSolution, Provenance, Scalar};
use super::{CaseReport, CaseStatus, SolutionSet};
use crate::error::{Error, Result};
use crate::rational;

/// Rounds to 15 significant digits.
pub fn round15(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarJson {
    Exact(String),
    Float(f64),
}

impl From<&Scalar> for ScalarJson {
    fn from(s: &Scalar) -> Self {
        match s {
            Scalar::Exact(r) => ScalarJson::Exact(rational::to_string(r)),
            Scalar::Float(v) => ScalarJson::Float(round15(*v)),
        }
    }
}

impl TryFrom<ScalarJson> for Scalar {
    type Error = Error;

    fn try_from(s: ScalarJson) -> Result<Scalar> {
        match s {
            ScalarJson::Exact(t) => rational::parse(&t)
                .map(Scalar::Exact)
                .ok_or_else(|| Error::config(format!("bad rational {t:?}"))),
            ScalarJson::Float(v) => Ok(Scalar::Float(v)),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CaseJson {
    name: String,
    elimination_degree: Option<usize>,
    real_roots: Option<usize>,
    positive_roots: Option<usize>,
    status: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SolutionJson {
    x: Vec<ScalarJson>,
    k: ScalarJson,
    kaehler: bool,
    class: usize,
    provenance: String,
    residual: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ReportJson {
    group: String,
    normalization: String,
    cases: Vec<CaseJson>,
    solutions: Vec<SolutionJson>,
}

fn status_from_str(s: &str) -> Result<CaseStatus> {
    [CaseStatus::Solved, CaseStatus::BudgetExceeded, CaseStatus::Search]
        .into_iter()
        .find(|c| c.as_str() == s)
        .ok_or_else(|| Error::config(format!("unknown case status {s:?}")))
}

fn provenance_from_str(s: &str) -> Result<Provenance> {
    [Provenance::Algebraic, Provenance::Numeric]
        .into_iter()
        .find(|p| p.as_str() == s)
        .ok_or_else(|| Error::config(format!("unknown provenance {s:?}")))
}

pub fn to_json(set: &SolutionSet) -> String {
    let r = ReportJson {
        group: set.group.clone(),
        normalization: set.normalization.clone(),
        cases: set
            .cases
            .iter()
            .map(|c| CaseJson {
                name: c.name.clone(),
                elimination_degree: c.elimination_degree,
                real_roots: c.real_roots,
                positive_roots: c.positive_roots,
                status: c.status.as_str().into(),
            })
            .collect(),
        solutions: set
            .solutions
            .iter()
            .map(|s| SolutionJson {
                x: s.x.iter().map(ScalarJson::from).collect(),
                k: (&s.k).into(),
                kaehler: s.kaehler,
                class: s.class,
                provenance: s.provenance.as_str().into(),
                residual: round15(s.residual),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&r).expect("report serialises")
}

pub fn from_json(text: &str) -> Result<SolutionSet> {
    let r: ReportJson =
        serde_json::from_str(text).map_err(|e| Error::config(format!("bad report: {e}")))?;
    let cases = r
        .cases
        .into_iter()
        .map(|c| {
            Ok(CaseReport {
                name: c.name,
                elimination_degree: c.elimination_degree,
                real_roots: c.real_roots,
                positive_roots: c.positive_roots,
                status: status_from_str(&c.status)?,
            })
        })
        .collect::<Result<_>>()?;
    let solutions = r
        .solutions
        .into_iter()
        .map(|s| {
            Ok(EinsteinSolution {
                x: s.x.into_iter().map(Scalar::try_from).collect::<Result<_>>()?,
                k: s.k.try_into()?,
                kaehler: s.kaehler,
                class: s.class,
                provenance: provenance_from_str(&s.provenance)?,
                residual: s.residual,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SolutionSet {
        group: r.group,
        normalization: r.normalization,
        cases,
        solutions,
    })
}

/// Rationals as `p/q`, floats with 6 decimals.
pub fn format_scalar(s: &Scalar) -> String {
    match s {
        Scalar::Exact(r) => rational::to_string(r),
        Scalar::Float(v) => format!("{v:.6}"),
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".into(), |n| n.to_string())
}

pub fn to_table(set: &SolutionSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group {}  gauge {}", set.group, set.normalization);
    if !set.cases.is_empty() {
        let _ = writeln!(out, "\n{:<40} {:>6} {:>5} {:>8}  status", "case", "degree", "real", "positive");
        for c in &set.cases {
            let _ = writeln!(
                out,
                "{:<40} {:>6} {:>5} {:>8}  {}",
                c.name,
                opt(c.elimination_degree),
                opt(c.real_roots),
                opt(c.positive_roots),
                c.status.as_str()
            );
        }
    }
    let _ = writeln!(out, "\n{} isometry classes ({} Kähler)", set.solutions.len(), set.kaehler_classes());
    for s in &set.solutions {
        let x: Vec<String> = s.x.iter().map(format_scalar).collect();
        let _ = writeln!(
            out,
            "class {}  kaehler={}  {}  k={}  residual={:.1e}\n  x = ({})",
            s.class,
            s.kaehler,
            s.provenance.as_str(),
            format_scalar(&s.k),
            s.residual,
            x.join(", ")
        );
    }
    out
}
