//! Text format for surface models (TOML).
//!
//! ```toml
//! name = "quartic"
//! rank = 3
//! basis_labels = ["L1", "L2", "C"]
//! gram = [["-2", "1", "2"], ["1", "-2", "2"], ["2", "2", "-2"]]
//!
//! [[negative_curves]]
//! label = "L1"
//! coords = ["1", "0", "0"]
//!
//! [[effective_generators]]
//! label = "L1"
//! coords = ["1", "0", "0"]
//! ```
//!
//! Rationals are strings `"a"` or `"a/b"` with an optional leading minus;
//! bare TOML integers are accepted too. Both curve tables may be empty.

use std::ops::Range;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, LabeledClass, SurfaceModel};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Str(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    label: String,
    coords: Spanned<Vec<Spanned<RawRational>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    name: String,
    rank: Spanned<usize>,
    basis_labels: Spanned<Vec<String>>,
    gram: Spanned<Vec<Spanned<Vec<Spanned<RawRational>>>>>,
    #[serde(default)]
    negative_curves: Vec<RawClass>,
    #[serde(default)]
    effective_generators: Vec<RawClass>,
}

#[derive(Serialize)]
struct OutClass {
    label: String,
    coords: Vec<String>,
}

#[derive(Serialize)]
struct OutModel {
    name: String,
    rank: usize,
    basis_labels: Vec<String>,
    gram: Vec<Vec<String>>,
    negative_curves: Vec<OutClass>,
    effective_generators: Vec<OutClass>,
}

/// 1-based line and column of a byte offset.
fn line_column(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[line_start..].chars().count() + 1)
}

fn parse_error(src: &str, span: Range<usize>, message: impl Into<String>) -> Error {
    let (line, column) = line_column(src, span.start);
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn rational(src: &str, raw: &Spanned<RawRational>) -> Result<Rational> {
    match raw.get_ref() {
        RawRational::Int(n) => Ok(Rational::from_integer((*n).into())),
        RawRational::Str(s) => {
            parse_rational(s).map_err(|e| parse_error(src, raw.span(), e.to_string()))
        }
    }
}

fn row(src: &str, raw: &Spanned<Vec<Spanned<RawRational>>>, rank: usize, what: &str) -> Result<Vec<Rational>> {
    if raw.get_ref().len() != rank {
        return Err(parse_error(
            src,
            raw.span(),
            format!("{what} has {} entries, expected {rank}", raw.get_ref().len()),
        ));
    }
    raw.get_ref().iter().map(|r| rational(src, r)).collect()
}

/// Parses and validates a model document.
pub fn parse_model(src: &str) -> Result<SurfaceModel> {
    let raw: RawModel = toml::from_str(src).map_err(|e| {
        let span = e.span().unwrap_or(0..0);
        parse_error(src, span, e.message().to_string())
    })?;
    let rank = *raw.rank.get_ref();
    if raw.basis_labels.get_ref().len() != rank {
        return Err(parse_error(
            src,
            raw.basis_labels.span(),
            format!(
                "basis_labels has {} entries, expected rank {rank}",
                raw.basis_labels.get_ref().len()
            ),
        ));
    }
    if raw.gram.get_ref().len() != rank {
        return Err(parse_error(
            src,
            raw.gram.span(),
            format!("gram has {} rows, expected {rank}", raw.gram.get_ref().len()),
        ));
    }
    let gram = raw
        .gram
        .get_ref()
        .iter()
        .map(|r| row(src, r, rank, "gram row"))
        .collect::<Result<Vec<_>>>()?;
    let classes = |list: &[RawClass]| -> Result<Vec<LabeledClass>> {
        list.iter()
            .map(|c| {
                let coords = row(src, &c.coords, rank, &format!("coords of {}", c.label))?;
                Ok(LabeledClass::new(c.label.clone(), DivisorClass::new(coords)))
            })
            .collect()
    };
    SurfaceModel::validated(
        raw.name,
        raw.basis_labels.into_inner(),
        gram,
        classes(&raw.negative_curves)?,
        classes(&raw.effective_generators)?,
    )
}

pub fn write_model(model: &SurfaceModel) -> String {
    let strings = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
    let classes = |v: &[LabeledClass]| {
        v.iter()
            .map(|c| OutClass {
                label: c.label.clone(),
                coords: strings(c.class.coords()),
            })
            .collect()
    };
    let out = OutModel {
        name: model.name().to_string(),
        rank: model.rank(),
        basis_labels: model.basis_labels().to_vec(),
        gram: model.gram().iter().map(|r| strings(r)).collect(),
        negative_curves: classes(model.negative_curves()),
        effective_generators: classes(model.effective_generators()),
    };
    toml::to_string(&out).expect("model serializes to TOML")
}
