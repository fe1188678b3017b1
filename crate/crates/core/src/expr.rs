//! Divisor-class expressions: `C+2L1+2L2`, `-1/2*L1 + E2`, or a plain
//! coordinate list `2,2,1`.
//!
//! Labels resolve against basis labels first, then negative curves, then
//! effective generators. Coefficients are integers or fractions `a/b`, with an
//! optional `*` before the label.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceModel};
use crate::rational::{format_rational, parse_rational, Rational};

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

fn lookup(model: &SurfaceModel, label: &str) -> Option<DivisorClass> {
    if let Some(i) = model.basis_labels().iter().position(|l| l == label) {
        return Some(DivisorClass::basis_vector(model.rank(), i));
    }
    model
        .negative_curves()
        .iter()
        .chain(model.effective_generators())
        .find(|c| c.label == label)
        .map(|c| c.class.clone())
}

fn parse_vector(model: &SurfaceModel, src: &str) -> Result<DivisorClass> {
    let mut coords = Vec::new();
    let mut offset = 0;
    for part in src.split(',') {
        let lead = part.len() - part.trim_start().len();
        let r = parse_rational(part.trim())
            .map_err(|e| err(src[..offset + lead].chars().count() + 1, e.to_string()))?;
        coords.push(r);
        offset += part.len() + 1;
    }
    if coords.len() != model.rank() {
        return Err(Error::DimensionMismatch {
            expected: model.rank(),
            found: coords.len(),
        });
    }
    Ok(DivisorClass::new(coords))
}

/// Parses a class expression against the model's labels.
pub fn parse_class(model: &SurfaceModel, src: &str) -> Result<DivisorClass> {
    if src.contains(',') || (model.rank() == 1 && parse_rational(src.trim()).is_ok()) {
        return parse_vector(model, src);
    }
    if src.trim() == "0" {
        return Ok(DivisorClass::zero(model.rank()));
    }
    let chars: Vec<char> = src.chars().map(|c| if c == '−' { '-' } else { c }).collect();
    let n = chars.len();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < n && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let mut total = DivisorClass::zero(model.rank());
    let mut first = true;
    loop {
        skip_ws(&mut i);
        if i == n {
            if first {
                return Err(err(i + 1, "empty class expression"));
            }
            break;
        }
        let mut sign = Rational::one();
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(err(i + 1, format!("expected '+' or '-', found '{}'", chars[i])));
        }
        first = false;

        let term_start = i;
        while i < n && (chars[i].is_ascii_digit() || chars[i] == '/') {
            i += 1;
        }
        let coeff = if i > term_start {
            let text: String = chars[term_start..i].iter().collect();
            parse_rational(&text).map_err(|e| err(term_start + 1, e.to_string()))?
        } else {
            Rational::one()
        };
        skip_ws(&mut i);
        if i < n && chars[i] == '*' {
            i += 1;
            skip_ws(&mut i);
        }
        let label_start = i;
        if i < n && (chars[i].is_alphabetic() || chars[i] == '_') {
            while i < n && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
        }
        if i == label_start {
            return Err(match chars.get(i) {
                Some(c) => err(i + 1, format!("expected a label, found '{c}'")),
                None => err(i + 1, "expected a label"),
            });
        }
        let label: String = chars[label_start..i].iter().collect();
        let class = lookup(model, &label).ok_or_else(|| err(label_start + 1, format!("unknown label '{label}'")))?;
        total = &total + &class.scaled(&(sign * coeff));
    }
    Ok(total)
}

/// Writes a class as a combination of basis labels, e.g. `2L1 + 2L2 + C`.
pub fn format_class(model: &SurfaceModel, d: &DivisorClass) -> String {
    let mut out = String::new();
    for (c, label) in d.coords().iter().zip(model.basis_labels()) {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            let m = format_rational(&magnitude);
            out.push_str(&m);
            if m.contains('/') {
                out.push('*');
            }
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
