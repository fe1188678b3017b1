//! Deterministic SVG rendering of labelled polygons.
//!
//! Layout: one model unit is [`SCALE`] user units, the y axis points up
//! (model `y` is written as `-y·SCALE`), and the `viewBox` is the bounding
//! box of all vertices padded by 5% of its width and height on every side.
//! Coordinates are printed with six decimals, rounding ties to even, from the
//! exact rational values. Polygons are filled translucent so nested bodies
//! stay visible.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::polygon::RationalPolygon;
use crate::rational::{frac, int, to_decimal_half_even, Rational};

pub const SCALE: i64 = 100;

const PALETTE: &[&str] = &[
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn num(r: &Rational) -> String {
    to_decimal_half_even(r, 6)
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

pub fn emit_svg(polygons: &[(RationalPolygon, String)]) -> String {
    let scale = int(SCALE);
    let pts: Vec<(Rational, Rational)> = polygons
        .iter()
        .flat_map(|(p, _)| p.vertices())
        .map(|v| (&v.x * &scale, -(&v.y * &scale)))
        .collect();
    let (min_x, min_y, width, height) = if pts.is_empty() {
        (int(0), int(0), scale.clone(), scale.clone())
    } else {
        let min_x = pts.iter().map(|p| &p.0).min().unwrap().clone();
        let max_x = pts.iter().map(|p| &p.0).max().unwrap().clone();
        let min_y = pts.iter().map(|p| &p.1).min().unwrap().clone();
        let max_y = pts.iter().map(|p| &p.1).max().unwrap().clone();
        let (w, h) = (&max_x - &min_x, &max_y - &min_y);
        let fallback = |own: &Rational, other: &Rational| {
            if !own.is_zero() {
                own * frac(1, 20)
            } else if !other.is_zero() {
                other * frac(1, 20)
            } else {
                &scale * frac(1, 20)
            }
        };
        let (pad_x, pad_y) = (fallback(&w, &h), fallback(&h, &w));
        (
            &min_x - &pad_x,
            &min_y - &pad_y,
            w + int(2) * &pad_x,
            h + int(2) * &pad_y,
        )
    };
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">",
        num(&min_x),
        num(&min_y),
        num(&width),
        num(&height),
        num(&width),
        num(&height)
    );
    for (i, (poly, label)) in polygons.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut d = String::new();
        for (k, v) in poly.vertices().iter().enumerate() {
            let cmd = if k == 0 { "M" } else { " L" };
            let _ = write!(d, "{cmd} {} {}", num(&(&v.x * &scale)), num(&-(&v.y * &scale)));
        }
        if !poly.is_empty() {
            d.push_str(" Z");
        }
        let _ = writeln!(
            out,
            "  <path d=\"{d}\" fill=\"{color}\" fill-opacity=\"0.3\" stroke=\"{color}\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"><title>{}</title></path>",
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}
