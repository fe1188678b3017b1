//! Exact rationals and the small helpers built on them.
//!
//! All quantities in this crate are [`Rational`]s (arbitrary precision,
//! always reduced, positive denominator). Floating point never enters the
//! computation path.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}: {}", self.input, self.reason)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"a"`, `"-a"`, `"a/b"` or `"-a/b"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: s.to_string(),
        reason,
    };
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(err("expected decimal digits"));
    }
    let mut n: BigInt = num.parse().map_err(|_| err("expected decimal digits"))?;
    if neg {
        n = -n;
    }
    let d: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| err("expected decimal digits"))?,
        Some(_) => return Err(err("expected decimal digits after '/'")),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// `"a"` for integers, `"a/b"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Clears denominators and divides by the content. The zero vector maps to
/// itself; the sign of the input is preserved.
pub fn primitive_integral(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &content).collect()
}

/// Fixed-point decimal rendering with `digits` fractional digits, rounding
/// ties to even. Exact: the rational is never converted to a float.
pub fn to_decimal_half_even(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let floor = scaled.floor();
    let rem = &scaled - &floor;
    let half = frac(1, 2);
    let mut q = floor.to_integer();
    if rem > half || (rem == half && q.is_odd()) {
        q += 1;
    }
    let neg = q.is_negative();
    let abs = q.abs();
    let (ip, fp) = abs.div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{ip}");
    }
    format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = digits as usize)
}
