//! Exact rational helpers shared by the interval and Cantor code.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Lossy conversion; exact for dyadic values that fit in an `f64`.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: divide in log space.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Exact rational for a finite `f64` (every finite double is dyadic).
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Domain(format!("{x} is not finite")))
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Parse `p/q`, an integer, or a plain decimal such as `0.61` (read exactly).
pub fn parse(text: &str) -> std::result::Result<Rational, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty number".into());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {t:?}"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {t:?}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {t:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(format!("bad number {t:?}"));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("bad number {t:?}"));
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = digits.parse().map_err(|_| format!("bad number {t:?}"))?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Canonical `p/q` (or `p` for integers) text form.
pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}
