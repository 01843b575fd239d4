//! Exact scalars and small vector helpers.
//!
//! All geometry runs over [`Scalar`], an arbitrary precision rational. The
//! optional float mode only changes how results are rendered and is used by the
//! handful of inherently inexact procedures (epigraph distances, Monte Carlo
//! cross-checks).

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;
pub type Point = Vec<Scalar>;

/// Arithmetic mode of a computation or report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Rational,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Rational => "rational",
            Mode::Float => "float",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Mode::Rational),
            "float" => Ok(Mode::Float),
            other => Err(Error::InvalidArgument(format!("unknown mode {other}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| int(c)).collect()
}

/// Parses `"p/q"`, integers and finite decimals (`"0.25"`, `"-1.5e-2"`) exactly.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Ok(i) = BigInt::from_str(s) {
        return Ok(BigRational::from_integer(i));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, fracpart) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && fracpart.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(fracpart.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{whole}{fracpart}");
    let num = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
    let scale = exp - fracpart.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(num);
    if scale >= 0 {
        value *= BigRational::from_integer(num::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn to_f64(v: &Scalar) -> f64 {
    v.to_f64().unwrap_or_else(|| {
        // huge numerators: fall back to a ratio of separately converted parts
        let n = v.numer().to_f64().unwrap_or(f64::NAN);
        let d = v.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact rational with the same value as a finite double.
pub fn from_f64(v: f64) -> Option<Scalar> {
    BigRational::from_float(v)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Scalar], t: &Scalar) -> Point {
    a.iter().map(|x| x * t).collect()
}

pub fn neg(a: &[Scalar]) -> Point {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// `v^k` for a small exponent.
pub fn frac_pow(v: &Scalar, k: u32) -> Scalar {
    (0..k).fold(Scalar::one(), |acc, _| acc * v)
}

pub fn max_abs(a: &[Scalar]) -> Scalar {
    a.iter().map(|x| x.abs()).max().unwrap_or_else(Scalar::zero)
}

/// Positive rescaling of `v` to a primitive integer vector (coprime entries).
/// The zero vector is returned unchanged.
pub fn primitive(v: &[Scalar]) -> Point {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| BigRational::from_integer(x / &gcd)).collect()
}

/// Display wrapper for a point, `(a, b, c)`.
pub struct Pt<'a>(pub &'a [Scalar]);

impl fmt::Display for Pt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_scalar(x))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_scalar("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_scalar("-4").unwrap(), int(-4));
        assert_eq!(parse_scalar("0.25").unwrap(), frac(1, 4));
        assert_eq!(parse_scalar("-1.5e-1").unwrap(), frac(-3, 20));
        assert_eq!(parse_scalar("2e3").unwrap(), int(2000));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("abc").is_err());
    }

    #[test]
    fn format_is_reduced() {
        assert_eq!(format_scalar(&frac(6, -4)), "-3/2");
        assert_eq!(format_scalar(&int(7)), "7");
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[frac(1, 2), frac(-3, 4)]), point(&[2, -3]));
        assert_eq!(primitive(&[int(0), int(6)]), point(&[0, 1]));
        assert_eq!(primitive(&[int(0), int(0)]), point(&[0, 0]));
    }
}
