//! Exact rational and Gaussian-rational scalars.
//!
//! `Rational` is a canonical big rational (coprime parts, positive
//! denominator). `GaussianRational` is a complex number whose parts are
//! `Rational`s. Square roots are never taken; moduli appear only squared.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type GaussianRational = Complex<Rational>;
pub(crate) type GaussianInt = Complex<BigInt>;

/// Canonical rational from a numerator and a nonzero denominator.
pub fn normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num.into(), den))
}

/// Shorthand for small literal rationals. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    normalize(num, den).expect("nonzero denominator")
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn real(r: Rational) -> GaussianRational {
    Complex::new(r, Rational::zero())
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// `re² + im²`, i.e. `z·conj(z)`.
pub fn modulus_squared(z: &GaussianRational) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

pub fn compare(a: &Rational, b: &Rational) -> Ordering {
    // Cross multiplication; denominators are positive.
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

pub fn is_real(z: &GaussianRational) -> bool {
    z.im.is_zero()
}

/// Least common multiple of the denominators of every component.
pub(crate) fn common_denominator<'a>(entries: impl IntoIterator<Item = &'a GaussianRational>) -> BigInt {
    entries.into_iter().fold(BigInt::one(), |acc, z| {
        acc.lcm(z.re.denom()).lcm(z.im.denom())
    })
}

/// `z · scale` as a Gaussian integer. `scale` must clear both denominators.
pub(crate) fn scale_to_integer(z: &GaussianRational, scale: &BigInt) -> GaussianInt {
    let re = z.re.numer() * (scale / z.re.denom());
    let im = z.im.numer() * (scale / z.im.denom());
    Complex::new(re, im)
}

pub(crate) fn from_gaussian_int(z: GaussianInt) -> GaussianRational {
    Complex::new(Rational::from_integer(z.re), Rational::from_integer(z.im))
}

/// Always `p/q`, e.g. `3/1`, `-1/2`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `re` alone when the imaginary part is zero, otherwise `re±|im|i`.
pub fn format_entry(z: &GaussianRational) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let sign = if z.im.is_negative() { '-' } else { '+' };
    format!("{}{}{}i", format_rational(&z.re), sign, format_rational(&z.im.abs()))
}

fn parse_unsigned(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses `DIGITS/DIGITS` (a bare `DIGITS` is read as an integer).
fn parse_unsigned_rational(s: &str) -> Option<Result<Rational>> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_unsigned(n)?;
            let d = parse_unsigned(d)?;
            Some(normalize(n, d))
        }
        None => parse_unsigned(s).map(|n| Ok(Rational::from_integer(n))),
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse { what: "rational", input: s.to_string() };
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let r = parse_unsigned_rational(body).ok_or_else(err)??;
    Ok(if neg { -r } else { r })
}

/// Parses `RATIONAL [("+"|"-") RATIONAL "i"]`.
pub fn parse_entry(s: &str) -> Result<GaussianRational> {
    let err = || Error::Parse { what: "entry", input: s.to_string() };
    let t = s.trim();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(real(parse_rational(t)?));
    };
    // The separator is the last sign that is not the leading one.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last()
        .ok_or_else(err)?;
    let re = parse_rational(&body[..split]).map_err(|_| err())?;
    let im_abs = parse_unsigned_rational(&body[split + 1..]).ok_or_else(err)??;
    let im = if body.as_bytes()[split] == b'-' { -im_abs } else { im_abs };
    Ok(gauss(re, im))
}
