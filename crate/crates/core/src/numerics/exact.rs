use std::fmt;
use std::str::FromStr;

use rug::{Complex, Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Parses `"p/q"`, an integer, or a decimal with optional exponent into an
/// exact rational. `"0.9"` becomes `9/10`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Parse(format!("not a rational: {s:?}"));
    if s.is_empty() {
        return Err(err());
    }
    if s.contains('/') {
        let q = Rational::from_str(s).map_err(|_| err())?;
        return Ok(q);
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all = format!("{int_part}{frac_part}");
    let num = Integer::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| err())?;
    let scale = exp as i64 - frac_part.len() as i64;
    let mut q = Rational::from(num);
    if scale >= 0 {
        q *= Rational::from(Integer::u_pow_u(10, scale as u32));
    } else {
        q /= Rational::from(Integer::u_pow_u(10, (-scale) as u32));
    }
    if neg {
        q = -q;
    }
    Ok(q)
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational_to_string(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A complex number with exact rational parts; used for user-supplied
/// parameters so that germs can be rebuilt at any precision.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactComplex {
    pub re: Rational,
    pub im: Rational,
}

impl ExactComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::new() }
    }

    pub fn parse(re: &str, im: &str) -> Result<Self> {
        Ok(Self::new(parse_rational(re)?, parse_rational(im)?))
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_real(&self) -> bool {
        self.im == 0
    }

    pub fn to_complex(&self, bits: u32) -> Complex {
        Complex::with_val(bits, (&self.re, &self.im))
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = Rational::from(&self.re * &other.re) - Rational::from(&self.im * &other.im);
        let im = Rational::from(&self.re * &other.im) + Rational::from(&self.im * &other.re);
        Self::new(re, im)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = Rational::from(self.re.square_ref()) + Rational::from(self.im.square_ref());
        Some(Self::new(
            Rational::from(&self.re / &norm),
            -Rational::from(&self.im / &norm),
        ))
    }

    /// Integer power, negative exponents allowed for nonzero bases.
    pub fn powi(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::real(Rational::from(1));
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rational_to_string(&self.re), rational_to_string(&self.im))
    }
}

impl Serialize for ExactComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [rational_to_string(&self.re), rational_to_string(&self.im)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [re, im] = <[String; 2]>::deserialize(d)?;
        ExactComplex::parse(&re, &im).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of rationals written as `"p/q"` strings.
pub(crate) mod rational_vec_str {
    use super::*;

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        qs.iter().map(rational_to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
