//! Arbitrary-precision scalars, exact rationals, dense polynomials and
//! truncated series.
//!
//! Real and complex numbers are MPFR/MPC values from `rug`; every value
//! produced by this crate carries the precision of the [`PrecisionContext`]
//! that created it.

pub(crate) mod exact;
mod poly;
mod series;

pub use exact::{parse_rational, rational_to_string, ExactComplex};
pub use poly::Polynomial;
pub use series::{Center, GermSeries};

pub use rug::{Complex, Float, Integer, Rational};

/// A multiprecision real.
pub type BigFloat = Float;
/// A multiprecision complex number.
pub type BigComplex = Complex;

use crate::error::{Error, Result};

/// Working precision and the tolerance policy derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionContext {
    bits: u32,
    zero_tol: Float,
    seed: u64,
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 128;

    /// Context with `zero_tol = 2^(-bits/4)`.
    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::InvalidPrecision(bits));
        }
        Ok(Self {
            bits,
            zero_tol: pow2(bits, -((bits / 4) as i64)),
            seed: 0,
        })
    }

    /// Default precision for a degree-`n` problem: `max(512, 24 n)` bits.
    pub fn for_degree(n: usize) -> Self {
        Self::new(default_bits(n)).expect("default precision is above the minimum")
    }

    pub fn with_zero_tol(mut self, tol: Float) -> Result<Self> {
        if !(tol > 0 && tol < 1) {
            return Err(Error::InvalidTolerance);
        }
        self.zero_tol = Float::with_val(self.bits, tol);
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn zero_tol(&self) -> &Float {
        &self.zero_tol
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Same policy at twice the precision.
    pub fn doubled(&self) -> Self {
        let mut next = Self::new(self.bits * 2).expect("doubling keeps precision valid");
        next.seed = self.seed;
        next
    }

    /// `2^(-bits/3)`, the per-root residual bound.
    pub fn root_tol(&self) -> Float {
        pow2(self.bits, -((self.bits / 3) as i64))
    }

    /// `2^(-bits/8)`, the radius under which roots count as a cluster.
    pub fn cluster_eps(&self) -> Float {
        pow2(self.bits, -((self.bits / 8) as i64))
    }

    pub fn float<T>(&self, value: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits, value)
    }

    pub fn complex<T>(&self, value: T) -> Complex
    where
        Complex: rug::Assign<T>,
    {
        Complex::with_val(self.bits, value)
    }

    pub fn zero(&self) -> Complex {
        Complex::new(self.bits)
    }
}

/// `max(512, 24 n)`.
pub fn default_bits(n: usize) -> u32 {
    (24 * n as u32).max(512)
}

/// `2^exp` at `bits` precision.
pub fn pow2(bits: u32, exp: i64) -> Float {
    let one = Float::with_val(bits, 1);
    if exp >= 0 {
        one << (exp as u32)
    } else {
        one >> ((-exp) as u32)
    }
}

/// `|z|` rounded to `bits`.
pub fn abs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// `|z|` at 64 bits; enough for comparisons and norms.
pub fn abs_lo(z: &Complex) -> Float {
    Float::with_val(64, z.abs_ref())
}

/// Whether both parts of `z` are bounded by `tol` in magnitude.
pub fn is_real_within(z: &Complex, tol: &Float) -> bool {
    z.imag().cmp_abs(tol) != Some(std::cmp::Ordering::Greater)
}

/// Decimal rendering with `digits` significant digits.
pub fn fmt_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}

/// Significant digits of every exported decimal.
pub const EXPORT_DIGITS: usize = 40;

/// `[re, im]` as decimal strings.
pub fn complex_strings(z: &Complex, digits: usize) -> [String; 2] {
    [fmt_float(z.real(), digits), fmt_float(z.imag(), digits)]
}

/// Coefficients as `[re, im]` decimal pairs, ascending.
pub fn poly_strings(p: &Polynomial, digits: usize) -> Vec<[String; 2]> {
    p.coeffs().iter().map(|c| complex_strings(c, digits)).collect()
}

/// Parses a decimal or `num/den` string into a float at `bits`.
pub fn parse_float(s: &str, bits: u32) -> Result<Float> {
    if let Ok(q) = parse_rational(s) {
        return Ok(Float::with_val(bits, &q));
    }
    let parsed = Float::parse(s.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
    Ok(Float::with_val(bits, parsed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_policy() {
        let ctx = PrecisionContext::new(512).unwrap();
        assert_eq!(ctx.zero_tol(), &pow2(512, -128));
        assert!(PrecisionContext::new(127).is_err());
        assert_eq!(PrecisionContext::for_degree(10).bits(), 512);
        assert_eq!(PrecisionContext::for_degree(60).bits(), 1440);
        assert_eq!(ctx.doubled().bits(), 1024);
        let bad = Float::with_val(64, 2);
        assert!(ctx.clone().with_zero_tol(bad).is_err());
    }

    #[test]
    fn float_formatting_is_stable() {
        let x = Float::with_val(256, 1) / 3u32;
        assert_eq!(fmt_float(&x, 10), "3.333333333e-1");
        assert_eq!(fmt_float(&Float::new(64), 10), "0");
    }

    #[test]
    fn parse_float_accepts_fractions_and_decimals() {
        let a = parse_float("1/4", 128).unwrap();
        assert_eq!(a, 0.25);
        let b = parse_float("-1.5e-3", 128).unwrap();
        assert_eq!(b, Float::with_val(128, -15) / 10000u32);
    }
}
