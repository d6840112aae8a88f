use rug::{Complex, Float, Rational};

use super::pow2;
use crate::error::{Error, Result};

/// Expansion point of a germ.
#[derive(Debug, Clone, PartialEq)]
pub enum Center {
    Infinity,
    Origin,
    Point(Complex),
}

/// Truncated expansion `sum_k coeffs[k] t^(offset + k)` in the local variable
/// `t = 1/z` (center at infinity) or `t = z - c` (finite center).
///
/// Powers at or beyond `offset + len` are unknown. Powers below `offset`
/// are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GermSeries {
    center: Center,
    offset: i64,
    coeffs: Vec<Complex>,
    bits: u32,
}

impl GermSeries {
    pub fn new(center: Center, offset: i64, coeffs: Vec<Complex>, bits: u32) -> Self {
        Self { center, offset, coeffs, bits }
    }

    /// Series with the given real coefficients.
    pub fn from_floats(center: Center, offset: i64, coeffs: Vec<Float>, bits: u32) -> Self {
        let coeffs = coeffs.into_iter().map(|c| Complex::with_val(bits, (c, 0))).collect();
        Self::new(center, offset, coeffs, bits)
    }

    pub fn constant(center: Center, value: Complex, len: usize, bits: u32) -> Self {
        let mut coeffs = vec![Complex::new(bits); len];
        if len > 0 {
            coeffs[0] = Complex::with_val(bits, value);
        }
        Self::new(center, 0, coeffs, bits)
    }

    /// `(1 + c t^step)^alpha` with binomial coefficients formed exactly and
    /// rounded once; `c` is exact.
    pub fn binomial_exact(
        center: Center,
        c: &super::ExactComplex,
        step: usize,
        alpha: &Rational,
        len: usize,
        bits: u32,
    ) -> Self {
        assert!(step >= 1);
        let mut coeffs = vec![Complex::new(bits); len];
        let mut binom = Rational::from(1);
        let mut power = super::ExactComplex::real(Rational::from(1));
        let mut k = 0usize;
        while k * step < len {
            let term = power.mul(&super::ExactComplex::real(binom.clone()));
            coeffs[k * step] = term.to_complex(bits);
            k += 1;
            binom *= alpha - Rational::from(k as u64 - 1) ;
            binom /= Rational::from(k as u64);
            power = power.mul(c);
        }
        Self::new(center, 0, coeffs, bits)
    }

    /// `(1 + c t^step)^alpha` for an inexact `c`; binomials are exact and
    /// rounded once, powers of `c` accumulate one rounding per step.
    pub fn binomial(
        center: Center,
        c: &Complex,
        step: usize,
        alpha: &Rational,
        len: usize,
        bits: u32,
    ) -> Self {
        assert!(step >= 1);
        let mut coeffs = vec![Complex::new(bits); len];
        let mut binom = Rational::from(1);
        let mut power = Complex::with_val(bits, 1);
        let mut k = 0usize;
        while k * step < len {
            coeffs[k * step] = Complex::with_val(bits, &power * &binom);
            k += 1;
            binom *= alpha - Rational::from(k as u64 - 1) ;
            binom /= Rational::from(k as u64);
            power *= c;
        }
        Self::new(center, 0, coeffs, bits)
    }

    pub fn center(&self) -> &Center {
        &self.center
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// First power of `t` that is not known.
    pub fn end(&self) -> i64 {
        self.offset + self.coeffs.len() as i64
    }

    /// Coefficient of `t^power`: zero below the offset, `None` past the
    /// truncation.
    pub fn coeff(&self, power: i64) -> Option<Complex> {
        if power >= self.end() {
            None
        } else if power < self.offset {
            Some(Complex::new(self.bits))
        } else {
            Some(self.coeffs[(power - self.offset) as usize].clone())
        }
    }

    /// Borrowing variant of [`coeff`](Self::coeff) for in-range powers.
    pub fn coeff_ref(&self, power: i64) -> Option<&Complex> {
        if power < self.offset || power >= self.end() {
            None
        } else {
            Some(&self.coeffs[(power - self.offset) as usize])
        }
    }

    /// Whether every coefficient is real within `tol`.
    pub fn is_real(&self, tol: &Float) -> bool {
        self.coeffs.iter().all(|c| super::is_real_within(c, tol))
    }

    pub fn truncate(&mut self, len: usize) {
        self.coeffs.truncate(len);
    }

    /// Drops leading exact zeros, raising the offset.
    pub fn normalize_offset(mut self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 && lead < self.coeffs.len() {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
        self
    }

    pub fn scale(&self, factor: &Complex) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| Complex::with_val(self.bits, c * factor))
            .collect();
        Self::new(self.center.clone(), self.offset, coeffs, self.bits)
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        let mut out = self.clone();
        out.offset += shift;
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.center != other.center {
            return Err(Error::CenterMismatch);
        }
        let bits = self.bits.max(other.bits);
        let offset = self.offset.min(other.offset);
        let end = self.end().min(other.end());
        let len = (end - offset).max(0) as usize;
        let coeffs = (0..len)
            .map(|k| {
                let p = offset + k as i64;
                let mut c = Complex::new(bits);
                if let Some(a) = self.coeff_ref(p) {
                    c += a;
                }
                if let Some(b) = other.coeff_ref(p) {
                    c += b;
                }
                c
            })
            .collect();
        Ok(Self::new(self.center.clone(), offset, coeffs, bits))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Complex::with_val(other.bits, -1)))
    }

    /// Cauchy product; the result is known to `min(len a, len b)` terms.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.center != other.center {
            return Err(Error::CenterMismatch);
        }
        let bits = self.bits.max(other.bits);
        let len = self.len().min(other.len());
        let mut coeffs = vec![Complex::new(bits); len];
        let mut tmp = Complex::new(bits);
        for (k, out) in coeffs.iter_mut().enumerate() {
            for i in 0..=k {
                let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                rug::Assign::assign(&mut tmp, a * b);
                *out += &tmp;
            }
        }
        Ok(Self::new(self.center.clone(), self.offset + other.offset, coeffs, bits))
    }

    /// `u^alpha` for `u = 1 + h`, `h = O(t)`, choosing the branch equal to 1
    /// at the center.
    ///
    /// When `h` is a single monomial the binomial coefficients are formed
    /// exactly and rounded once; otherwise the power is accumulated with the
    /// standard `w' u = alpha u' w` recurrence.
    pub fn binomial_pow(&self, alpha: &Rational) -> Result<Self> {
        let bits = self.bits;
        if self.coeffs.is_empty() {
            return Ok(self.clone());
        }
        let one_tol = pow2(bits, -((bits / 2) as i64));
        let c0 = self.coeff(0).ok_or(Error::LeadingCoefficient)?;
        let dev = Complex::with_val(bits, &c0 - 1u32);
        if self.offset > 0 || Float::with_val(64, dev.abs_ref()) > one_tol {
            return Err(Error::LeadingCoefficient);
        }
        if self.offset < 0 && self.coeffs[..(-self.offset) as usize].iter().any(|c| !c.is_zero()) {
            return Err(Error::LeadingCoefficient);
        }
        let base = self.clone().normalize_offset();
        let len = (base.end()).max(0) as usize;
        let h: Vec<(usize, &Complex)> = (1..len)
            .filter_map(|p| base.coeff_ref(p as i64).filter(|c| !c.is_zero()).map(|c| (p, c)))
            .collect();
        if h.is_empty() {
            return Ok(Self::constant(self.center.clone(), Complex::with_val(bits, 1), len, bits));
        }
        if h.len() == 1 {
            let (step, c) = h[0];
            return Ok(Self::binomial(self.center.clone(), c, step, alpha, len, bits));
        }
        let u: Vec<Complex> = (0..len)
            .map(|p| base.coeff(p as i64).expect("within length"))
            .collect();
        let alpha1 = Rational::from(alpha + 1u32);
        let mut w = vec![Complex::new(bits); len];
        w[0] = Complex::with_val(bits, 1);
        let mut tmp = Complex::new(bits);
        for k in 1..len {
            let mut acc = Complex::new(bits);
            for j in 1..=k {
                if u[j].is_zero() {
                    continue;
                }
                let weight = Rational::from(&alpha1 * j as u64) - k as u64;
                if weight == 0 {
                    continue;
                }
                rug::Assign::assign(&mut tmp, &u[j] * &w[k - j]);
                tmp *= &weight;
                acc += &tmp;
            }
            acc /= k as u64;
            w[k] = acc;
        }
        Ok(Self::new(self.center.clone(), 0, w, bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ExactComplex;

    const BITS: u32 = 256;

    fn real(coeffs: &[f64], offset: i64) -> GermSeries {
        let coeffs = coeffs.iter().map(|&c| Complex::with_val(BITS, (c, 0))).collect();
        GermSeries::new(Center::Infinity, offset, coeffs, BITS)
    }

    fn tol() -> Float {
        pow2(BITS, -64)
    }

    // f64 literals like 0.1 are inexact, so compare at double precision.
    fn close(a: &Complex, b: f64) -> bool {
        Float::with_val(64, (a - Complex::with_val(BITS, (b, 0))).abs_ref()) < pow2(64, -50)
    }

    #[test]
    fn difference_of_squares() {
        let a = real(&[1.0, 1.0, 0.0, 0.0], 0);
        let b = real(&[1.0, -1.0, 0.0, 0.0], 0);
        let p = a.mul(&b).unwrap();
        let expect = [1.0, 0.0, -1.0, 0.0];
        assert_eq!(p.offset(), 0);
        for (c, e) in p.coeffs().iter().zip(expect) {
            assert!(close(c, e));
        }
    }

    #[test]
    fn add_identity() {
        let a = real(&[1.0, 0.0, 0.0], 1);
        let s = a.add(&a).unwrap();
        assert_eq!(s.offset(), 1);
        assert!(close(&s.coeffs()[0], 2.0));
        assert!(close(&s.coeffs()[1], 0.0));
    }

    #[test]
    fn add_with_different_offsets_truncates_to_common_knowledge() {
        let a = real(&[1.0, 2.0, 3.0], 0); // known through t^2
        let b = real(&[5.0, 6.0, 7.0, 8.0], 1); // known through t^4
        let s = a.add(&b).unwrap();
        assert_eq!(s.offset(), 0);
        assert_eq!(s.end(), 3);
        assert!(close(&s.coeffs()[1], 7.0));
        assert!(close(&s.coeffs()[2], 9.0));
    }

    #[test]
    fn center_mismatch_is_an_error() {
        let a = real(&[1.0], 0);
        let b = GermSeries::new(Center::Origin, 0, a.coeffs().to_vec(), BITS);
        assert!(matches!(a.mul(&b), Err(Error::CenterMismatch)));
        assert!(matches!(a.add(&b), Err(Error::CenterMismatch)));
    }

    #[test]
    fn binomial_identity_exponent() {
        let u = real(&[1.0, 1.0, 0.0, 0.0], 0);
        let p = u.binomial_pow(&Rational::from(1)).unwrap();
        for (c, e) in p.coeffs().iter().zip([1.0, 1.0, 0.0, 0.0]) {
            assert!(close(c, e));
        }
    }

    #[test]
    fn binomial_half_first_coefficient() {
        let c = ExactComplex::real(Rational::from((-1, 5)));
        let s = GermSeries::binomial_exact(Center::Infinity, &c, 1, &Rational::from((1, 2)), 8, BITS);
        assert!(close(&s.coeffs()[1], -0.1));
        // C(1/2, 2) * 0.04 = -1/8 * 0.04
        assert!(close(&s.coeffs()[2], -0.005));
    }

    #[test]
    fn binomial_of_product_matches_closed_form() {
        // ((1 - 0.2/z)(1 + 1/z)^-1)^(1/2): coefficient of 1/z is -a/2 - 1/2.
        let half = Rational::from((1, 2));
        let u1 = GermSeries::binomial_exact(
            Center::Infinity,
            &ExactComplex::real(Rational::from((-1, 5))),
            1,
            &Rational::from(1),
            12,
            BITS,
        );
        let u2 = GermSeries::binomial_exact(
            Center::Infinity,
            &ExactComplex::real(Rational::from(1)),
            1,
            &Rational::from(-1),
            12,
            BITS,
        );
        let u = u1.mul(&u2).unwrap();
        let w = u.binomial_pow(&half).unwrap();
        assert!(close(&w.coeffs()[0], 1.0));
        assert!(close(&w.coeffs()[1], -0.6));
        // squaring returns the base
        let sq = w.mul(&w).unwrap();
        for (a, b) in sq.coeffs().iter().zip(u.coeffs()) {
            assert!(Float::with_val(64, Complex::with_val(BITS, a - b).abs_ref()) < tol());
        }
    }

    #[test]
    fn square_root_times_inverse_root_is_one() {
        let base = GermSeries::binomial_exact(
            Center::Infinity,
            &ExactComplex::real(Rational::from((-1, 5))),
            1,
            &Rational::from(1),
            20,
            BITS,
        );
        let r = base.binomial_pow(&Rational::from((1, 2))).unwrap();
        let rinv = base.binomial_pow(&Rational::from((-1, 2))).unwrap();
        let one = r.mul(&rinv).unwrap();
        assert!(close(&one.coeffs()[0], 1.0));
        for c in &one.coeffs()[1..] {
            assert!(close(c, 0.0));
        }
    }

    #[test]
    fn binomial_pow_rejects_non_unit_leading_term() {
        let u = real(&[2.0, 1.0], 0);
        assert!(matches!(u.binomial_pow(&Rational::from((1, 2))), Err(Error::LeadingCoefficient)));
        let v = real(&[1.0, 1.0], 1);
        assert!(matches!(v.binomial_pow(&Rational::from((1, 2))), Err(Error::LeadingCoefficient)));
    }
}
