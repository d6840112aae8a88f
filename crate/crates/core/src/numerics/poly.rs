use rug::{Assign, Complex, Float};

use super::series::{Center, GermSeries};

/// Dense polynomial with complex coefficients in ascending powers.
///
/// Trailing coefficients are trimmed only when exactly zero, so the stored
/// length reflects what the solver produced. Use
/// [`effective_degree`](Self::effective_degree) for a tolerance-based degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
    bits: u32,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex>, bits: u32) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, bits }
    }

    pub fn zero(bits: u32) -> Self {
        Self { coeffs: Vec::new(), bits }
    }

    pub fn from_f64(coeffs: &[f64], bits: u32) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::with_val(bits, (c, 0))).collect(), bits)
    }

    pub fn from_floats(coeffs: Vec<Float>, bits: u32) -> Self {
        Self::new(coeffs.into_iter().map(|c| Complex::with_val(bits, (c, 0))).collect(), bits)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex], bits: u32) -> Self {
        let mut p = Self::new(vec![Complex::with_val(bits, 1)], bits);
        for r in roots {
            let lin = Self::new(vec![Complex::with_val(bits, -r), Complex::with_val(bits, 1)], bits);
            p = p.mul(&lin);
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex> {
        self.coeffs
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the highest stored coefficient; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Highest index whose coefficient exceeds `tol` times the max-norm.
    pub fn effective_degree(&self, tol: &Float) -> Option<usize> {
        let scale = Float::with_val(64, self.max_norm() * tol);
        self.coeffs
            .iter()
            .rposition(|c| Float::with_val(64, c.abs_ref()) > scale)
    }

    /// Largest coefficient magnitude, at 64 bits.
    pub fn max_norm(&self) -> Float {
        let mut m = Float::new(64);
        for c in &self.coeffs {
            let a = Float::with_val(64, c.abs_ref());
            if a > m {
                m = a;
            }
        }
        m
    }

    pub fn coeff(&self, i: usize) -> Complex {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Complex::new(self.bits))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &Complex) -> Complex {
        let mut acc = Complex::new(self.bits.max(z.prec().0));
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c;
        }
        acc
    }

    /// `(p(z), p'(z))` in one Horner pass.
    pub fn eval_with_derivative(&self, z: &Complex) -> (Complex, Complex) {
        let prec = self.bits.max(z.prec().0);
        let mut p = Complex::new(prec);
        let mut dp = Complex::new(prec);
        for c in self.coeffs.iter().rev() {
            dp *= z;
            dp += &p;
            p *= z;
            p += c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Complex::with_val(self.bits, c * i as u32))
            .collect();
        Self::new(coeffs, self.bits)
    }

    pub fn add(&self, other: &Self) -> Self {
        let bits = self.bits.max(other.bits);
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let mut c = Complex::new(bits);
                if let Some(a) = self.coeffs.get(i) {
                    c += a;
                }
                if let Some(b) = other.coeffs.get(i) {
                    c += b;
                }
                c
            })
            .collect();
        Self::new(coeffs, bits)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Complex::with_val(other.bits, -1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.bits.max(other.bits));
        }
        let bits = self.bits.max(other.bits);
        let mut coeffs = vec![Complex::new(bits); self.coeffs.len() + other.coeffs.len() - 1];
        let mut tmp = Complex::new(bits);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                tmp.assign(a * b);
                coeffs[i + j] += &tmp;
            }
        }
        Self::new(coeffs, bits)
    }

    pub fn scale(&self, factor: &Complex) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| Complex::with_val(self.bits, c * factor))
            .collect();
        Self::new(coeffs, self.bits)
    }

    /// Whether every coefficient is real within `tol`.
    pub fn is_real(&self, tol: &Float) -> bool {
        self.coeffs.iter().all(|c| super::is_real_within(c, tol))
    }

    /// Product with a germ, returned in the germ's local variable.
    ///
    /// At infinity `z^i = t^(-i)`, so the offset drops by the degree and the
    /// known window keeps its length. At a finite center the series is first
    /// re-expanded only if the center is the origin; other centers are
    /// handled by the caller.
    pub fn mul_series(&self, s: &GermSeries) -> GermSeries {
        let bits = self.bits.max(s.bits());
        let deg = self.degree() as i64;
        let mut tmp = Complex::new(bits);
        match s.center() {
            Center::Infinity => {
                let offset = s.offset() - deg;
                let end = s.end() - deg;
                let coeffs = (offset..end)
                    .map(|p| {
                        let mut acc = Complex::new(bits);
                        for (i, c) in self.coeffs.iter().enumerate() {
                            if let Some(v) = s.coeff_ref(p + i as i64) {
                                tmp.assign(c * v);
                                acc += &tmp;
                            }
                        }
                        acc
                    })
                    .collect();
                GermSeries::new(Center::Infinity, offset, coeffs, bits)
            }
            center => {
                let offset = s.offset();
                let end = s.end();
                let coeffs = (offset..end)
                    .map(|p| {
                        let mut acc = Complex::new(bits);
                        for (i, c) in self.coeffs.iter().enumerate() {
                            if let Some(v) = s.coeff_ref(p - i as i64) {
                                tmp.assign(c * v);
                                acc += &tmp;
                            }
                        }
                        acc
                    })
                    .collect();
                GermSeries::new(center.clone(), offset, coeffs, bits)
            }
        }
    }

    /// The polynomial as a germ at infinity in `t = 1/z`, exact and of
    /// unbounded length up to `end`.
    pub fn to_series_at_infinity(&self, end: i64) -> GermSeries {
        let deg = self.degree() as i64;
        let offset = -deg;
        let coeffs = (offset..end.max(offset))
            .map(|p| {
                let i = -p;
                if (0..=deg).contains(&i) {
                    self.coeff(i as usize)
                } else {
                    Complex::new(self.bits)
                }
            })
            .collect();
        GermSeries::new(Center::Infinity, offset, coeffs, self.bits)
    }

    /// The polynomial as a germ at the origin known through `t^(end-1)`.
    pub fn to_series_at_origin(&self, end: i64) -> GermSeries {
        let coeffs = (0..end.max(0)).map(|p| self.coeff(p as usize)).collect();
        GermSeries::new(Center::Origin, 0, coeffs, self.bits)
    }
}
