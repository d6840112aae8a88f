//! Diagonal Padé approximants at infinity: `p0 + p1 f = O(z^(-n-1))`,
//! `[n/n]_f = -p0/p1`.
//!
//! Rows are the coefficients of `z^m` for `m = n, ..., -n`; columns are the
//! `p0` block then the `p1` block, ascending.

use rug::{Complex, Float};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::germs::{FunctionSpec, GermCenter};
use crate::hermite_pade::coeff_checked;
use crate::linsys::{nullvector, with_precision_retry, DenseMatrix};
use crate::numerics::{complex_strings, fmt_float, poly_strings, Center, GermSeries, Polynomial, PrecisionContext, EXPORT_DIGITS};

const REMAINDER_TERMS: i64 = 4;

/// Padé polynomials with diagnostics. The pair is kept unreduced so that
/// near-cancelling zero-pole pairs stay visible.
#[derive(Debug, Clone)]
pub struct PadePair {
    pub n: usize,
    pub p0: Polynomial,
    pub p1: Polynomial,
    /// Coefficients of `z^(-n-1), z^(-n-2), ...` of `p0 + p1 f`.
    pub remainder_coeffs: Vec<Complex>,
    pub residual: Float,
    pub bits: u32,
}

impl PadePair {
    /// `[n/n]_f(z) = -p0(z)/p1(z)`.
    pub fn eval(&self, z: &Complex) -> Complex {
        let num = self.p0.eval(z);
        let den = self.p1.eval(z);
        -Complex::with_val(self.bits, num / den)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc {
            schema: u32,
            kind: &'static str,
            degree: usize,
            bits: u32,
            residual: String,
            p0: Vec<[String; 2]>,
            p1: Vec<[String; 2]>,
            remainder: Vec<[String; 2]>,
        }
        let doc = Doc {
            schema: 1,
            kind: "pade_diagonal",
            degree: self.n,
            bits: self.bits,
            residual: fmt_float(&self.residual, 6),
            p0: poly_strings(&self.p0, EXPORT_DIGITS),
            p1: poly_strings(&self.p1, EXPORT_DIGITS),
            remainder: self.remainder_coeffs.iter().map(|c| complex_strings(c, 6)).collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }
}

/// Germ order for a degree-`n` solve plus the reported remainder.
pub fn pade_order(n: usize) -> i64 {
    2 * n as i64 + 1 + REMAINDER_TERMS
}

/// The `(2n+1) x (2n+2)` Padé system.
pub fn pade_build_matrix(s: &GermSeries, n: usize) -> Result<DenseMatrix<Complex>> {
    if *s.center() != Center::Infinity {
        return Err(Error::Precondition("germ must be expanded at infinity".into()));
    }
    let bits = s.bits();
    let n_i = n as i64;
    let mut m = DenseMatrix::filled(2 * n + 1, 2 * n + 2, Complex::new(bits));
    for (r, power) in (-n_i..=n_i).rev().enumerate() {
        if power >= 0 {
            m.set(r, power as usize, Complex::with_val(bits, 1));
        }
        for i in 0..=n {
            m.set(r, n + 1 + i, coeff_checked(s, i as i64 - power)?);
        }
    }
    Ok(m)
}

/// Solves the Padé system at the germ's precision.
pub fn pade_solve_series(s: &GermSeries, n: usize, zero_tol: &Float) -> Result<PadePair> {
    let bits = s.bits();
    let m = pade_build_matrix(s, n)?;
    let v = nullvector(&m, zero_tol)?.vector;
    let p0 = Polynomial::new(v[..=n].to_vec(), bits);
    let p1 = Polynomial::new(v[n + 1..].to_vec(), bits);
    if p1.is_zero() {
        return Err(Error::NonGeneric { rank: 2 * n + 1, free: 1 });
    }
    let n_i = n as i64;
    let rem = p1.mul_series(s);
    let rem = rem.add(&p0.to_series_at_infinity(rem.end()))?;
    let mut residual = Float::new(64);
    for p in -n_i..=n_i {
        let a = Float::with_val(64, coeff_checked(&rem, p)?.abs_ref());
        if a > residual {
            residual = a;
        }
    }
    let remainder_coeffs = (n_i + 1..rem.end()).map(|p| rem.coeff(p).expect("in range")).collect();
    let scale = Float::with_val(64, m.max_row_norm().max(&Float::with_val(64, 1)));
    let tol = Float::with_val(64, zero_tol * &scale);
    if residual > tol {
        return Err(Error::ResidualTooLarge {
            residual: fmt_float(&residual, 6),
            tolerance: fmt_float(&tol, 6),
        });
    }
    Ok(PadePair { n, p0, p1, remainder_coeffs, residual, bits })
}

/// `[n/n]_f` at infinity, with one precision doubling on certificate
/// failure.
pub fn pade_solve(f: &FunctionSpec, n: usize, ctx: &PrecisionContext) -> Result<PadePair> {
    with_precision_retry(ctx, |c| {
        let s = f.germ(GermCenter::Infinity, pade_order(n), c.bits())?;
        pade_solve_series(&s, n, c.zero_tol())
    })
}

/// `|f(z) - [n/n]_f(z)|` for a caller-supplied `f(z)`.
pub fn pade_error_probe(pair: &PadePair, z: &Complex, f_value: &Complex, zero_tol: &Float) -> Result<Float> {
    let den = pair.p1.eval(z);
    let scale = pair.p1.max_norm();
    if Float::with_val(64, den.abs_ref()) <= Float::with_val(64, zero_tol * &scale) {
        return Err(Error::ProbeOnPole);
    }
    let approx = pair.eval(z);
    let bits = pair.bits.max(f_value.prec().0);
    Ok(Float::with_val(bits, Complex::with_val(bits, f_value - &approx).abs_ref()))
}

/// Default probe points `2, 1+i, -3i`, scaled to lie outside the disc of
/// radius `1.5 r` where `r` bounds the singular points.
pub fn default_probes(singular: &[Complex], bits: u32) -> Vec<Complex> {
    let mut r = Float::with_val(bits, 1);
    for s in singular {
        let a = Float::with_val(bits, s.abs_ref());
        if a > r {
            r = a;
        }
    }
    let base = [(2.0, 0.0), (1.0, 1.0), (0.0, -3.0)];
    base.iter()
        .map(|&(x, y)| {
            let z = Complex::with_val(bits, (x, y));
            let mag = Float::with_val(bits, z.abs_ref());
            let want = Float::with_val(bits, &r * 1.5f64);
            if mag < want {
                z * (want / mag)
            } else {
                z
            }
        })
        .collect()
}
