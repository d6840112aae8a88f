//! Type I Hermite-Padé polynomials for `[1, f1, f2]` at infinity.
//!
//! The unknowns are the coefficients of `q0, q1, q2` (each of degree at
//! most `n`) such that `q0 + q1 f1 + q2 f2 = O(z^(-2n-2))`. Rows of the
//! system are the coefficients of `z^m` for `m = n, n-1, ..., -(2n+1)`;
//! columns are the `q0` block, then `q1`, then `q2`, each in ascending
//! powers.

use rug::{Complex, Float};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::germs::{FunctionSpec, GermCenter};
use crate::linsys::{nullvector, with_precision_retry, DenseMatrix};
use crate::numerics::{
    complex_strings, fmt_float, poly_strings, Center, GermSeries, Polynomial, PrecisionContext,
    EXPORT_DIGITS,
};

/// Extra coefficients of the remainder reported past the enforced window.
const REMAINDER_TERMS: i64 = 4;

/// Solution of the type I system with diagnostics.
#[derive(Debug, Clone)]
pub struct HpTriple {
    pub n: usize,
    pub q: [Polynomial; 3],
    /// Coefficients of `z^(-2n-2), z^(-2n-3), ...` of the remainder.
    pub remainder_coeffs: Vec<Complex>,
    /// Largest window coefficient of the independently recomputed remainder.
    pub residual: Float,
    pub bits: u32,
}

impl HpTriple {
    pub fn q0(&self) -> &Polynomial {
        &self.q[0]
    }

    pub fn q1(&self) -> &Polynomial {
        &self.q[1]
    }

    pub fn q2(&self) -> &Polynomial {
        &self.q[2]
    }

    /// The kernel vector in column order.
    pub fn vector(&self) -> Vec<Complex> {
        let mut v = Vec::with_capacity(3 * (self.n + 1));
        for p in &self.q {
            for i in 0..=self.n {
                v.push(p.coeff(i));
            }
        }
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc {
            schema: u32,
            kind: &'static str,
            degree: usize,
            bits: u32,
            residual: String,
            q0: Vec<[String; 2]>,
            q1: Vec<[String; 2]>,
            q2: Vec<[String; 2]>,
            remainder: Vec<[String; 2]>,
        }
        let doc = Doc {
            schema: 1,
            kind: "hermite_pade_type1",
            degree: self.n,
            bits: self.bits,
            residual: fmt_float(&self.residual, 6),
            q0: poly_strings(&self.q[0], EXPORT_DIGITS),
            q1: poly_strings(&self.q[1], EXPORT_DIGITS),
            q2: poly_strings(&self.q[2], EXPORT_DIGITS),
            remainder: self.remainder_coeffs.iter().map(|c| complex_strings(c, 6)).collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }
}

/// Series coefficient of `t^p`, or an error if `p` lies beyond the germ.
pub(crate) fn coeff_checked(s: &GermSeries, p: i64) -> Result<Complex> {
    s.coeff(p).ok_or(Error::InsufficientLength { needed: p, available: s.end() - 1 })
}

fn require_infinity(s: &GermSeries) -> Result<()> {
    if *s.center() != Center::Infinity {
        return Err(Error::Precondition("germ must be expanded at infinity".into()));
    }
    Ok(())
}

/// The `(3n+2) x (3n+3)` type I system.
///
/// The entry for `q_{j,i}` in the row of `z^m` is the coefficient of
/// `z^(m-i)` in `f_j`, i.e. of `t^(i-m)`; the `q0` block is the identity
/// pattern `i = m`.
pub fn hp_build_matrix(s1: &GermSeries, s2: &GermSeries, n: usize) -> Result<DenseMatrix<Complex>> {
    require_infinity(s1)?;
    require_infinity(s2)?;
    let bits = s1.bits().max(s2.bits());
    let n_i = n as i64;
    let rows = 3 * n + 2;
    let cols = 3 * n + 3;
    let mut m = DenseMatrix::filled(rows, cols, Complex::new(bits));
    for (r, power) in (-(2 * n_i + 1)..=n_i).rev().enumerate() {
        if power >= 0 {
            m.set(r, power as usize, Complex::with_val(bits, 1));
        }
        for (block, s) in [(1usize, s1), (2, s2)] {
            for i in 0..=n {
                let c = coeff_checked(s, i as i64 - power)?;
                m.set(r, block * (n + 1) + i, c);
            }
        }
    }
    Ok(m)
}

/// `q0 + q1 s1 + q2 s2` as a series in `t = 1/z`.
pub fn hp_remainder(q: &[Polynomial; 3], s1: &GermSeries, s2: &GermSeries, end: i64) -> Result<GermSeries> {
    let r = q[1].mul_series(s1).add(&q[2].mul_series(s2))?;
    let r = r.add(&q[0].to_series_at_infinity(r.end().max(end)))?;
    Ok(r)
}

/// Solves the type I system for given germs at the germs' precision.
pub fn hp_solve_series(s1: &GermSeries, s2: &GermSeries, n: usize, zero_tol: &Float) -> Result<HpTriple> {
    let bits = s1.bits().max(s2.bits());
    let m = hp_build_matrix(s1, s2, n)?;
    let kernel = nullvector(&m, zero_tol)?;
    let v = kernel.vector;
    let q = [0, 1, 2].map(|j| Polynomial::new(v[j * (n + 1)..(j + 1) * (n + 1)].to_vec(), bits));
    let n_i = n as i64;
    let rem = hp_remainder(&q, s1, s2, 2 * n_i + 2)?;
    let mut residual = Float::new(64);
    for p in -n_i..=2 * n_i + 1 {
        let c = coeff_checked(&rem, p)?;
        let a = Float::with_val(64, c.abs_ref());
        if a > residual {
            residual = a;
        }
    }
    let remainder_coeffs = (2 * n_i + 2..rem.end()).map(|p| rem.coeff(p).expect("in range")).collect();
    let scale = Float::with_val(64, m.max_row_norm().max(&Float::with_val(64, 1)));
    let tol = Float::with_val(64, zero_tol * &scale);
    if residual > tol {
        return Err(Error::ResidualTooLarge {
            residual: fmt_float(&residual, 6),
            tolerance: fmt_float(&tol, 6),
        });
    }
    Ok(HpTriple { n, q, remainder_coeffs, residual, bits })
}

/// Germ order needed for a degree-`n` solve plus the reported remainder.
pub fn hp_order(n: usize) -> i64 {
    3 * n as i64 + 2 + REMAINDER_TERMS
}

/// Type I Hermite-Padé polynomials of `[1, f1, f2]`, with one precision
/// doubling if the residual certificate fails.
pub fn hp_solve(f1: &FunctionSpec, f2: &FunctionSpec, n: usize, ctx: &PrecisionContext) -> Result<HpTriple> {
    with_precision_retry(ctx, |c| {
        let s1 = f1.germ(GermCenter::Infinity, hp_order(n), c.bits())?;
        let s2 = f2.germ(GermCenter::Infinity, hp_order(n), c.bits())?;
        hp_solve_series(&s1, &s2, n, c.zero_tol())
    })
}
