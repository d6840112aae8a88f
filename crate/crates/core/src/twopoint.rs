//! Two-point diagonal Padé approximants `B_n = P/Q` for a germ at the origin
//! and a germ at infinity.
//!
//! Default split: `Q f0 - P = O(z^n)` at 0 and `Q f_inf - P = O(1/z)` at
//! infinity. The alternative split moves one condition to the origin:
//! `O(z^(n+1))` at 0 and `O(1)` at infinity. Columns are the `P` block then
//! the `Q` block, ascending; rows are the origin conditions in increasing
//! power followed by the infinity conditions from `z^n` down.

use rug::{Complex, Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::germs::{FunctionSpec, GermCenter};
use crate::hermite_pade::coeff_checked;
use crate::linsys::{nullvector, with_precision_retry, DenseMatrix};
use crate::numerics::{fmt_float, poly_strings, Center, GermSeries, Polynomial, PrecisionContext, EXPORT_DIGITS};

/// How the `2n+1` conditions are shared between the two points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    /// `n` conditions at 0, `n+1` at infinity.
    #[default]
    Displayed,
    /// `n+1` conditions at 0, `n` at infinity.
    Footnote,
}

impl Split {
    /// `(conditions at 0, conditions at infinity)`.
    pub fn counts(self, n: usize) -> (usize, usize) {
        match self {
            Split::Displayed => (n, n + 1),
            Split::Footnote => (n + 1, n),
        }
    }
}

/// A germ pair with fixed symmetric weights `(1/2, 1/2)`.
#[derive(Debug, Clone)]
pub struct TwoPointProblem {
    pub germ0: GermSeries,
    pub germ_inf: GermSeries,
    pub split: Split,
}

impl TwoPointProblem {
    pub fn new(germ0: GermSeries, germ_inf: GermSeries) -> Result<Self> {
        if *germ0.center() != Center::Origin || *germ_inf.center() != Center::Infinity {
            return Err(Error::Precondition("germs must be expanded at 0 and at infinity".into()));
        }
        Ok(Self { germ0, germ_inf, split: Split::Displayed })
    }

    pub fn with_split(mut self, split: Split) -> Self {
        self.split = split;
        self
    }

    /// Weights of the two interpolation points.
    pub fn weights(&self) -> (Rational, Rational) {
        (Rational::from((1, 2)), Rational::from((1, 2)))
    }
}

/// Two-point approximant with per-point residuals.
#[derive(Debug, Clone)]
pub struct TwoPointPair {
    pub n: usize,
    pub p: Polynomial,
    pub q: Polynomial,
    pub residual0: Float,
    pub residual_inf: Float,
    pub split: Split,
    pub bits: u32,
}

impl TwoPointPair {
    /// `B_n(z) = P(z)/Q(z)`.
    pub fn eval(&self, z: &Complex) -> Complex {
        Complex::with_val(self.bits, self.p.eval(z) / self.q.eval(z))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc {
            schema: u32,
            kind: &'static str,
            degree: usize,
            bits: u32,
            split: Split,
            residual0: String,
            residual_inf: String,
            p: Vec<[String; 2]>,
            q: Vec<[String; 2]>,
        }
        let doc = Doc {
            schema: 1,
            kind: "two_point_pade",
            degree: self.n,
            bits: self.bits,
            split: self.split,
            residual0: fmt_float(&self.residual0, 6),
            residual_inf: fmt_float(&self.residual_inf, 6),
            p: poly_strings(&self.p, EXPORT_DIGITS),
            q: poly_strings(&self.q, EXPORT_DIGITS),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }
}

/// Germ order needed at either point for a degree-`n` solve.
pub fn twopoint_order(n: usize) -> i64 {
    n as i64 + 2
}

/// The `(2n+1) x (2n+2)` two-point system.
pub fn twopoint_build_matrix(prob: &TwoPointProblem, n: usize) -> Result<DenseMatrix<Complex>> {
    let bits = prob.germ0.bits().max(prob.germ_inf.bits());
    let (k0, kinf) = prob.split.counts(n);
    let mut m = DenseMatrix::filled(2 * n + 1, 2 * n + 2, Complex::new(bits));
    for k in 0..k0 {
        if k <= n {
            m.set(k, k, Complex::with_val(bits, -1));
        }
        for i in 0..=k.min(n) {
            m.set(k, n + 1 + i, coeff_checked(&prob.germ0, (k - i) as i64)?);
        }
    }
    let lowest = (n + 1 - kinf) as i64;
    for (r, power) in (lowest..=n as i64).rev().enumerate() {
        let row = k0 + r;
        m.set(row, power as usize, Complex::with_val(bits, -1));
        for i in 0..=n {
            m.set(row, n + 1 + i, coeff_checked(&prob.germ_inf, i as i64 - power)?);
        }
    }
    Ok(m)
}

fn max_abs(s: &GermSeries, powers: impl Iterator<Item = i64>) -> Result<Float> {
    let mut worst = Float::new(64);
    for p in powers {
        let a = Float::with_val(64, coeff_checked(s, p)?.abs_ref());
        if a > worst {
            worst = a;
        }
    }
    Ok(worst)
}

/// Solves at the germs' precision and certifies both windows.
pub fn twopoint_solve_problem(prob: &TwoPointProblem, n: usize, zero_tol: &Float) -> Result<TwoPointPair> {
    let bits = prob.germ0.bits().max(prob.germ_inf.bits());
    let m = twopoint_build_matrix(prob, n)?;
    let v = nullvector(&m, zero_tol)?.vector;
    let p = Polynomial::new(v[..=n].to_vec(), bits);
    let q = Polynomial::new(v[n + 1..].to_vec(), bits);
    if q.is_zero() {
        return Err(Error::NonGeneric { rank: 2 * n + 1, free: 1 });
    }
    let (k0, kinf) = prob.split.counts(n);
    let neg = Complex::with_val(bits, -1);
    let r0 = q.mul_series(&prob.germ0);
    let r0 = r0.add(&p.scale(&neg).to_series_at_origin(r0.end()))?;
    let residual0 = max_abs(&r0, 0..k0 as i64)?;
    let rinf = q.mul_series(&prob.germ_inf);
    let rinf = rinf.add(&p.scale(&neg).to_series_at_infinity(rinf.end()))?;
    let lowest = (n + 1 - kinf) as i64;
    let residual_inf = max_abs(&rinf, (-(n as i64))..=-lowest)?;
    let scale = Float::with_val(64, m.max_row_norm().max(&Float::with_val(64, 1)));
    let tol = Float::with_val(64, zero_tol * &scale);
    let worst = Float::with_val(64, residual0.max_ref(&residual_inf));
    if worst > tol {
        return Err(Error::ResidualTooLarge { residual: fmt_float(&worst, 6), tolerance: fmt_float(&tol, 6) });
    }
    Ok(TwoPointPair { n, p, q, residual0, residual_inf, split: prob.split, bits })
}

/// Two-point approximant for specs `f0` (expanded at 0) and `f_inf`
/// (expanded at infinity).
pub fn twopoint_solve(
    f0: &FunctionSpec,
    f_inf: &FunctionSpec,
    n: usize,
    split: Split,
    ctx: &PrecisionContext,
) -> Result<TwoPointPair> {
    with_precision_retry(ctx, |c| {
        let g0 = f0.germ(GermCenter::Origin, twopoint_order(n), c.bits())?;
        let ginf = f_inf.germ(GermCenter::Infinity, twopoint_order(n), c.bits())?;
        let prob = TwoPointProblem::new(g0, ginf)?.with_split(split);
        twopoint_solve_problem(&prob, n, c.zero_tol())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{pow2, ExactComplex};

    const BITS: u32 = 256;

    fn ratio() -> FunctionSpec {
        FunctionSpec::two_point_ratio(
            ExactComplex::parse("1/2", "1/3").unwrap(),
            ExactComplex::parse("2", "-1").unwrap(),
            Rational::from(1),
        )
    }

    #[test]
    fn rational_input_is_reproduced() {
        let ctx = PrecisionContext::new(BITS).unwrap();
        let f = ratio();
        for split in [Split::Displayed, Split::Footnote] {
            let pair = twopoint_solve(&f, &f, 1, split, &ctx).unwrap();
            for z in [(0.3, 0.1), (-2.0, 5.0)] {
                let z = Complex::with_val(BITS, z);
                let diff = Complex::with_val(BITS, pair.eval(&z) - f.eval(&z, BITS).unwrap());
                assert!(Float::with_val(64, diff.abs_ref()) < pow2(64, -200));
            }
        }
    }

    #[test]
    fn matrix_shape_and_counts() {
        let f = ratio();
        let g0 = f.germ(GermCenter::Origin, 8, BITS).unwrap();
        let gi = f.germ(GermCenter::Infinity, 8, BITS).unwrap();
        let prob = TwoPointProblem::new(g0, gi).unwrap();
        let m = twopoint_build_matrix(&prob, 3).unwrap();
        assert_eq!((m.rows(), m.cols()), (7, 8));
        assert_eq!(Split::Displayed.counts(3), (3, 4));
        assert_eq!(Split::Footnote.counts(3), (4, 3));
        assert_eq!(prob.weights().0, Rational::from((1, 2)));
    }

    #[test]
    fn real_germs_give_real_polynomials() {
        let f = FunctionSpec::algebraic(
            vec![ExactComplex::parse("1/2", "0").unwrap(), ExactComplex::parse("2", "0").unwrap()],
            vec![Rational::from((-1, 2)), Rational::from((-1, 2))],
        )
        .with_lead(ExactComplex::parse("1/2", "0").unwrap());
        let finf = f.clone().with_shift(ExactComplex::parse("1", "0").unwrap());
        let ctx = PrecisionContext::new(BITS).unwrap();
        let pair = twopoint_solve(&f, &finf, 6, Split::Displayed, &ctx).unwrap();
        assert!(pair.p.is_real(ctx.zero_tol()) && pair.q.is_real(ctx.zero_tol()));
        assert!(pair.residual0 < *ctx.zero_tol() && pair.residual_inf < *ctx.zero_tol());
    }

    #[test]
    fn wrong_centers_are_rejected() {
        let f = ratio();
        let gi = f.germ(GermCenter::Infinity, 8, BITS).unwrap();
        assert!(TwoPointProblem::new(gi.clone(), gi).is_err());
    }
}
