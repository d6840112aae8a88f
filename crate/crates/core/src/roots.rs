//! Simultaneous root extraction by the Aberth-Ehrlich iteration.
//!
//! The iteration runs on a ladder of precisions, each level starting from the
//! previous level's approximations, and finishes at the working precision
//! with one Newton polish per root.

use std::cmp::Ordering;

use rug::float::Constant;
use rug::{Assign, Complex, Float};
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{complex_strings, fmt_float, pow2, Polynomial, PrecisionContext, EXPORT_DIGITS};

/// Iteration cap at the working precision.
pub const MAX_ITER: usize = 500;
/// Iteration cap at intermediate precisions of the ladder.
const LADDER_ITER: usize = 200;
/// Sweep cap of the double-precision warm start.
const F64_ITER: usize = 300;

/// Labeled root multiset with per-root diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    pub label: String,
    pub roots: Vec<Complex>,
    /// `|p(z)| / sum |c_k| |z|^k`.
    pub residuals: Vec<Float>,
    /// Another root lies within the cluster radius.
    pub multiplicity_flags: Vec<bool>,
}

impl ZeroSet {
    pub fn new(label: impl Into<String>, roots: Vec<Complex>) -> Self {
        let k = roots.len();
        Self {
            label: label.into(),
            roots,
            residuals: vec![Float::new(64); k],
            multiplicity_flags: vec![false; k],
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Roots as `(re, im)` doubles.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.roots.iter().map(|z| (z.real().to_f64(), z.imag().to_f64())).collect()
    }

    pub fn max_residual(&self) -> Float {
        self.residuals.iter().fold(Float::new(64), |m, r| if *r > m { Float::with_val(64, r) } else { m })
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Root {
            re: String,
            im: String,
            residual: String,
            multiplicity: bool,
        }
        #[derive(Serialize)]
        struct Doc {
            schema: u32,
            label: String,
            count: usize,
            roots: Vec<Root>,
        }
        let roots = self
            .roots
            .iter()
            .zip(&self.residuals)
            .zip(&self.multiplicity_flags)
            .map(|((z, r), &m)| {
                let [re, im] = complex_strings(z, EXPORT_DIGITS);
                Root { re, im, residual: fmt_float(r, 6), multiplicity: m }
            })
            .collect();
        let doc = Doc { schema: 1, label: self.label.clone(), count: self.len(), roots };
        serde_json::to_value(doc).expect("plain data serializes")
    }
}

fn lo(z: &Complex) -> Float {
    Float::with_val(64, z.abs_ref())
}

/// Orders by real part, then imaginary part.
pub fn cmp_points(a: &Complex, b: &Complex) -> Ordering {
    a.real()
        .partial_cmp(b.real())
        .unwrap_or(Ordering::Equal)
        .then(a.imag().partial_cmp(b.imag()).unwrap_or(Ordering::Equal))
}

/// Drops leading coefficients below `zero_tol * max|c|` and splits off the
/// low-order ones, which stand for roots at the origin.
fn strip(p: &Polynomial, zero_tol: &Float) -> (Vec<Complex>, usize) {
    let scale = Float::with_val(64, p.max_norm() * zero_tol);
    let small = |c: &Complex| lo(c) <= scale;
    let cs = p.coeffs();
    let Some(top) = cs.iter().rposition(|c| !small(c)) else {
        return (Vec::new(), 0);
    };
    let bottom = cs.iter().position(|c| !small(c)).expect("top exists");
    (cs[bottom..=top].to_vec(), bottom)
}

/// Fujiwara bound on the root moduli.
fn fujiwara(c: &[Complex]) -> f64 {
    let d = c.len() - 1;
    let lead = lo(&c[d]);
    let mut best = f64::MIN_POSITIVE;
    for k in 1..=d {
        let mut r = Float::with_val(64, lo(&c[d - k]) / &lead);
        if k == d {
            r /= 2u32;
        }
        if r.is_zero() {
            continue;
        }
        // r^(1/k) through log2 to stay clear of f64 overflow.
        let (m, e) = r.to_f64_exp();
        let l = (f64::from(e) + m.log2()) / k as f64;
        best = best.max(l);
    }
    2f64.powf(best + 1.0).min(f64::MAX)
}

fn initial_points(d: usize, radius: f64, seed: u64, bits: u32) -> Vec<Complex> {
    // Fixed irrational offset plus a seed-dependent turn keeps starts off
    // any symmetry axis.
    let golden = 0.618_033_988_749_894_9_f64;
    let offset = 0.4 + (seed as f64 * golden).fract();
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    (0..d)
        .map(|k| {
            let theta = Float::with_val(bits, &two_pi * ((k as f64 + offset) / d as f64));
            let (s, c) = theta.sin_cos(Float::new(bits));
            Complex::with_val(bits, (c * radius, s * radius))
        })
        .collect()
}

/// `(p(z), p'(z), sum |c_k||z|^k)`.
fn horner(c: &[Complex], z: &Complex, bits: u32) -> (Complex, Complex, Float) {
    let mut p = Complex::new(bits);
    let mut dp = Complex::new(bits);
    let az = lo(z);
    let mut scale = Float::new(64);
    for ck in c.iter().rev() {
        dp *= z;
        dp += &p;
        p *= z;
        p += ck;
        scale *= &az;
        scale += lo(ck);
    }
    (p, dp, scale)
}

/// Newton ratio `p(z)/p'(z)` in double precision; evaluates the reversed
/// polynomial outside the unit disc to stay clear of overflow.
fn newton_f64(c: &[C64], z: C64) -> C64 {
    let d = c.len() - 1;
    if z.norm() <= 1.0 {
        let (mut p, mut dp) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for ck in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + ck;
        }
        p / dp
    } else {
        let w = z.inv();
        let (mut r, mut dr) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for ck in c {
            dr = dr * w + r;
            r = r * w + ck;
        }
        z * r / (r * d as f64 - w * dr)
    }
}

/// Cheap Aberth sweeps in double precision to place the starting points
/// near the roots before the multiprecision ladder.
fn aberth_f64(coeffs: &[Complex], z: &mut [Complex]) {
    let scale = Polynomial::new(coeffs.to_vec(), coeffs[0].prec().0).max_norm();
    let c: Vec<C64> = coeffs
        .iter()
        .map(|x| {
            let q = Complex::with_val(64, x / &scale);
            C64::new(q.real().to_f64(), q.imag().to_f64())
        })
        .collect();
    let mut w: Vec<C64> = z.iter().map(|x| C64::new(x.real().to_f64(), x.imag().to_f64())).collect();
    if w.iter().any(|x| !x.is_finite()) || c.iter().any(|x| !x.is_finite()) || c[c.len() - 1] == C64::new(0.0, 0.0) {
        return;
    }
    let d = w.len();
    let mut done = vec![false; d];
    for _ in 0..F64_ITER {
        for i in 0..d {
            if done[i] {
                continue;
            }
            let newton = newton_f64(&c, w[i]);
            if !newton.is_finite() {
                done[i] = true;
                continue;
            }
            let s: C64 = (0..d).filter(|&j| j != i).map(|j| (w[i] - w[j]).inv()).filter(|x| x.is_finite()).sum();
            let step = newton / (C64::new(1.0, 0.0) - newton * s);
            if !step.is_finite() {
                done[i] = true;
                continue;
            }
            w[i] -= step;
            if step.norm() <= 1e-14 * w[i].norm().max(1.0) {
                done[i] = true;
            }
        }
        if done.iter().all(|&b| b) {
            break;
        }
    }
    for (zi, wi) in z.iter_mut().zip(&w) {
        if wi.is_finite() {
            zi.assign((wi.re, wi.im));
        }
    }
}

struct Level<'a> {
    coeffs: &'a [Complex],
    bits: u32,
    max_iter: usize,
}

/// Runs Aberth sweeps at one precision. Returns whether every root met the
/// stopping rule and the worst residual seen.
fn aberth_level(level: &Level<'_>, z: &mut [Complex]) -> (bool, Float) {
    let bits = level.bits;
    let d = z.len();
    let c: Vec<Complex> = level.coeffs.iter().map(|x| Complex::with_val(bits, x)).collect();
    for zi in z.iter_mut() {
        zi.set_prec(bits);
    }
    let sum_bits = bits.min(128);
    let step_tol = pow2(64, -((bits / 2) as i64));
    let noise = Float::with_val(64, pow2(64, -(bits as i64)) * (4 * (d + 1)) as u32);
    let mut done = vec![false; d];
    let mut worst = Float::new(64);
    let mut diff = Complex::new(bits);
    for _ in 0..level.max_iter {
        let mut corrections: Vec<Option<Complex>> = vec![None; d];
        worst = Float::new(64);
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (p, dp, scale) = horner(&c, &z[i], bits);
            let rel = if scale.is_zero() { Float::new(64) } else { Float::with_val(64, lo(&p) / &scale) };
            if rel > worst {
                worst = rel.clone();
            }
            if p.is_zero() || rel <= noise {
                done[i] = true;
                continue;
            }
            if dp.is_zero() {
                // Nudge off a critical point.
                let bump = Complex::with_val(bits, (step_tol.to_f64().max(1e-6), 0));
                corrections[i] = Some(bump);
                continue;
            }
            let newton = Complex::with_val(bits, &p / &dp);
            let mut s = Complex::new(sum_bits);
            for j in 0..d {
                if j == i {
                    continue;
                }
                diff.assign(&z[i] - &z[j]);
                if diff.is_zero() {
                    continue;
                }
                let low = Complex::with_val(sum_bits, &diff);
                s += low.recip();
            }
            let ns = Complex::with_val(bits, &newton * &s);
            let denom = Complex::with_val(bits, 1 - ns);
            let w = if denom.is_zero() { newton } else { Complex::with_val(bits, &newton / &denom) };
            let size = lo(&z[i]).max(&Float::with_val(64, 1));
            if lo(&w) <= Float::with_val(64, &step_tol * &size) {
                done[i] = true;
            }
            corrections[i] = Some(w);
        }
        for (zi, w) in z.iter_mut().zip(&corrections) {
            if let Some(w) = w {
                *zi -= w;
            }
        }
        if done.iter().all(|&b| b) {
            return (true, worst);
        }
    }
    (false, worst)
}

/// Roots of `p` at the working precision of `ctx`.
pub fn find_roots(p: &Polynomial, ctx: &PrecisionContext) -> Result<ZeroSet> {
    find_roots_with(p, ctx, MAX_ITER)
}

/// As [`find_roots`] with an explicit iteration cap at working precision.
pub fn find_roots_with(p: &Polynomial, ctx: &PrecisionContext, max_iter: usize) -> Result<ZeroSet> {
    let bits = ctx.bits();
    let (core, origin) = strip(p, ctx.zero_tol());
    if core.len() + origin < 2 || core.is_empty() {
        return Err(Error::DegreeTooLow);
    }
    let d = core.len() - 1;
    let mut roots: Vec<Complex> = Vec::with_capacity(d + origin);
    if d > 0 {
        let radius = fujiwara(&core);
        let start = (bits / 8).max(128).min(bits);
        let mut z = initial_points(d, radius, ctx.seed(), start);
        aberth_f64(&core, &mut z);
        let mut level_bits = start;
        loop {
            let last = level_bits >= bits;
            let level = Level {
                coeffs: &core,
                bits: level_bits.min(bits),
                max_iter: if last { max_iter } else { LADDER_ITER },
            };
            let (ok, worst) = aberth_level(&level, &mut z);
            if last {
                if !ok {
                    return Err(Error::NoConvergence { iterations: max_iter, worst: fmt_float(&worst, 6) });
                }
                break;
            }
            level_bits = (level_bits * 2).min(bits);
        }
        // One Newton polish at working precision.
        let c: Vec<Complex> = core.iter().map(|x| Complex::with_val(bits, x)).collect();
        for zi in z.iter_mut() {
            let (pv, dp, _) = horner(&c, zi, bits);
            if !dp.is_zero() && !pv.is_zero() {
                *zi -= Complex::with_val(bits, pv / dp);
            }
        }
        roots.extend(z);
    }
    roots.extend((0..origin).map(|_| Complex::new(bits)));
    roots.sort_by(cmp_points);
    let residuals = roots
        .iter()
        .map(|z| {
            let (pv, _, scale) = horner(p.coeffs(), z, bits);
            if scale.is_zero() {
                Float::new(64)
            } else {
                Float::with_val(64, lo(&pv) / scale)
            }
        })
        .collect();
    let eps = ctx.cluster_eps();
    let multiplicity_flags = (0..roots.len())
        .map(|i| {
            roots.iter().enumerate().any(|(j, w)| {
                j != i && Float::with_val(64, Complex::with_val(bits, &roots[i] - w).abs_ref()) < eps
            })
        })
        .collect();
    Ok(ZeroSet { label: String::new(), roots, residuals, multiplicity_flags })
}
