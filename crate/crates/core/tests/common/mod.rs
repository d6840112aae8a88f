#![allow(dead_code)]

pub mod oracle;

use hpzeros::germs::FunctionSpec;
use hpzeros::numerics::ExactComplex;
use rug::{Complex, Float, Rational};

pub fn q(s: &str) -> Rational {
    hpzeros::numerics::parse_rational(s).unwrap()
}

pub fn c(re: f64, im: f64, bits: u32) -> Complex {
    Complex::with_val(bits, (re, im))
}

pub fn dist(a: &Complex, b: &Complex) -> f64 {
    let bits = a.prec().0.max(b.prec().0);
    Float::with_val(64, Complex::with_val(bits, a - b).abs_ref()).to_f64()
}

/// `1/sqrt(z^2 - 1)`: branch points at -1 and 1, exponents -1/2.
pub fn arcsine_spec() -> FunctionSpec {
    FunctionSpec::algebraic(
        vec![ExactComplex::real(Rational::from(-1)), ExactComplex::real(Rational::from(1))],
        vec![q("-1/2"), q("-1/2")],
    )
}

/// Real parts sorted ascending.
pub fn sorted_re(zs: &[Complex]) -> Vec<Float> {
    let mut v: Vec<Float> = zs.iter().map(|z| z.real().clone()).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Largest entrywise gap between the library triple and the exact one after
/// scaling the library vector to match the oracle's unit entry.
pub fn exact_gap(t: &hpzeros::hermite_pade::HpTriple, exact: &[Vec<Rational>; 3]) -> Float {
    let bits = t.bits;
    let lib = t.vector();
    let ex: Vec<&Rational> = exact.iter().flatten().collect();
    assert_eq!(lib.len(), ex.len());
    let k = ex.iter().position(|x| **x == 1).expect("oracle has a unit entry");
    let pivot = lib[k].clone();
    let mut worst = Float::new(bits);
    for (l, e) in lib.iter().zip(&ex) {
        let d = Complex::with_val(bits, l / &pivot) - Float::with_val(bits, *e);
        let d = Float::with_val(bits, d.abs_ref());
        if d > worst {
            worst = d;
        }
    }
    worst
}

/// Largest `|coefficient|` of `z^n ... z^-(2n+1)` of `q0 + q1 f1 + q2 f2`,
/// recomputed from exact germ coefficients, relative to the largest
/// triple coefficient; also the magnitude at `z^-(2n+2)`.
pub fn contact_defect(case: u8, a: &Rational, t: &hpzeros::hermite_pade::HpTriple) -> (Float, Float) {
    let n = t.n as i64;
    let bits = t.bits;
    let len = 3 * t.n + 4;
    let g1 = oracle::germ_coeffs(case, a, 1, len);
    let g2 = oracle::germ_coeffs(case, a, 2, len);
    let qs = [t.q[0].coeffs(), t.q[1].coeffs(), t.q[2].coeffs()];
    let coeffs = oracle::contact_coeffs(qs, &g1, &g2, n, -(2 * n + 2), bits);
    let mut scale = Float::new(bits);
    for p in &t.q {
        scale.max_mut(&p.max_norm());
    }
    let mut worst = Float::new(bits);
    for c in &coeffs[..coeffs.len() - 1] {
        worst.max_mut(&Float::with_val(bits, c.abs_ref()));
    }
    let last = Float::with_val(bits, coeffs[coeffs.len() - 1].abs_ref());
    (worst / &scale, last / scale)
}

/// Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Complex], b: &[Complex]) -> f64 {
    let one = |x: &[Complex], y: &[Complex]| {
        x.iter().map(|p| y.iter().map(|q| dist(p, q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    one(a, b).max(one(b, a))
}
