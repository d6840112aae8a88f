mod common;

use common::oracle::{chebyshev_roots, chebyshev_t};
use common::{dist, hausdorff, sorted_re};
use hpzeros::numerics::{PrecisionContext, Polynomial};
use hpzeros::roots::find_roots;
use hpzeros::Error;
use rug::float::Constant;
use rug::{Complex, Float};

fn ctx(bits: u32) -> PrecisionContext {
    PrecisionContext::new(bits).unwrap()
}

fn chebyshev(n: usize, bits: u32) -> Polynomial {
    let c: Vec<f64> = chebyshev_t(n).iter().map(|&x| x as f64).collect();
    Polynomial::from_f64(&c, bits)
}

#[test]
fn evaluation_examples() {
    let p = Polynomial::from_f64(&[1.0, 0.0, 1.0], 256);
    assert!(p.eval(&Complex::with_val(256, (0, 1))).is_zero());
    let id = Polynomial::from_f64(&[0.0, 1.0], 256);
    assert_eq!(id.eval(&Complex::with_val(256, (3, 4))), Complex::with_val(256, (3, 4)));
    let t4 = chebyshev(4, 256);
    let x = Float::with_val(256, Constant::Pi) / 8u32;
    let v = t4.eval(&Complex::with_val(256, x.cos()));
    assert!(Float::with_val(64, v.abs_ref()) <= *ctx(256).zero_tol());
}

#[test]
fn unit_imaginary_pair() {
    let zs = find_roots(&Polynomial::from_f64(&[1.0, 0.0, 1.0], 256), &ctx(256)).unwrap();
    let want = [Complex::with_val(256, (0, 1)), Complex::with_val(256, (0, -1))];
    assert!(hausdorff(&zs.roots, &want) < 1e-60);
}

#[test]
fn chebyshev_t8_at_256_bits() {
    let zs = find_roots(&chebyshev(8, 256), &ctx(256)).unwrap();
    let got = sorted_re(&zs.roots);
    let mut want = chebyshev_roots(8, 256);
    want.reverse();
    for (g, w) in got.iter().zip(&want) {
        assert!(Float::with_val(256, g - w).abs() < 1e-30);
    }
    for z in &zs.roots {
        assert!(z.imag().clone().abs() < 1e-30);
    }
}

#[test]
fn chebyshev_t30() {
    let zs = find_roots(&chebyshev(30, 512), &ctx(512)).unwrap();
    let want: Vec<Complex> = chebyshev_roots(30, 512).into_iter().map(|x| Complex::with_val(512, x)).collect();
    assert!(hausdorff(&zs.roots, &want) < 1e-60);
}

#[test]
fn triple_root_is_flagged() {
    let c = ctx(256);
    let p = Polynomial::from_f64(&[-1.0, 3.0, -3.0, 1.0], 256);
    let zs = find_roots(&p, &c).unwrap();
    assert_eq!(zs.len(), 3);
    let one = Complex::with_val(256, 1);
    let eps = c.cluster_eps().to_f64();
    for z in &zs.roots {
        assert!(dist(z, &one) < eps);
    }
    assert!(zs.multiplicity_flags.iter().all(|&f| f));
}

#[test]
fn roots_at_the_origin() {
    let p = Polynomial::from_f64(&[0.0, 0.0, 0.0, -2.0, 1.0], 256);
    let zs = find_roots(&p, &ctx(256)).unwrap();
    let z = |x| Complex::with_val(256, (x, 0));
    assert!(hausdorff(&zs.roots, &[z(0.0), z(0.0), z(0.0), z(2.0)]) < 1e-60);
}

#[test]
fn vieta_relations() {
    let bits = 512;
    let coeffs: Vec<Complex> =
        (0..=25).map(|k| Complex::with_val(bits, ((k * 7 % 11) as f64 - 5.0, (k * 3 % 5) as f64 - 2.0))).collect();
    let p = Polynomial::new(coeffs.clone(), bits);
    let zs = find_roots(&p, &ctx(bits)).unwrap();
    let d = coeffs.len() - 1;
    let mut sum = Complex::new(bits);
    let mut prod = Complex::with_val(bits, 1);
    for z in &zs.roots {
        sum += z;
        prod *= z;
    }
    let want_sum = -Complex::with_val(bits, &coeffs[d - 1] / &coeffs[d]);
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    let want_prod = Complex::with_val(bits, &coeffs[0] / &coeffs[d]) * sign;
    let tol = d as f64 * 2f64.powi(-(bits as i32) / 2);
    assert!(dist(&sum, &want_sum) < tol);
    assert!(dist(&prod, &want_prod) < tol * 10.0);
}

#[test]
fn seeds_give_the_same_multiset() {
    let p = chebyshev(17, 384);
    let a = find_roots(&p, &ctx(384)).unwrap();
    let b = find_roots(&p, &ctx(384).with_seed(12345)).unwrap();
    assert!(hausdorff(&a.roots, &b.roots) < ctx(384).root_tol().to_f64());
}

#[test]
fn constants_have_no_roots() {
    let err = find_roots(&Polynomial::from_f64(&[3.0], 256), &ctx(256)).unwrap_err();
    assert!(matches!(err, Error::DegreeTooLow));
    assert!(find_roots(&Polynomial::zero(256), &ctx(256)).is_err());
}
