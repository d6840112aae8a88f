//! Reference values computed without the library: exact rational germs and
//! kernels, Chebyshev nodes and the Green function of `[-1, 1]`.

#![allow(dead_code)]

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

/// Supports `[-1, a]` and `[-a, 1]`.
pub fn segment(a: &Rational, j: u8) -> (Rational, Rational) {
    if j == 1 {
        (Rational::from(-1), a.clone())
    } else {
        ((-a.clone()), Rational::from(1))
    }
}

/// Coefficients `(alpha choose k) x^k`, `k < count`.
fn binomial_row(x: &Rational, alpha: &Rational, count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut c = Rational::from(1);
    for k in 0..count {
        out.push(c.clone());
        let k = Rational::from(k as i64);
        c = c * (alpha.clone() - k.clone()) / (k + 1) * x.clone();
    }
    out
}

fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    (0..a.len().min(b.len()))
        .map(|k| (0..=k).map(|i| Rational::from(&a[i] * &b[k - i])).sum())
        .collect()
}

/// Exact coefficients of `z^0, z^-1, ...` of the germ of Case `case`.
///
/// Case 1 is `int_E dx/(z - x)`; Cases 2 and 3 are
/// `((z - hi)/(z - lo))^alpha = (1 - hi/z)^alpha (1 - lo/z)^-alpha`.
pub fn germ_coeffs(case: u8, a: &Rational, j: u8, count: usize) -> Vec<Rational> {
    let (lo, hi) = segment(a, j);
    match case {
        1 => (0..count)
            .map(|k| {
                if k == 0 {
                    Rational::new()
                } else {
                    let e = k as u32;
                    (hi.clone().pow(e) - lo.clone().pow(e)) / Rational::from(e)
                }
            })
            .collect(),
        2 | 3 => {
            let alpha = Rational::from((1, case as i64));
            let up = binomial_row(&(-hi), &alpha, count);
            let down = binomial_row(&(-lo), &(-alpha), count);
            convolve(&up, &down)
        }
        _ => panic!("case {case}"),
    }
}

/// Kernel of a `(c-1) x c` rational matrix by Gauss-Jordan elimination
/// over the fraction field. `None` unless the kernel is one-dimensional.
pub fn kernel(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let rows = m.len();
    let cols = rows + 1;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let inv = Rational::from(1) / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c].clone();
                let pivot = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot) {
                    *x -= Rational::from(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() != rows {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::new(); cols];
    v[free] = Rational::from(1);
    for (i, &c) in pivots.iter().enumerate() {
        v[c] = -m[i][free].clone();
    }
    Some(v)
}

/// Type I system for germs given by their coefficients of `z^0, z^-1, ...`;
/// rows are powers `n, ..., -(2n+1)`, columns `q0, q1, q2` ascending.
pub fn hp_matrix(g1: &[Rational], g2: &[Rational], n: usize) -> Vec<Vec<Rational>> {
    let n = n as i64;
    (-(2 * n + 1)..=n)
        .rev()
        .map(|m| {
            let mut row = vec![Rational::new(); 3 * (n as usize + 1)];
            if m >= 0 {
                row[m as usize] = Rational::from(1);
            }
            for (b, g) in [(1usize, g1), (2, g2)] {
                for i in 0..=n {
                    // z^i * z^-k lands on z^m for k = i - m.
                    let k = i - m;
                    if k >= 0 {
                        row[b * (n as usize + 1) + i as usize] = g[k as usize].clone();
                    }
                }
            }
            row
        })
        .collect()
}

/// Exact triple `(q0, q1, q2)` for Cases 1-3 with rational `a`, scaled so
/// that the entry of largest magnitude is 1.
pub fn exact_hp(case: u8, a: &Rational, n: usize) -> Option<[Vec<Rational>; 3]> {
    let len = 3 * n + 3;
    let g1 = germ_coeffs(case, a, 1, len);
    let g2 = germ_coeffs(case, a, 2, len);
    let v = kernel(hp_matrix(&g1, &g2, n))?;
    let big = v.iter().max_by(|x, y| Rational::from(x.abs_ref()).cmp(&Rational::from(y.abs_ref())))?.clone();
    let v: Vec<Rational> = v.into_iter().map(|x| x / &big).collect();
    let w = n + 1;
    Some([v[..w].to_vec(), v[w..2 * w].to_vec(), v[2 * w..].to_vec()])
}

/// Coefficients of `z^m`, `m = top ... bottom`, of `q0 + q1 g1 + q2 g2` in
/// floating point, from exact germ coefficients.
pub fn contact_coeffs(q: [&[Complex]; 3], g1: &[Rational], g2: &[Rational], top: i64, bottom: i64, bits: u32) -> Vec<Complex> {
    (bottom..=top)
        .rev()
        .map(|m| {
            let mut acc = Complex::new(bits);
            if m >= 0 {
                if let Some(c) = q[0].get(m as usize) {
                    acc += c;
                }
            }
            for (qj, g) in [(q[1], g1), (q[2], g2)] {
                for (i, c) in qj.iter().enumerate() {
                    let k = i as i64 - m;
                    if k >= 0 && (k as usize) < g.len() {
                        acc += Complex::with_val(bits, c * Float::with_val(bits, &g[k as usize]));
                    }
                }
            }
            acc
        })
        .collect()
}

/// `cos((2k-1) pi / 2n)`, `k = 1..n`: the zeros of `T_n`.
pub fn chebyshev_roots(n: usize, bits: u32) -> Vec<Float> {
    let pi = Float::with_val(bits + 32, Constant::Pi);
    (1..=n)
        .map(|k| {
            let t = Float::with_val(bits + 32, &pi * (2 * k - 1) as u32) / (2 * n) as u32;
            Float::with_val(bits, t.cos())
        })
        .collect()
}

/// `T_n` by the three-term recurrence, ascending coefficients.
pub fn chebyshev_t(n: usize) -> Vec<i64> {
    let mut prev = vec![1i64];
    let mut cur = vec![0i64, 1];
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let mut next = vec![0i64; cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += 2 * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `log |z + sqrt(z^2 - 1)|` on the branch with modulus at least one.
pub fn green_segment(z: &Complex) -> Float {
    let bits = z.prec().0;
    let s = (Complex::with_val(bits, z * z) - 1u32).sqrt();
    let w1 = Complex::with_val(bits, z + &s);
    let w2 = Complex::with_val(bits, z - &s);
    let m1 = Float::with_val(bits, w1.abs_ref());
    let m2 = Float::with_val(bits, w2.abs_ref());
    m1.max(&m2).ln()
}

/// `1/sqrt(z^2 - 1)` with value `~1/z` at infinity.
pub fn arcsine_transform(z: &Complex) -> Complex {
    let bits = z.prec().0;
    let s = (Complex::with_val(bits, z * z) - 1u32).sqrt();
    // Pick the root that behaves like z.
    let s = if Float::with_val(bits, Complex::with_val(bits, &s + z).abs_ref())
        >= Float::with_val(bits, Complex::with_val(bits, z - &s).abs_ref())
    {
        s
    } else {
        -s
    };
    Complex::with_val(bits, s.recip())
}

/// Exact coefficients of `(1 - c1 w)^alpha (1 - c2 w)^-alpha` in powers of
/// `w`.
pub fn ratio_power_coeffs(c1: &Rational, c2: &Rational, alpha: &Rational, count: usize) -> Vec<Rational> {
    let up = binomial_row(&(-c1.clone()), alpha, count);
    let down = binomial_row(&(-c2.clone()), &(-alpha.clone()), count);
    convolve(&up, &down)
}

/// Ascending coefficients of `q f - p` for a series `f` in powers of `w`
/// and polynomials in `w`; entry `k` is the coefficient of `w^k`.
pub fn linear_residual(q: &[Complex], p: &[Complex], f: &[Complex], bits: u32) -> Vec<Complex> {
    (0..f.len())
        .map(|k| {
            let mut acc = Complex::new(bits);
            for (i, c) in q.iter().enumerate().take(k + 1) {
                acc += Complex::with_val(bits, c * &f[k - i]);
            }
            if let Some(c) = p.get(k) {
                acc -= c;
            }
            acc
        })
        .collect()
}
