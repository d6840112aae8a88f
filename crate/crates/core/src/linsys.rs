//! Dense multiprecision linear algebra: one-dimensional kernels by Gaussian
//! elimination with full pivoting, and an exact fraction-free variant.

use std::ops::{DivAssign, SubAssign};

use rug::{Assign, Complex, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{fmt_float, PrecisionContext};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> DenseMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::Precondition(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Self { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Precondition("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(<[T]>::to_vec).collect()
    }
}

impl DenseMatrix<Complex> {
    /// Maximum absolute row sum, at 64 bits.
    pub fn max_row_norm(&self) -> Float {
        let mut best = Float::new(64);
        for i in 0..self.rows {
            let mut s = Float::new(64);
            for z in self.row(i) {
                s += Float::with_val(64, z.abs_ref());
            }
            if s > best {
                best = s;
            }
        }
        best
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Vec<Complex> {
        let bits = v.first().map_or(64, |z| z.prec().0);
        let mut tmp = Complex::new(bits);
        (0..self.rows)
            .map(|i| {
                let mut acc = Complex::new(bits);
                for (a, x) in self.row(i).iter().zip(v) {
                    if a.is_zero() {
                        continue;
                    }
                    tmp.assign(a * x);
                    acc += &tmp;
                }
                acc
            })
            .collect()
    }

    fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.imag().is_zero())
    }
}

impl DenseMatrix<Rational> {
    pub fn to_complex(&self, bits: u32) -> DenseMatrix<Complex> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|q| Complex::with_val(bits, q)).collect(),
        }
    }

    pub fn mul_vec_exact(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::new();
                for (a, x) in self.row(i).iter().zip(v) {
                    acc += Rational::from(a * x);
                }
                acc
            })
            .collect()
    }
}

/// Scalars the elimination runs over.
trait Field: Clone + for<'a> SubAssign<&'a Self> + for<'a> DivAssign<&'a Self> {
    fn zero_like(&self) -> Self;
    fn is_zero_value(&self) -> bool;
    /// `log2` of the larger of the component magnitudes; `-inf` for zero.
    fn log2_mag(&self) -> f64;
    /// `self -= a * b`.
    fn sub_mul(&mut self, a: &Self, b: &Self, tmp: &mut Self);
    /// Exact multiplication by `2^k`.
    fn shift(&mut self, k: i32);
}

fn log2_of(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    f64::from(e) + m.abs().log2()
}

impl Field for Float {
    fn zero_like(&self) -> Self {
        Float::new(self.prec())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn log2_mag(&self) -> f64 {
        log2_of(self)
    }
    fn sub_mul(&mut self, a: &Self, b: &Self, tmp: &mut Self) {
        tmp.assign(a * b);
        *self -= &*tmp;
    }
    fn shift(&mut self, k: i32) {
        *self <<= k;
    }
}

impl Field for Complex {
    fn zero_like(&self) -> Self {
        Complex::new(self.prec())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn log2_mag(&self) -> f64 {
        log2_of(self.real()).max(log2_of(self.imag()))
    }
    fn sub_mul(&mut self, a: &Self, b: &Self, tmp: &mut Self) {
        tmp.assign(a * b);
        *self -= &*tmp;
    }
    fn shift(&mut self, k: i32) {
        *self <<= k;
    }
}

/// Scales rows, then columns, by powers of two so that each has largest
/// entry in `[1, 2)`. Returns the column exponents: a kernel vector `w` of
/// the scaled matrix gives `v_j = 2^(c_j) w_j` for the original.
fn equilibrate<T: Field>(a: &mut [Vec<T>], cols: usize) -> Vec<i32> {
    let exp = |x: f64| if x.is_finite() { -(x.floor() as i32) } else { 0 };
    for row in a.iter_mut() {
        let k = exp(row.iter().map(Field::log2_mag).fold(f64::NEG_INFINITY, f64::max));
        if k != 0 {
            row.iter_mut().for_each(|x| x.shift(k));
        }
    }
    let col_exp: Vec<i32> = (0..cols)
        .map(|j| exp(a.iter().map(|r| r[j].log2_mag()).fold(f64::NEG_INFINITY, f64::max)))
        .collect();
    for row in a.iter_mut() {
        for (x, &k) in row.iter_mut().zip(&col_exp) {
            if k != 0 {
                x.shift(k);
            }
        }
    }
    col_exp
}

/// Upper-triangular factor with the column order used.
struct Echelon<T> {
    rows: Vec<Vec<T>>,
    perm: Vec<usize>,
    rank: usize,
}

/// Full-pivot elimination on an `r x c` system. Stops when the largest
/// remaining entry falls below `2^threshold_log2`.
fn eliminate<T: Field>(mut a: Vec<Vec<T>>, cols: usize, threshold_log2: f64) -> Echelon<T> {
    let rows = a.len();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    let mut tmp = match a.first().and_then(|r| r.first()) {
        Some(x) => x.zero_like(),
        None => return Echelon { rows: a, perm, rank },
    };
    for k in 0..rows.min(cols) {
        let mut best = (f64::NEG_INFINITY, k, k);
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                let m = x.log2_mag();
                if m > best.0 {
                    best = (m, i, j);
                }
            }
        }
        if best.0.is_nan() || best.0 <= threshold_log2 {
            break;
        }
        let (_, pi, pj) = best;
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            perm.swap(k, pj);
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            if row[k].is_zero_value() {
                continue;
            }
            let mut factor = row[k].clone();
            factor /= &pivot_row[k];
            for j in k + 1..cols {
                if pivot_row[j].is_zero_value() {
                    continue;
                }
                row[j].sub_mul(&factor, &pivot_row[j], &mut tmp);
            }
            row[k] = factor.zero_like();
        }
        rank = k + 1;
    }
    Echelon { rows: a, perm, rank }
}

/// Back-substitution with the single free column set to one.
fn back_substitute<T: Field>(ech: &Echelon<T>, cols: usize, one: T) -> Vec<T> {
    let r = ech.rank;
    let mut y: Vec<T> = vec![one.zero_like(); cols];
    y[r] = one;
    let mut tmp = y[0].zero_like();
    for k in (0..r).rev() {
        let row = &ech.rows[k];
        let mut acc = row[k].zero_like();
        for j in k + 1..=r {
            if row[j].is_zero_value() || y[j].is_zero_value() {
                continue;
            }
            acc.sub_mul(&row[j], &y[j], &mut tmp);
        }
        acc /= &row[k];
        y[k] = acc;
    }
    let mut x = vec![y[0].zero_like(); cols];
    for (k, v) in y.into_iter().enumerate() {
        x[ech.perm[k]] = v;
    }
    x
}

/// A normalized kernel vector with its certificate.
#[derive(Debug, Clone)]
pub struct NullVector {
    /// Largest-magnitude entry equal to one.
    pub vector: Vec<Complex>,
    /// Numerical rank of the matrix.
    pub rank: usize,
    /// `||M v|| / ||M||` with `||v|| = 1`.
    pub residual: Float,
    /// Column left free by the pivoting.
    pub free_column: usize,
}

/// Kernel vector of an `(c-1) x c` matrix.
///
/// Rows and columns are first scaled by exact powers of two, then
/// elimination uses full pivoting. A pivot below `zero_tol` of the scaled
/// matrix ends it; two or more unpivoted columns mean the kernel is not
/// one-dimensional.
/// Real matrices run on real arithmetic.
pub fn nullvector(m: &DenseMatrix<Complex>, zero_tol: &Float) -> Result<NullVector> {
    if m.rows + 1 != m.cols {
        return Err(Error::Precondition(format!(
            "kernel extraction needs rows = cols - 1, got {}x{}",
            m.rows, m.cols
        )));
    }
    let bits = m.data.first().map_or(64, |z| z.prec().0);
    let norm = m.max_row_norm();
    // After equilibration every nonzero row and column peaks in [1, 2).
    let threshold = log2_of(zero_tol);
    let cols = m.cols;
    let (vector, rank, free_column) = if m.is_real() {
        let mut rows: Vec<Vec<Float>> =
            m.to_rows().into_iter().map(|r| r.into_iter().map(|z| z.into_real_imag().0).collect()).collect();
        let col_exp = equilibrate(&mut rows, cols);
        let ech = eliminate(rows, cols, threshold);
        check_rank(ech.rank, cols)?;
        let mut x = back_substitute(&ech, cols, Float::with_val(bits, 1));
        x.iter_mut().zip(&col_exp).for_each(|(v, &k)| v.shift(k));
        (x.into_iter().map(|v| Complex::with_val(bits, (v, 0))).collect::<Vec<_>>(), ech.rank, ech.perm[ech.rank])
    } else {
        let mut rows = m.to_rows();
        let col_exp = equilibrate(&mut rows, cols);
        let ech = eliminate(rows, cols, threshold);
        check_rank(ech.rank, cols)?;
        let mut x = back_substitute(&ech, cols, Complex::with_val(bits, 1));
        x.iter_mut().zip(&col_exp).for_each(|(v, &k)| v.shift(k));
        (x, ech.rank, ech.perm[ech.rank])
    };
    let vector = normalize_max(vector);
    let residual = relative_residual(m, &vector, &norm);
    if residual > *zero_tol {
        return Err(Error::ResidualTooLarge {
            residual: fmt_float(&residual, 6),
            tolerance: fmt_float(zero_tol, 6),
        });
    }
    Ok(NullVector { vector, rank, residual, free_column })
}

fn check_rank(rank: usize, cols: usize) -> Result<()> {
    let free = cols - rank;
    if free >= 2 {
        return Err(Error::NonGeneric { rank, free });
    }
    Ok(())
}

/// Scales so the first entry of largest magnitude becomes exactly one.
pub fn normalize_max(mut v: Vec<Complex>) -> Vec<Complex> {
    let mut best: Option<(usize, Float)> = None;
    for (i, z) in v.iter().enumerate() {
        let a = Float::with_val(z.prec().0, z.abs_ref());
        if best.as_ref().is_none_or(|(_, b)| a > *b) {
            best = Some((i, a));
        }
    }
    let Some((i, mag)) = best else { return v };
    if mag.is_zero() {
        return v;
    }
    let pivot = v[i].clone();
    for z in v.iter_mut() {
        *z /= &pivot;
    }
    let bits = v[i].prec().0;
    v[i] = Complex::with_val(bits, 1);
    v
}

/// `||M v||_inf / (||M||_inf ||v||_inf)` at 64 bits.
pub fn relative_residual(m: &DenseMatrix<Complex>, v: &[Complex], norm: &Float) -> Float {
    let mv = m.mul_vec(v);
    let mut worst = Float::new(64);
    for z in &mv {
        let a = Float::with_val(64, z.abs_ref());
        if a > worst {
            worst = a;
        }
    }
    let mut vn = Float::new(64);
    for z in v {
        let a = Float::with_val(64, z.abs_ref());
        if a > vn {
            vn = a;
        }
    }
    if norm.is_zero() || vn.is_zero() {
        return worst;
    }
    worst / norm / vn
}

/// Runs `attempt` at `ctx`, and once more at doubled precision if the
/// residual certificate fails.
pub fn with_precision_retry<T>(
    ctx: &PrecisionContext,
    attempt: impl Fn(&PrecisionContext) -> Result<T>,
) -> Result<T> {
    match attempt(ctx) {
        Err(Error::ResidualTooLarge { .. }) => {
            let next = ctx.doubled();
            match attempt(&next) {
                Err(Error::ResidualTooLarge { residual, .. }) => {
                    Err(Error::PrecisionExhausted { bits: next.bits(), residual })
                }
                other => other,
            }
        }
        other => other,
    }
}

/// Exact kernel vector of an `(c-1) x c` rational matrix by Bareiss
/// elimination, with the free coordinate set to one.
pub fn nullvector_exact(m: &DenseMatrix<Rational>) -> Result<Vec<Rational>> {
    if m.rows + 1 != m.cols {
        return Err(Error::Precondition(format!(
            "kernel extraction needs rows = cols - 1, got {}x{}",
            m.rows, m.cols
        )));
    }
    let (rows, cols) = (m.rows, m.cols);
    // Clear denominators row by row.
    let mut a: Vec<Vec<Integer>> = (0..rows)
        .map(|i| {
            let mut l = Integer::from(1);
            for q in m.row(i) {
                l.lcm_mut(q.denom());
            }
            m.row(i)
                .iter()
                .map(|q| q.numer() * Integer::from(&l / q.denom()))
                .collect()
        })
        .collect();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut prev = Integer::from(1);
    let mut rank = 0;
    for k in 0..rows {
        let found = (k..cols).find_map(|j| (k..rows).find(|&i| a[i][j] != 0).map(|i| (i, j)));
        let Some((pi, pj)) = found else { break };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            perm.swap(k, pj);
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let p = pivot_row[k].clone();
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..cols {
                let mut v = Integer::from(&row[j] * &p);
                v -= Integer::from(&lead * &pivot_row[j]);
                v.div_exact_mut(&prev);
                row[j] = v;
            }
            row[k] = Integer::new();
        }
        prev = p;
        rank = k + 1;
    }
    check_rank(rank, cols)?;
    let mut y = vec![Rational::new(); cols];
    y[rank] = Rational::from(1);
    for k in (0..rank).rev() {
        let mut acc = Rational::new();
        for j in k + 1..=rank {
            acc -= Rational::from(&a[k][j] * &y[j]);
        }
        y[k] = acc / Rational::from(&a[k][k]);
    }
    let mut x = vec![Rational::new(); cols];
    for (k, v) in y.into_iter().enumerate() {
        x[perm[k]] = v;
    }
    Ok(x)
}
