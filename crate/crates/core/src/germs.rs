//! Series expansions of the test functions at infinity and at the origin.
//!
//! Markov functions are built from their moments, the root-type cases from
//! exact binomial series, and general algebraic functions from a product of
//! binomial factors with explicit branch bookkeeping.

use rug::float::Constant;
use rug::{Complex, Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{rational_to_string, Center, ExactComplex, GermSeries};

/// Function family of a [`FunctionSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Cauchy transform of Lebesgue measure on `E_j` (Case 1).
    MarkovLog,
    /// `((z - hi)/(z - lo))^(1/2)` on `E_j` (Case 2).
    MarkovRootHalf,
    /// `((z - hi)/(z - lo))^(1/3)` on `E_j` (Case 3).
    MarkovRootThird,
    /// `shift + w^k (lead * prod (z - a_j)^(m_j))^alpha`.
    AlgebraicProduct,
    /// `((z - a_1)/(z - a_2))^alpha`.
    TwoPointRatio,
}

/// Where a germ is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GermCenter {
    Infinity,
    Origin,
}

impl GermCenter {
    pub fn center(self) -> Center {
        match self {
            GermCenter::Infinity => Center::Infinity,
            GermCenter::Origin => Center::Origin,
        }
    }
}

fn one() -> ExactComplex {
    ExactComplex::real(Rational::from(1))
}

fn is_one(c: &ExactComplex) -> bool {
    *c == one()
}

fn is_zero(c: &ExactComplex) -> bool {
    c.is_zero()
}

fn is_zero_i64(k: &i64) -> bool {
    *k == 0
}

/// A test function, serializable as the unit of every preset.
///
/// For the Markov families only `a` and `index` are used. For
/// `algebraic_product` the germ is
/// `shift + exp(2 pi i k alpha) * (lead * prod (z - a_j)^(m_j))^alpha`
/// where `alpha` is the positive gcd of `exponents` and `m_j` the integer
/// quotients; `k` is `branch_tag`. For `two_point_ratio` the branch points
/// are `[a_1, a_2]` and `exponents` holds the single `alpha`.
///
/// At the origin the power is the principal power of the exact value of the
/// base at 0. At infinity it is the principal power of `lead` times
/// `z^(alpha M)`, `M = sum m_j`, which must be an integer power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub a: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u8>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub branch_points: Vec<ExactComplex>,
    #[serde(
        default,
        skip_serializing_if = "Vec::is_empty",
        with = "crate::numerics::exact::rational_vec_str"
    )]
    pub exponents: Vec<Rational>,
    #[serde(default, skip_serializing_if = "is_zero_i64")]
    pub branch_tag: i64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub lead: ExactComplex,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub shift: ExactComplex,
}

mod opt_rational {
    use rug::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::numerics::{parse_rational, rational_to_string};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(rational_to_string).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let v = Option::<String>::deserialize(d)?;
        v.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

impl FunctionSpec {
    fn markov(family: Family, a: Rational, index: u8) -> Self {
        Self {
            family,
            a: Some(a),
            index: Some(index),
            branch_points: Vec::new(),
            exponents: Vec::new(),
            branch_tag: 0,
            lead: one(),
            shift: ExactComplex::default(),
        }
    }

    /// Case 1 function `f_j`.
    pub fn case1(a: Rational, index: u8) -> Self {
        Self::markov(Family::MarkovLog, a, index)
    }

    /// Case 2 function `g_j`.
    pub fn case2(a: Rational, index: u8) -> Self {
        Self::markov(Family::MarkovRootHalf, a, index)
    }

    /// Case 3 function `h_j`.
    pub fn case3(a: Rational, index: u8) -> Self {
        Self::markov(Family::MarkovRootThird, a, index)
    }

    /// Case 1, 2 or 3.
    pub fn case(case: u8, a: Rational, index: u8) -> Result<Self> {
        match case {
            1 => Ok(Self::case1(a, index)),
            2 => Ok(Self::case2(a, index)),
            3 => Ok(Self::case3(a, index)),
            _ => Err(Error::InvalidParameter(format!("case must be 1, 2 or 3, got {case}"))),
        }
    }

    /// `prod (z - a_j)^(e_j)`.
    pub fn algebraic(branch_points: Vec<ExactComplex>, exponents: Vec<Rational>) -> Self {
        Self {
            family: Family::AlgebraicProduct,
            a: None,
            index: None,
            branch_points,
            exponents,
            branch_tag: 0,
            lead: one(),
            shift: ExactComplex::default(),
        }
    }

    /// `((z - a_1)/(z - a_2))^alpha`.
    pub fn two_point_ratio(a1: ExactComplex, a2: ExactComplex, alpha: Rational) -> Self {
        Self {
            family: Family::TwoPointRatio,
            branch_points: vec![a1, a2],
            exponents: vec![alpha],
            ..Self::algebraic(Vec::new(), Vec::new())
        }
    }

    pub fn with_branch_tag(mut self, k: i64) -> Self {
        self.branch_tag = k;
        self
    }

    pub fn with_lead(mut self, lead: ExactComplex) -> Self {
        self.lead = lead;
        self
    }

    pub fn with_shift(mut self, shift: ExactComplex) -> Self {
        self.shift = shift;
        self
    }

    /// The Markov parameters `(a, j)`, validated.
    fn markov_params(&self) -> Result<(Rational, u8)> {
        let a = self
            .a
            .clone()
            .ok_or_else(|| Error::InvalidParameter("parameter a is required".into()))?;
        check_a(&a)?;
        let j = self.index.unwrap_or(1);
        if j != 1 && j != 2 {
            return Err(Error::InvalidParameter(format!("index must be 1 or 2, got {j}")));
        }
        Ok((a, j))
    }

    /// Branch points and exponents of the algebraic representation.
    fn algebraic_parts(&self) -> Result<(Vec<ExactComplex>, Vec<Rational>)> {
        match self.family {
            Family::AlgebraicProduct => {
                if self.branch_points.len() != self.exponents.len() || self.branch_points.is_empty() {
                    return Err(Error::InvalidParameter(
                        "branch_points and exponents must be nonempty and of equal length".into(),
                    ));
                }
                Ok((self.branch_points.clone(), self.exponents.clone()))
            }
            Family::TwoPointRatio => {
                if self.branch_points.len() != 2 || self.exponents.len() != 1 {
                    return Err(Error::InvalidParameter(
                        "two_point_ratio needs two branch points and one exponent".into(),
                    ));
                }
                let alpha = self.exponents[0].clone();
                Ok((self.branch_points.clone(), vec![alpha.clone(), -alpha]))
            }
            _ => Err(Error::InvalidParameter("not an algebraic family".into())),
        }
    }

    /// Support endpoints `(lo, hi)` of the Markov families.
    pub fn support(&self) -> Option<(Rational, Rational)> {
        let (a, j) = self.markov_params().ok()?;
        Some(support(&a, j))
    }

    /// Finite singular points: support endpoints or branch points.
    pub fn singular_points(&self) -> Vec<ExactComplex> {
        match self.family {
            Family::AlgebraicProduct | Family::TwoPointRatio => self.branch_points.clone(),
            _ => match self.support() {
                Some((lo, hi)) => vec![ExactComplex::real(lo), ExactComplex::real(hi)],
                None => Vec::new(),
            },
        }
    }

    /// Whether the germ at infinity has real coefficients.
    pub fn is_real(&self) -> bool {
        match self.family {
            Family::MarkovLog | Family::MarkovRootHalf | Family::MarkovRootThird => true,
            Family::AlgebraicProduct => {
                self.branch_points.iter().all(ExactComplex::is_real)
                    && self.lead.is_real()
                    && self.lead.re > 0
                    && self.shift.is_real()
                    && self.branch_tag == 0
            }
            Family::TwoPointRatio => self.branch_points.iter().all(ExactComplex::is_real) && self.branch_tag == 0,
        }
    }

    /// Germ known modulo `t^order`.
    pub fn germ(&self, center: GermCenter, order: i64, bits: u32) -> Result<GermSeries> {
        match self.family {
            Family::MarkovLog | Family::MarkovRootHalf | Family::MarkovRootThird => {
                if center != GermCenter::Infinity {
                    return Err(Error::InvalidParameter(
                        "Markov families are expanded at infinity only".into(),
                    ));
                }
                let (a, j) = self.markov_params()?;
                match self.family {
                    Family::MarkovLog => germ_case1(&a, j, order, bits),
                    Family::MarkovRootHalf => germ_case2(&a, j, order, bits),
                    _ => germ_case3(&a, j, order, bits),
                }
            }
            _ => germ_algebraic(self, center, order, bits),
        }
    }

    /// Value of the continuation of the germ at infinity.
    ///
    /// Each factor uses the principal branch of `(1 - c/z)^e`, so the result
    /// is the analytic continuation from infinity everywhere off the
    /// segments joining 0 to the singular points.
    pub fn eval(&self, z: &Complex, bits: u32) -> Result<Complex> {
        let guard = bits + 32;
        let z = Complex::with_val(guard, z);
        if z.is_zero() {
            return Err(Error::InvalidParameter("evaluation at the origin".into()));
        }
        let inv = Complex::with_val(guard, z.recip_ref());
        let factor = |c: &ExactComplex| -> Complex {
            let one = Complex::with_val(guard, 1);
            Complex::with_val(guard, one - c.to_complex(guard) * &inv)
        };
        let pow = |b: Complex, e: &Rational| -> Complex {
            Complex::with_val(guard, b.ln() * Float::with_val(guard, e)).exp()
        };
        let value = match self.family {
            Family::MarkovLog | Family::MarkovRootHalf | Family::MarkovRootThird => {
                let (a, j) = self.markov_params()?;
                let (lo, hi) = support(&a, j);
                let flo = factor(&ExactComplex::real(lo));
                let fhi = factor(&ExactComplex::real(hi));
                match self.family {
                    Family::MarkovLog => Complex::with_val(guard, flo.ln() - fhi.ln()),
                    Family::MarkovRootHalf | Family::MarkovRootThird => {
                        let alpha = if self.family == Family::MarkovRootHalf {
                            Rational::from((1, 2))
                        } else {
                            Rational::from((1, 3))
                        };
                        let neg = Rational::from(-&alpha);
                        Complex::with_val(guard, pow(fhi, &alpha) * pow(flo, &neg))
                    }
                    _ => unreachable!(),
                }
            }
            _ => {
                let (points, exponents) = self.algebraic_parts()?;
                let (alpha, ms) = rational_gcd(&exponents)?;
                let total: Integer = ms.iter().sum();
                let power = Rational::from(&alpha * &total);
                if *power.denom() != 1 {
                    return Err(Error::ExponentSum(rational_to_string(&power)));
                }
                let k = power.numer().to_i32().expect("exponent sum fits in i32");
                let mut acc = Complex::with_val(guard, rug::ops::Pow::pow(&z, k));
                for (p, m) in points.iter().zip(&ms) {
                    acc *= pow(factor(p), &Rational::from(&alpha * m));
                }
                acc *= principal_power(&self.lead, &alpha, guard);
                acc *= root_of_unity(self.branch_tag, &alpha, guard);
                acc += self.shift.to_complex(guard);
                acc
            }
        };
        Ok(Complex::with_val(bits, value))
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match self.family {
            Family::MarkovLog | Family::MarkovRootHalf | Family::MarkovRootThird => {
                let a = self.a.as_ref().map(rational_to_string).unwrap_or_default();
                format!("{:?} a={} j={}", self.family, a, self.index.unwrap_or(1))
            }
            _ => format!(
                "{:?} points={} exponents=[{}] tag={}",
                self.family,
                self.branch_points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "),
                self.exponents.iter().map(rational_to_string).collect::<Vec<_>>().join(","),
                self.branch_tag
            ),
        }
    }
}

fn check_a(a: &Rational) -> Result<()> {
    if *a <= -1 || *a >= 1 {
        return Err(Error::InvalidParameter(format!(
            "a = {} lies outside (-1, 1)",
            rational_to_string(a)
        )));
    }
    Ok(())
}

/// `E_1 = [-1, a]`, `E_2 = [-a, 1]`.
fn support(a: &Rational, j: u8) -> (Rational, Rational) {
    if j == 1 {
        (Rational::from(-1), a.clone())
    } else {
        (Rational::from(-a), Rational::from(1))
    }
}

/// Weight of a Markov measure on `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Lebesgue,
    /// Normalized `((hi - x)/(x - lo))^(1/2)` (`Upper`) or its reciprocal.
    RootHalf(Orientation),
    RootThird(Orientation),
}

/// Which endpoint a root weight vanishes at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `((hi - x)/(x - lo))^alpha`: zero at `hi`.
    Upper,
    /// `((x - lo)/(hi - x))^alpha`: zero at `lo`.
    Lower,
}

/// Moments `int x^k dmu`, `k < count`.
///
/// Root weights carry the factor `sin(pi alpha)/pi`, which makes them the
/// measures whose Cauchy transforms are `1 - ((z-hi)/(z-lo))^alpha`
/// (`Upper`) and `((z-lo)/(z-hi))^alpha - 1` (`Lower`); their moments are
/// read off those binomial series.
pub fn markov_moments(lo: &Rational, hi: &Rational, weight: Weight, count: usize, bits: u32) -> Result<Vec<Float>> {
    if lo >= hi {
        return Err(Error::InvalidParameter("support must satisfy lo < hi".into()));
    }
    if count == 0 {
        return Err(Error::InvalidParameter("moment count must be at least 1".into()));
    }
    match weight {
        Weight::Lebesgue => Ok(lebesgue_moments(lo, hi, count)
            .iter()
            .map(|m| Float::with_val(bits, m))
            .collect()),
        Weight::RootHalf(o) | Weight::RootThird(o) => {
            let alpha = if matches!(weight, Weight::RootHalf(_)) {
                Rational::from((1, 2))
            } else {
                Rational::from((1, 3))
            };
            let (num, den, sign) = match o {
                Orientation::Upper => (hi, lo, -1),
                Orientation::Lower => (lo, hi, 1),
            };
            let s = ratio_power_at_infinity(num, den, &alpha, count as i64 + 1, bits)?;
            Ok((1..=count as i64)
                .map(|p| {
                    let c = s.coeff(p).expect("within order");
                    Float::with_val(bits, c.real() * sign)
                })
                .collect())
        }
    }
}

/// Exact Lebesgue moments `(hi^(k+1) - lo^(k+1))/(k+1)`.
pub fn lebesgue_moments(lo: &Rational, hi: &Rational, count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut hp = hi.clone();
    let mut lp = lo.clone();
    for k in 0..count {
        out.push(Rational::from(&hp - &lp) / Rational::from(k as u64 + 1));
        hp *= hi;
        lp *= lo;
    }
    out
}

/// `((z - num)/(z - den))^alpha` at infinity, value 1 there.
fn ratio_power_at_infinity(num: &Rational, den: &Rational, alpha: &Rational, order: i64, bits: u32) -> Result<GermSeries> {
    let len = order.max(1) as usize;
    let u1 = GermSeries::binomial_exact(Center::Infinity, &ExactComplex::real(Rational::from(-num)), 1, alpha, len, bits);
    let u2 = GermSeries::binomial_exact(
        Center::Infinity,
        &ExactComplex::real(Rational::from(-den)),
        1,
        &Rational::from(-alpha),
        len,
        bits,
    );
    u1.mul(&u2)
}

/// Case 1: `int_{E_j} dx/(z - x)`, offset 1, coefficient of `z^(-k-1)` equal
/// to the moment `m_k`. Known modulo `z^(-order)`.
pub fn germ_case1(a: &Rational, j: u8, order: i64, bits: u32) -> Result<GermSeries> {
    check_a(a)?;
    let (lo, hi) = support(a, j);
    let count = (order - 1).max(0) as usize;
    let coeffs = lebesgue_moments(&lo, &hi, count)
        .iter()
        .map(|m| Complex::with_val(bits, m))
        .collect();
    Ok(GermSeries::new(Center::Infinity, 1, coeffs, bits))
}

/// Case 2: `((z - hi)/(z - lo))^(1/2)` with value 1 at infinity.
pub fn germ_case2(a: &Rational, j: u8, order: i64, bits: u32) -> Result<GermSeries> {
    check_a(a)?;
    let (lo, hi) = support(a, j);
    ratio_power_at_infinity(&hi, &lo, &Rational::from((1, 2)), order, bits)
}

/// Case 3: `((z - hi)/(z - lo))^(1/3)` with value 1 at infinity.
pub fn germ_case3(a: &Rational, j: u8, order: i64, bits: u32) -> Result<GermSeries> {
    check_a(a)?;
    let (lo, hi) = support(a, j);
    ratio_power_at_infinity(&hi, &lo, &Rational::from((1, 3)), order, bits)
}

/// Positive gcd of rationals and the integer quotients.
fn rational_gcd(qs: &[Rational]) -> Result<(Rational, Vec<Integer>)> {
    let mut num = Integer::new();
    let mut den = Integer::from(1);
    for q in qs {
        num = num.gcd(q.numer());
        den = den.lcm(q.denom());
    }
    if num == 0 {
        return Err(Error::InvalidParameter("all exponents are zero".into()));
    }
    let g = Rational::from((num, den));
    let ms = qs
        .iter()
        .map(|q| {
            let m = Rational::from(q / &g);
            debug_assert_eq!(*m.denom(), 1);
            m.numer().clone()
        })
        .collect();
    Ok((g, ms))
}

/// Principal `base^alpha`.
fn principal_power(base: &ExactComplex, alpha: &Rational, bits: u32) -> Complex {
    let guard = bits + 64;
    let b = base.to_complex(guard);
    let l = b.ln();
    let e = l * Float::with_val(guard, alpha);
    Complex::with_val(bits, e.exp())
}

/// `exp(2 pi i k alpha)`.
fn root_of_unity(k: i64, alpha: &Rational, bits: u32) -> Complex {
    if k == 0 {
        return Complex::with_val(bits, 1);
    }
    let guard = bits + 64;
    let turn = Rational::from(alpha * k);
    // Reduce mod 1 exactly before touching pi.
    let frac = &turn - turn.clone().floor();
    if frac == 0 {
        return Complex::with_val(bits, 1);
    }
    if frac == Rational::from((1, 2)) {
        return Complex::with_val(bits, -1);
    }
    let theta = Float::with_val(guard, Constant::Pi) * 2u32 * Float::with_val(guard, &frac);
    let (s, c) = theta.sin_cos(Float::new(guard));
    Complex::with_val(bits, (c, s))
}

/// Germ of an algebraic product or two-point ratio at infinity or the origin.
pub fn germ_algebraic(spec: &FunctionSpec, center: GermCenter, order: i64, bits: u32) -> Result<GermSeries> {
    let (points, exponents) = spec.algebraic_parts()?;
    let (alpha, ms) = rational_gcd(&exponents)?;
    let guard = bits + 32;
    let tag = root_of_unity(spec.branch_tag, &alpha, guard);
    match center {
        GermCenter::Infinity => {
            let total: Integer = ms.iter().sum();
            let power = Rational::from(&alpha * &total);
            if *power.denom() != 1 {
                return Err(Error::ExponentSum(rational_to_string(&power)));
            }
            let offset = -power.numer().to_i64().expect("exponent sum fits in i64");
            // Known modulo t^order, so the unit factor needs order - offset terms.
            let len = (order - offset).max(0) as usize;
            let mut acc = GermSeries::constant(Center::Infinity, Complex::with_val(guard, 1), len, guard);
            for (p, m) in points.iter().zip(&ms) {
                let e = Rational::from(&alpha * m);
                let f = GermSeries::binomial_exact(Center::Infinity, &p.neg(), 1, &e, len, guard);
                acc = acc.mul(&f)?;
            }
            let lead = principal_power(&spec.lead, &alpha, guard);
            let factor = Complex::with_val(guard, &lead * &tag);
            let g = acc.scale(&factor).shift(offset);
            let g = add_constant(g, &spec.shift, guard)?;
            Ok(round(g, bits))
        }
        GermCenter::Origin => {
            let mut value = spec.lead.clone();
            for (p, m) in points.iter().zip(&ms) {
                if p.is_zero() {
                    return Err(Error::BranchPointAtCenter(p.to_string()));
                }
                let f = p.neg().powi(m.to_i64().expect("exponent fits in i64")).expect("nonzero");
                value = value.mul(&f);
            }
            let len = order.max(0) as usize;
            let mut acc = GermSeries::constant(Center::Origin, Complex::with_val(guard, 1), len, guard);
            for (p, m) in points.iter().zip(&ms) {
                let e = Rational::from(&alpha * m);
                let c = p.recip().expect("nonzero").neg();
                let f = GermSeries::binomial_exact(Center::Origin, &c, 1, &e, len, guard);
                acc = acc.mul(&f)?;
            }
            let lead = principal_power(&value, &alpha, guard);
            let factor = Complex::with_val(guard, &lead * &tag);
            let g = add_constant(acc.scale(&factor), &spec.shift, guard)?;
            Ok(round(g, bits))
        }
    }
}

fn add_constant(g: GermSeries, c: &ExactComplex, bits: u32) -> Result<GermSeries> {
    if c.is_zero() {
        return Ok(g);
    }
    if g.end() <= 0 {
        return Ok(g);
    }
    let k = GermSeries::constant(g.center().clone(), c.to_complex(bits), g.end() as usize, bits);
    g.add(&k)
}

fn round(g: GermSeries, bits: u32) -> GermSeries {
    let coeffs = g.coeffs().iter().map(|c| Complex::with_val(bits, c)).collect();
    GermSeries::new(g.center().clone(), g.offset(), coeffs, bits)
}
