//! Checks that turn zero sets into verifiable statements: symmetry of the
//! clouds, spurious zero-pole pairs, junction points of the pole curves,
//! arcsine statistics on a segment, localization on the Angelesco
//! segments and geometric convergence rates.

use rug::float::Constant;
use rug::{Complex, Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{complex_strings, fmt_float};
use crate::roots::ZeroSet;

fn dist(a: &Complex, b: &Complex) -> Float {
    let bits = a.prec().0.max(b.prec().0);
    Float::with_val(64, Complex::with_val(bits, a - b).abs_ref())
}

fn to_pair(z: &Complex) -> (f64, f64) {
    (z.real().to_f64(), z.imag().to_f64())
}

/// Outcome of a multiset matching check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub ok: bool,
    #[serde(serialize_with = "ser_float")]
    pub defect: Float,
    /// Roots whose matched partner is farther than the tolerance.
    pub unmatched: usize,
}

fn ser_float<S: serde::Serializer>(x: &Float, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_float(x, 6))
}

/// Greedy nearest-neighbour matching of `a` against `b` in order.
fn greedy_match(a: &[Complex], b: &[Complex], tol: &Float) -> SymmetryReport {
    let mut used = vec![false; b.len()];
    let mut defect = Float::new(64);
    let mut unmatched = 0;
    for z in a {
        let mut best: Option<(usize, Float)> = None;
        for (j, w) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = dist(z, w);
            if best.as_ref().is_none_or(|(_, bd)| d < *bd) {
                best = Some((j, d));
            }
        }
        let (j, d) = best.expect("sets have equal size");
        used[j] = true;
        if d > *tol {
            unmatched += 1;
        }
        if d > defect {
            defect = d;
        }
    }
    SymmetryReport { ok: unmatched == 0, defect, unmatched }
}

/// Matches each root with the conjugate multiset.
pub fn check_conjugate_symmetry(zs: &ZeroSet, tol: &Float) -> SymmetryReport {
    let conj: Vec<Complex> = zs.roots.iter().map(|z| Complex::with_val(z.prec(), z.conj_ref())).collect();
    greedy_match(&zs.roots, &conj, tol)
}

/// Matches `zs1` against `{-z : z in zs2}`.
pub fn check_reflection_pairing(zs1: &ZeroSet, zs2: &ZeroSet, tol: &Float) -> Result<SymmetryReport> {
    if zs1.len() != zs2.len() {
        return Err(Error::InvalidParameter(format!(
            "zero sets have {} and {} elements",
            zs1.len(),
            zs2.len()
        )));
    }
    let neg: Vec<Complex> = zs2.roots.iter().map(|z| Complex::with_val(z.prec(), -z)).collect();
    Ok(greedy_match(&zs1.roots, &neg, tol))
}

/// Upper bound on spurious pairs for `p` branch points in general position:
/// the genus of the two-sheeted surface.
pub fn genus_bound(branch_points: usize) -> usize {
    branch_points.saturating_sub(2)
}

/// Thresholds for doublet detection, in plot units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FroissartOptions {
    pub doublet_eps: f64,
    pub hull_margin: f64,
}

impl Default for FroissartOptions {
    fn default() -> Self {
        Self { doublet_eps: 1e-3, hull_margin: 0.1 }
    }
}

/// A zero with its nearest pole closer than `doublet_eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct Doublet {
    pub zero: Complex,
    pub pole: Complex,
    pub gap: Float,
    /// Farther than `hull_margin` from every branch point.
    pub far_from_branch_points: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubletReport {
    pub pairs: Vec<Doublet>,
    pub genus_bound: usize,
    pub options: FroissartOptions,
}

impl DoubletReport {
    /// Number of close pairs away from the branch points.
    pub fn count(&self) -> usize {
        self.pairs.iter().filter(|d| d.far_from_branch_points).count()
    }

    pub fn within_bound(&self) -> bool {
        self.count() <= self.genus_bound
    }

    pub fn doublets(&self) -> impl Iterator<Item = &Doublet> {
        self.pairs.iter().filter(|d| d.far_from_branch_points)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pairs: Vec<serde_json::Value> = self
            .pairs
            .iter()
            .map(|d| {
                serde_json::json!({
                    "zero": complex_strings(&d.zero, 20),
                    "pole": complex_strings(&d.pole, 20),
                    "gap": fmt_float(&d.gap, 6),
                    "far_from_branch_points": d.far_from_branch_points,
                })
            })
            .collect();
        serde_json::json!({
            "schema": 1,
            "kind": "froissart",
            "count": self.count(),
            "genus_bound": self.genus_bound,
            "doublet_eps": self.options.doublet_eps,
            "hull_margin": self.options.hull_margin,
            "pairs": pairs,
        })
    }
}

/// Pairs each zero with its nearest pole and keeps the close pairs.
pub fn detect_froissart(
    zeros: &ZeroSet,
    poles: &ZeroSet,
    branch_points: &[Complex],
    genus_bound: usize,
    options: FroissartOptions,
) -> DoubletReport {
    let eps = Float::with_val(64, options.doublet_eps);
    let margin = Float::with_val(64, options.hull_margin);
    let mut pairs = Vec::new();
    for z in &zeros.roots {
        let nearest = poles.roots.iter().map(|p| (p, dist(z, p))).min_by(|a, b| a.1.total_cmp(&b.1));
        let Some((p, gap)) = nearest else { break };
        if gap >= eps {
            continue;
        }
        let far = branch_points.iter().all(|b| dist(z, b) > margin && dist(p, b) > margin);
        pairs.push(Doublet { zero: z.clone(), pole: p.clone(), gap, far_from_branch_points: far });
    }
    DoubletReport { pairs, genus_bound, options }
}

type Pt = (f64, f64);

fn cross(o: Pt, a: Pt, b: Pt) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counter-clockwise convex hull by the monotone chain.
fn convex_hull(mut pts: Vec<Pt>) -> Vec<Pt> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Pt> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Pt>> = if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn seg_dist(p: Pt, a: Pt, b: Pt) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    (p.0 - a.0 - t * dx).hypot(p.1 - a.1 - t * dy)
}

/// Inside the hull, or within `slack` of it.
fn in_hull(hull: &[Pt], p: Pt, slack: f64) -> bool {
    match hull.len() {
        0 => false,
        1 => (p.0 - hull[0].0).hypot(p.1 - hull[0].1) <= slack,
        2 => seg_dist(p, hull[0], hull[1]) <= slack,
        k => {
            let inside = (0..k).all(|i| cross(hull[i], hull[(i + 1) % k], p) >= 0.0);
            inside || (0..k).any(|i| seg_dist(p, hull[i], hull[(i + 1) % k]) <= slack)
        }
    }
}

/// Minimum spanning tree by Prim's algorithm; returns adjacency lists.
fn spanning_tree(pts: &[Pt]) -> Vec<Vec<usize>> {
    let n = pts.len();
    let mut adj = vec![Vec::new(); n];
    if n == 0 {
        return adj;
    }
    let d = |i: usize, j: usize| (pts[i].0 - pts[j].0).hypot(pts[i].1 - pts[j].1);
    let mut in_tree = vec![false; n];
    let mut best = vec![(f64::INFINITY, 0usize); n];
    in_tree[0] = true;
    for (j, b) in best.iter_mut().enumerate().skip(1) {
        *b = (d(0, j), 0);
    }
    for _ in 1..n {
        let (next, _) = (0..n)
            .filter(|&j| !in_tree[j])
            .map(|j| (j, best[j].0))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("vertices remain");
        in_tree[next] = true;
        let parent = best[next].1;
        adj[next].push(parent);
        adj[parent].push(next);
        for j in 0..n {
            if !in_tree[j] {
                let dj = d(next, j);
                if dj < best[j].0 {
                    best[j] = (dj, next);
                }
            }
        }
    }
    adj
}

/// Size of the component containing `start` once the edge to `from` is cut.
fn arm_size(adj: &[Vec<usize>], start: usize, from: usize) -> usize {
    let mut stack = vec![(start, from)];
    let mut count = 0;
    while let Some((v, parent)) = stack.pop() {
        count += 1;
        for &w in &adj[v] {
            if w != parent {
                stack.push((w, v));
            }
        }
    }
    count
}

/// Junction points of the pole curves: poles inside the branch-point hull
/// where the spanning tree of those poles splits into at least three arms
/// of `k` or more poles each. Best candidates first.
pub fn chebotarev_candidates(poles: &ZeroSet, branch_points: &[Complex], k: usize) -> Result<Vec<Complex>> {
    if k == 0 {
        return Err(Error::InvalidParameter("arm size must be positive".into()));
    }
    let hull = convex_hull(branch_points.iter().map(to_pair).collect());
    let interior: Vec<&Complex> = poles.roots.iter().filter(|p| in_hull(&hull, to_pair(p), 1e-9)).collect();
    if interior.len() < k {
        return Err(Error::Precondition(format!(
            "{} poles inside the branch-point hull, need at least {k}",
            interior.len()
        )));
    }
    let pts: Vec<Pt> = interior.iter().map(|p| to_pair(p)).collect();
    let adj = spanning_tree(&pts);
    let mut found: Vec<(usize, usize)> = Vec::new();
    for (v, nbrs) in adj.iter().enumerate() {
        if nbrs.len() < 3 {
            continue;
        }
        let mut arms: Vec<usize> = nbrs.iter().map(|&w| arm_size(&adj, w, v)).collect();
        arms.sort_unstable_by(|a, b| b.cmp(a));
        if arms[2] >= k {
            found.push((arms[2], v));
        }
    }
    found.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    Ok(found.into_iter().map(|(_, v)| interior[v].clone()).collect())
}

/// The strongest junction of the pole curves.
pub fn estimate_chebotarev(poles: &ZeroSet, branch_points: &[Complex], k: usize) -> Result<Complex> {
    chebotarev_candidates(poles, branch_points, k)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Precondition("pole curves have no junction".into()))
}

/// Arcsine law on a real segment `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumModel {
    pub lo: Float,
    pub hi: Float,
}

impl EquilibriumModel {
    pub fn standard(bits: u32) -> Self {
        Self { lo: Float::with_val(bits, -1), hi: Float::with_val(bits, 1) }
    }

    pub fn segment(lo: Float, hi: Float) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidParameter("segment endpoints must increase".into()));
        }
        Ok(Self { lo, hi })
    }

    fn bits(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    /// Affine map of the segment onto `[-1, 1]`.
    fn to_standard(&self, z: &Complex) -> Complex {
        let bits = self.bits().max(z.prec().0);
        let mid = Float::with_val(bits, &self.lo + &self.hi);
        let width = Float::with_val(bits, &self.hi - &self.lo);
        let twice = Complex::with_val(bits, z * 2u32);
        Complex::with_val(bits, twice - mid) / width
    }

    /// `arccos(-x)/pi` after mapping, clamped to `[0, 1]` off the segment.
    pub fn cdf(&self, x: &Float) -> Float {
        let bits = self.bits().max(x.prec());
        let t = self.to_standard(&Complex::with_val(bits, x)).real().clone();
        if t <= -1 {
            return Float::new(bits);
        }
        if t >= 1 {
            return Float::with_val(bits, 1);
        }
        let pi = Float::with_val(bits, Constant::Pi);
        Float::with_val(bits, (-t).acos()) / pi
    }

    /// Green's function with pole at infinity, `log|w + sqrt(w^2 - 1)|`
    /// on the standard segment.
    pub fn green(&self, z: &Complex) -> Float {
        let bits = self.bits().max(z.prec().0);
        let w = self.to_standard(z);
        let root = Complex::with_val(bits, &w - 1u32).sqrt() * Complex::with_val(bits, &w + 1u32).sqrt();
        let phi = Complex::with_val(bits, &w + root);
        let g = Float::with_val(bits, phi.abs_ref()).ln();
        if g.is_sign_negative() {
            Float::new(bits)
        } else {
            g
        }
    }

    /// `log(4 / (hi - lo))`, i.e. `-log` of the capacity.
    pub fn robin(&self) -> Float {
        let bits = self.bits();
        let width = Float::with_val(bits, &self.hi - &self.lo);
        (Float::with_val(bits, 4) / width).ln()
    }
}

/// Kolmogorov-Smirnov distance between the real parts of `zs` and the
/// arcsine law on `[-1, 1]`.
pub fn ks_arcsine(zs: &ZeroSet, tol: &Float) -> Result<Float> {
    if zs.is_empty() {
        return Err(Error::Precondition("empty zero set".into()));
    }
    let off: Vec<(f64, f64)> = zs
        .roots
        .iter()
        .filter(|z| Float::with_val(64, z.imag().abs_ref()) > *tol)
        .map(to_pair)
        .collect();
    if !off.is_empty() {
        return Err(Error::Precondition(format!("{} roots off the real axis, e.g. {:?}", off.len(), off[0])));
    }
    let bits = zs.roots.iter().map(|z| z.prec().0).max().unwrap_or(64);
    let model = EquilibriumModel::standard(bits);
    let mut xs: Vec<Float> = zs.roots.iter().map(|z| z.real().clone()).collect();
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len() as u32;
    let mut worst = Float::new(bits);
    for (i, x) in xs.iter().enumerate() {
        let f = model.cdf(x);
        let below = Float::with_val(bits, &f - Float::with_val(bits, i as u32) / n);
        let above = Float::with_val(bits, Float::with_val(bits, i as u32 + 1) / n - &f);
        for d in [below, above] {
            if d > worst {
                worst = d;
            }
        }
    }
    Ok(worst)
}

/// Roots outside their expected locus, keyed by polynomial index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngelescoReport {
    pub passed: [bool; 3],
    pub offenders: Vec<(usize, (f64, f64))>,
}

/// `q1` roots real and in `[-1, a]`, `q2` roots real and in `[-a, 1]`,
/// `q0` roots on the imaginary axis, each within `tol`.
pub fn angelesco_localization(zs: &[ZeroSet; 3], a: &Rational, tol: f64) -> Result<AngelescoReport> {
    if *a >= 0 {
        return Err(Error::Precondition(format!("segments overlap unless a < 0, got a = {a}")));
    }
    let af = a.to_f64();
    let mut offenders = Vec::new();
    let mut passed = [true; 3];
    for (j, set) in zs.iter().enumerate() {
        for &(x, y) in &set.points() {
            let ok = match j {
                0 => x.abs() <= tol,
                1 => y.abs() <= tol && x >= -1.0 - tol && x <= af + tol,
                _ => y.abs() <= tol && x >= -af - tol && x <= 1.0 + tol,
            };
            if !ok {
                passed[j] = false;
                offenders.push((j, (x, y)));
            }
        }
    }
    if !offenders.is_empty() {
        let list: Vec<String> = offenders.iter().map(|(j, (x, y))| format!("q{j}: {x:.6e}{y:+.6e}i")).collect();
        return Err(Error::Assertion(format!("roots off their segments: {}", list.join(", "))));
    }
    Ok(AngelescoReport { passed, offenders })
}

/// Least-squares slope of `ln(error)` against `n`. Errors at or below
/// `floor` mean the approximant is exact and no rate exists.
pub fn rate_fit(samples: &[(usize, Float)], floor: &Float) -> Result<f64> {
    if samples.len() < 6 {
        return Err(Error::Precondition(format!("need at least 6 samples, got {}", samples.len())));
    }
    if samples.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::Precondition("degrees must be consecutive".into()));
    }
    let mut pts = Vec::with_capacity(samples.len());
    for (n, e) in samples {
        if *e <= 0 || *e <= *floor {
            return Err(Error::InvalidParameter(format!("error at n = {n} is {}", fmt_float(e, 6))));
        }
        pts.push((*n as f64, Float::with_val(64, e.ln_ref()).to_f64()));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(sxy / sxx)
}

/// Fraction of roots with `|Im z| > threshold`.
pub fn lens_fraction(zs: &ZeroSet, threshold: f64) -> f64 {
    if zs.is_empty() {
        return 0.0;
    }
    zs.points().iter().filter(|p| p.1.abs() > threshold).count() as f64 / zs.len() as f64
}
