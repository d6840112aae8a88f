//! Library side of the command-line tool: figure presets, their reports and
//! the files written for them.

pub mod export;
pub mod presets;
pub mod svg;
pub mod sweep;

use std::fs;
use std::path::{Path, PathBuf};

use rug::{Complex, Float, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{
    angelesco_localization, chebotarev_candidates, check_conjugate_symmetry, check_reflection_pairing,
    detect_froissart, lens_fraction, FroissartOptions, SymmetryReport,
};
use crate::error::{Error, Result};
use crate::germs::FunctionSpec;
use crate::hermite_pade::hp_solve;
use crate::numerics::{complex_strings, default_bits, fmt_float, parse_rational, PrecisionContext};
use crate::pade::pade_solve;
use crate::roots::{find_roots, ZeroSet};
use crate::twopoint::twopoint_solve;

pub use presets::{Preset, Problem};
use svg::Window;

/// Environment variable that replaces the default precision.
pub const BITS_ENV: &str = "HP_BITS";

/// Output file kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Csv, Format::Json, Format::Svg];

    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }
}

/// Overrides applied to a preset run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub bits: Option<u32>,
    pub seed: u64,
    pub froissart: FroissartOptions,
}

/// Precision for degree `n`: explicit value, then `HP_BITS`, then the
/// default policy.
pub fn resolve_bits(explicit: Option<u32>, n: usize) -> Result<u32> {
    if let Some(b) = explicit {
        return Ok(b);
    }
    match std::env::var(BITS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{BITS_ENV}={v} is not a bit count"))),
        Err(_) => Ok(default_bits(n)),
    }
}

/// A named check inside a report. `passed` is `None` for report-only
/// checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: Option<bool>,
    pub detail: Value,
}

impl Check {
    fn hard(name: &str, passed: bool, detail: Value) -> Self {
        Self { name: name.into(), passed: Some(passed), detail }
    }

    fn info(name: &str, detail: Value) -> Self {
        Self { name: name.into(), passed: None, detail }
    }
}

/// Everything computed for one preset.
#[derive(Debug, Clone)]
pub struct PresetRun {
    pub preset: Preset,
    pub n: usize,
    pub bits: u32,
    /// All zero sets in [`Problem::labels`] order.
    pub sets: Vec<ZeroSet>,
    pub checks: Vec<Check>,
    /// Coefficients and residuals of the solve.
    pub solution: Value,
}

impl PresetRun {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.passed == Some(false)).collect()
    }

    pub fn metadata(&self) -> Vec<(String, String)> {
        vec![
            ("preset".into(), self.preset.id.clone()),
            ("title".into(), self.preset.title.clone()),
            ("n".into(), self.n.to_string()),
            ("bits".into(), self.bits.to_string()),
            ("sets".into(), self.view_sets().iter().map(|s| s.label.as_str()).collect::<Vec<_>>().join(" ")),
        ]
    }

    pub fn view_sets(&self) -> Vec<&ZeroSet> {
        self.preset.view.iter().map(|&i| &self.sets[i]).collect()
    }

    pub fn report_json(&self) -> Value {
        let meta: serde_json::Map<String, Value> =
            self.metadata().into_iter().map(|(k, v)| (k, Value::String(v))).collect();
        json!({
            "schema": 1,
            "metadata": meta,
            "problem": self.preset.problem,
            "checks": self.checks,
            "solution": self.solution,
            "sets": self.view_sets().iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => export::to_csv(&self.view_sets(), &self.metadata()),
            Format::Json => Ok(serde_json::to_string_pretty(&self.report_json())? + "\n"),
            Format::Svg => {
                let sets = self.view_sets();
                let pts: Vec<(f64, f64)> = sets.iter().flat_map(|s| s.points()).collect();
                let caption = format!("{}: {} (n={})", self.preset.id, self.preset.title, self.n);
                Ok(svg::render_svg(&sets, &Window::fit(&pts), &caption, &self.metadata()))
            }
        }
    }

    /// Writes `<id>.<ext>` files under `dir`.
    pub fn write(&self, dir: &Path, formats: &[Format]) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        for &f in formats {
            let path = dir.join(format!("{}.{}", self.preset.id, f.extension()));
            fs::write(&path, self.render(f)?)?;
            paths.push(path);
        }
        Ok(paths)
    }
}

fn symmetry_json(r: &SymmetryReport) -> Value {
    serde_json::to_value(r).expect("plain data serializes")
}

fn labeled(zs: ZeroSet, label: &str) -> ZeroSet {
    zs.with_label(label)
}

fn roots_of(p: &crate::numerics::Polynomial, ctx: &PrecisionContext, label: &str) -> Result<ZeroSet> {
    match find_roots(p, ctx) {
        Ok(z) => Ok(labeled(z, label)),
        Err(Error::DegreeTooLow) => Ok(ZeroSet::new(label, Vec::new())),
        Err(e) => Err(e),
    }
}

fn points(f: &FunctionSpec, bits: u32) -> Vec<Complex> {
    f.singular_points().iter().map(|p| p.to_complex(bits)).collect()
}

/// Solves, extracts zero sets and evaluates the checks of a preset.
pub fn run_preset(preset: &Preset, cfg: &RunConfig) -> Result<PresetRun> {
    let n = cfg.n.unwrap_or(preset.n);
    let bits = resolve_bits(cfg.bits, n)?;
    let ctx = PrecisionContext::new(bits)?.with_seed(cfg.seed);
    let sym_tol = ctx.root_tol();
    let mut checks = Vec::new();
    let solution;
    let sets = match &preset.problem {
        Problem::HermitePade { case, a, f1, f2 } => {
            let t = hp_solve(f1, f2, n, &ctx)?;
            solution = t.to_json();
            checks.push(Check::info("residual", json!(fmt_float(&t.residual, 6))));
            let labels = preset.problem.labels();
            let sets: Vec<ZeroSet> =
                t.q.iter().zip(labels).map(|(p, l)| roots_of(p, &ctx, l)).collect::<Result<_>>()?;
            for s in &sets {
                let r = check_conjugate_symmetry(s, &sym_tol);
                checks.push(Check::hard(&format!("conjugate_symmetry_{}", s.label), r.ok, symmetry_json(&r)));
            }
            let refl = check_reflection_pairing(&sets[1], &sets[2], &Float::with_val(64, 1e-10));
            match refl {
                Ok(r) if *case == 1 => checks.push(Check::hard("reflection_q1_q2", r.ok, symmetry_json(&r))),
                Ok(r) => checks.push(Check::info("reflection_q1_q2", symmetry_json(&r))),
                Err(e) => checks.push(Check::info("reflection_q1_q2", json!(e.to_string()))),
            }
            let a_q: Rational = parse_rational(a)?;
            if a_q < 0 {
                let arr = [sets[0].clone(), sets[1].clone(), sets[2].clone()];
                match angelesco_localization(&arr, &a_q, 1e-6) {
                    Ok(r) => checks.push(Check::hard("angelesco", true, serde_json::to_value(r)?)),
                    Err(e) => checks.push(Check::hard("angelesco", false, json!(e.to_string()))),
                }
            }
            checks.push(Check::info("lens_fraction_q2", json!(lens_fraction(&sets[2], 0.05))));
            sets
        }
        Problem::Pade { f, genus, junctions } => {
            let pair = pade_solve(f, n, &ctx)?;
            solution = pair.to_json();
            checks.push(Check::info("residual", json!(fmt_float(&pair.residual, 6))));
            let zeros = roots_of(&pair.p0, &ctx, "zeros")?;
            let poles = roots_of(&pair.p1, &ctx, "poles")?;
            let bp = points(f, bits);
            let rep = detect_froissart(&zeros, &poles, &bp, *genus, cfg.froissart);
            checks.push(Check::hard("froissart_within_genus", rep.within_bound(), rep.to_json()));
            if *junctions {
                let detail = match chebotarev_candidates(&poles, &bp, 5) {
                    Ok(c) => json!(c.iter().map(|z| complex_strings(z, 12)).collect::<Vec<_>>()),
                    Err(e) => json!(e.to_string()),
                };
                checks.push(Check::info("chebotarev_candidates", detail));
            }
            vec![zeros, poles]
        }
        Problem::TwoPoint { f0, f_inf, split, genus } => {
            let pair = twopoint_solve(f0, f_inf, n, *split, &ctx)?;
            solution = pair.to_json();
            checks.push(Check::info(
                "residuals",
                json!({"origin": fmt_float(&pair.residual0, 6), "infinity": fmt_float(&pair.residual_inf, 6)}),
            ));
            let zeros = roots_of(&pair.p, &ctx, "zeros")?;
            let poles = roots_of(&pair.q, &ctx, "poles")?;
            if f0.is_real() && f_inf.is_real() {
                for s in [&zeros, &poles] {
                    let r = check_conjugate_symmetry(s, &sym_tol);
                    checks.push(Check::hard(&format!("conjugate_symmetry_{}", s.label), r.ok, symmetry_json(&r)));
                }
            }
            let mut bp = points(f0, bits);
            bp.extend(points(f_inf, bits));
            let rep = detect_froissart(&zeros, &poles, &bp, *genus, cfg.froissart);
            checks.push(Check::info("froissart", rep.to_json()));
            vec![zeros, poles]
        }
    };
    Ok(PresetRun { preset: preset.clone(), n, bits, sets, checks, solution })
}

/// Runs a preset by id and writes its files into `dir`.
pub fn run_and_write(id: &str, cfg: &RunConfig, dir: &Path, formats: &[Format]) -> Result<PresetRun> {
    let preset = presets::find(id).ok_or_else(|| Error::InvalidParameter(format!("unknown preset {id}")))?;
    let run = run_preset(&preset, cfg)?;
    run.write(dir, formats)?;
    Ok(run)
}
