//! Independent jobs fanned out over a fixed pool of threads. Results come
//! back in input order regardless of scheduling.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rug::Rational;
use serde::Serialize;

use super::{presets, run_and_write, Format, RunConfig};
use crate::analysis::lens_fraction;
use crate::error::{Error, Result};
use crate::germs::FunctionSpec;
use crate::hermite_pade::hp_solve;
use crate::numerics::{rational_to_string, PrecisionContext};
use crate::roots::find_roots;

/// Applies `job` to every item on `workers` threads.
pub fn parallel_map<T: Sync, R: Send>(items: &[T], workers: usize, job: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers.clamp(1, items.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                let r = job(&items[i]);
                slots.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("no worker panicked").into_iter().map(|r| r.expect("every slot filled")).collect()
}

/// Outcome of one preset in a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepEntry {
    pub id: String,
    pub ok: bool,
    pub message: String,
}

/// Presets whose id equals `pattern` or starts with `pattern_`; `all`
/// selects everything.
pub fn select(pattern: &str) -> Vec<String> {
    presets::all()
        .into_iter()
        .map(|p| p.id)
        .filter(|id| pattern == "all" || id == pattern || id.starts_with(&format!("{pattern}_")))
        .collect()
}

/// Runs presets in parallel, each into its own `out/<id>` directory.
pub fn sweep_presets(ids: &[String], cfg: &RunConfig, out: &Path, formats: &[Format], workers: usize) -> Vec<SweepEntry> {
    parallel_map(ids, workers, |id| {
        let dir = out.join(id);
        match run_and_write(id, cfg, &dir, formats) {
            Ok(run) => {
                let failed: Vec<String> = run.failures().iter().map(|c| c.name.clone()).collect();
                SweepEntry {
                    id: id.clone(),
                    ok: failed.is_empty(),
                    message: if failed.is_empty() { "ok".into() } else { format!("failed: {}", failed.join(", ")) },
                }
            }
            Err(e) => SweepEntry { id: id.clone(), ok: false, message: e.to_string() },
        }
    })
}

/// Share of `q2` roots off the real axis for a range of `a`.
#[derive(Debug, Clone, Serialize)]
pub struct LensPoint {
    pub a: String,
    pub fraction: Option<f64>,
    pub error: Option<String>,
}

pub fn lens_sweep(case: u8, values: &[Rational], n: usize, bits: u32, workers: usize) -> Result<Vec<LensPoint>> {
    if !(1..=3).contains(&case) {
        return Err(Error::InvalidParameter(format!("case {case} is not 1, 2 or 3")));
    }
    let ctx = PrecisionContext::new(bits)?;
    Ok(parallel_map(values, workers, |a| {
        let run = || -> Result<f64> {
            let f1 = FunctionSpec::case(case, a.clone(), 1)?;
            let f2 = FunctionSpec::case(case, a.clone(), 2)?;
            let t = hp_solve(&f1, &f2, n, &ctx)?;
            Ok(lens_fraction(&find_roots(t.q2(), &ctx)?, 0.05))
        };
        match run() {
            Ok(f) => LensPoint { a: rational_to_string(a), fraction: Some(f), error: None },
            Err(e) => LensPoint { a: rational_to_string(a), fraction: None, error: Some(e.to_string()) },
        }
    }))
}
