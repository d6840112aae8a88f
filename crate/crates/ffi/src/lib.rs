//! C interface to `hpzeros`.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every fallible call returns an
//! `HpStatus`; on failure the message is available from
//! `hp_last_error_message` on the same thread until the next failing call.
//! Strings returned as `char *` are owned by the caller and released with
//! `hp_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use hpzeros::cli::{self, presets, PresetRun, RunConfig};
use hpzeros::germs::FunctionSpec;
use hpzeros::hermite_pade::{hp_solve, HpTriple};
use hpzeros::numerics::{default_bits, parse_rational, Complex, Polynomial, PrecisionContext};
use hpzeros::roots::{find_roots, ZeroSet};
use hpzeros::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    NonGeneric = 4,
    Numerical = 5,
    Io = 6,
    Panic = 7,
}

/// Result of a figure preset run.
pub struct HpRun(PresetRun);

/// Roots of one polynomial.
pub struct HpZeros(ZeroSet);

/// Polynomial with complex multiprecision coefficients.
pub struct HpPolynomial(Polynomial);

/// Type I Hermite-Padé triple `(q0, q1, q2)`.
pub struct HpHermitePade(HpTriple);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> HpStatus {
    match e {
        Error::InvalidPrecision(_)
        | Error::InvalidTolerance
        | Error::CenterMismatch
        | Error::LeadingCoefficient
        | Error::InvalidParameter(_)
        | Error::BranchPointAtCenter(_)
        | Error::ExponentSum(_)
        | Error::InsufficientLength { .. }
        | Error::DegreeTooLow
        | Error::Precondition(_)
        | Error::Parse(_) => HpStatus::InvalidArgument,
        Error::NonGeneric { .. } => HpStatus::NonGeneric,
        Error::ResidualTooLarge { .. }
        | Error::PrecisionExhausted { .. }
        | Error::NoConvergence { .. }
        | Error::ProbeOnPole
        | Error::Assertion(_) => HpStatus::Numerical,
        Error::Io(_) | Error::Json(_) => HpStatus::Io,
    }
}

/// Runs `f`, records its error and converts panics.
fn guard(f: impl FnOnce() -> Result<(), (HpStatus, String)>) -> HpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HpStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HpStatus::Panic
        }
    }
}

fn lib<T>(r: hpzeros::Result<T>) -> Result<T, (HpStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (HpStatus, String) {
    (HpStatus::NullPointer, format!("{what} is null"))
}

fn range(what: &str, i: usize, len: usize) -> (HpStatus, String) {
    (HpStatus::OutOfRange, format!("{what} {i} out of range 0..{len}"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, (HpStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (HpStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (HpStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), (HpStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nuls removed").into_raw()
}

unsafe fn write_complex(z: &Complex, re: *mut f64, im: *mut f64) -> Result<(), (HpStatus, String)> {
    if re.is_null() || im.is_null() {
        return Err(null("re/im"));
    }
    *re = z.real().to_f64();
    *im = z.imag().to_f64();
    Ok(())
}

fn context(bits: u32, n: usize, seed: u64) -> Result<PrecisionContext, (HpStatus, String)> {
    let bits = if bits == 0 { default_bits(n) } else { bits };
    Ok(lib(PrecisionContext::new(bits))?.with_seed(seed))
}

/// Message of the last failing call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hp_version() -> *const c_char {
    static V: OnceLock<CString> = OnceLock::new();
    V.get_or_init(|| CString::new(env!("CARGO_PKG_VERSION")).unwrap()).as_ptr()
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn preset_ids() -> &'static [CString] {
    static IDS: OnceLock<Vec<CString>> = OnceLock::new();
    IDS.get_or_init(|| presets::all().into_iter().map(|p| CString::new(p.id).unwrap()).collect())
}

/// Number of figure presets.
#[no_mangle]
pub extern "C" fn hp_preset_count() -> usize {
    preset_ids().len()
}

/// Id of preset `i` as a static string, or null when out of range.
#[no_mangle]
pub extern "C" fn hp_preset_id(i: usize) -> *const c_char {
    preset_ids().get(i).map_or(ptr::null(), |s| s.as_ptr())
}

/// Runs preset `id`. `n < 0` keeps the preset degree and `bits == 0` the
/// default precision.
#[no_mangle]
pub unsafe extern "C" fn hp_run_preset(id: *const c_char, n: i64, bits: u32, seed: u64, out: *mut *mut HpRun) -> HpStatus {
    guard(|| {
        let id = text(id, "id")?;
        let preset = presets::find(id).ok_or((HpStatus::InvalidArgument, format!("unknown preset {id}")))?;
        let cfg = RunConfig {
            n: usize::try_from(n).ok(),
            bits: (bits != 0).then_some(bits),
            seed,
            ..RunConfig::default()
        };
        let run = lib(cli::run_preset(&preset, &cfg))?;
        put(out, HpRun(run))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hp_run_free(run: *mut HpRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// Degree actually used by the run, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn hp_run_degree(run: *const HpRun) -> usize {
    run.as_ref().map_or(0, |r| r.0.n)
}

/// Number of hard checks that failed, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn hp_run_failure_count(run: *const HpRun) -> usize {
    run.as_ref().map_or(0, |r| r.0.failures().len())
}

/// Number of zero sets the preset displays.
#[no_mangle]
pub unsafe extern "C" fn hp_run_set_count(run: *const HpRun) -> usize {
    run.as_ref().map_or(0, |r| r.0.view_sets().len())
}

/// Copies displayed zero set `i` into a new handle.
#[no_mangle]
pub unsafe extern "C" fn hp_run_set(run: *const HpRun, i: usize, out: *mut *mut HpZeros) -> HpStatus {
    guard(|| {
        let run = borrow(run, "run")?;
        let sets = run.0.view_sets();
        let set = sets.get(i).ok_or_else(|| range("set", i, sets.len()))?;
        put(out, HpZeros((*set).clone()))
    })
}

/// Full JSON report of the run.
#[no_mangle]
pub unsafe extern "C" fn hp_run_report_json(run: *const HpRun, out: *mut *mut c_char) -> HpStatus {
    guard(|| {
        let run = borrow(run, "run")?;
        let s = lib(run.0.render(cli::Format::Json))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = owned_string(s);
        Ok(())
    })
}

/// Polynomial from `len` ascending coefficients given as separate real and
/// imaginary parts. `im` may be null for real input. `bits == 0` picks the
/// default for the degree.
#[no_mangle]
pub unsafe extern "C" fn hp_polynomial_new(
    re: *const f64,
    im: *const f64,
    len: usize,
    bits: u32,
    out: *mut *mut HpPolynomial,
) -> HpStatus {
    guard(|| {
        if re.is_null() {
            return Err(null("re"));
        }
        let bits = context(bits, len.saturating_sub(1), 0)?.bits();
        let re = std::slice::from_raw_parts(re, len);
        let im = if im.is_null() { None } else { Some(std::slice::from_raw_parts(im, len)) };
        let coeffs = (0..len)
            .map(|k| {
                let (x, y) = (re[k], im.map_or(0.0, |v| v[k]));
                if !x.is_finite() || !y.is_finite() {
                    return Err((HpStatus::InvalidArgument, format!("coefficient {k} is not finite")));
                }
                Ok(Complex::with_val(bits, (x, y)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        put(out, HpPolynomial(Polynomial::new(coeffs, bits)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hp_polynomial_free(p: *mut HpPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree after trimming zero leading coefficients.
#[no_mangle]
pub unsafe extern "C" fn hp_polynomial_degree(p: *const HpPolynomial) -> usize {
    p.as_ref().map_or(0, |p| p.0.degree())
}

/// All roots of `p` with multiplicity at the polynomial's precision.
#[no_mangle]
pub unsafe extern "C" fn hp_polynomial_roots(p: *const HpPolynomial, seed: u64, out: *mut *mut HpZeros) -> HpStatus {
    guard(|| {
        let p = borrow(p, "polynomial")?;
        let ctx = lib(PrecisionContext::new(p.0.bits()))?.with_seed(seed);
        let zs = lib(find_roots(&p.0, &ctx))?;
        put(out, HpZeros(zs))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hp_zeros_free(z: *mut HpZeros) {
    if !z.is_null() {
        drop(Box::from_raw(z));
    }
}

/// Number of roots, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn hp_zeros_len(z: *const HpZeros) -> usize {
    z.as_ref().map_or(0, |z| z.0.len())
}

/// Root `k` rounded to doubles.
#[no_mangle]
pub unsafe extern "C" fn hp_zeros_get(z: *const HpZeros, k: usize, re: *mut f64, im: *mut f64) -> HpStatus {
    guard(|| {
        let z = borrow(z, "zeros")?;
        let root = z.0.roots.get(k).ok_or_else(|| range("root", k, z.0.len()))?;
        write_complex(root, re, im)
    })
}

/// Whether root `k` was flagged as part of a cluster; false when out of
/// range.
#[no_mangle]
pub unsafe extern "C" fn hp_zeros_is_multiple(z: *const HpZeros, k: usize) -> bool {
    z.as_ref().and_then(|z| z.0.multiplicity_flags.get(k).copied()).unwrap_or(false)
}

/// JSON document of the zero set with roots at full precision.
#[no_mangle]
pub unsafe extern "C" fn hp_zeros_json(z: *const HpZeros, out: *mut *mut c_char) -> HpStatus {
    guard(|| {
        let z = borrow(z, "zeros")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = owned_string(z.0.to_json().to_string());
        Ok(())
    })
}

/// Type I triple of degree `n` for the two-segment functions of Case
/// `case` (1, 2 or 3) with parameter `a` given as a decimal or `p/q`
/// string.
#[no_mangle]
pub unsafe extern "C" fn hp_hermite_pade_case(
    case: u8,
    a: *const c_char,
    n: usize,
    bits: u32,
    out: *mut *mut HpHermitePade,
) -> HpStatus {
    guard(|| {
        let a = lib(parse_rational(text(a, "a")?))?;
        let f1 = lib(FunctionSpec::case(case, a.clone(), 1))?;
        let f2 = lib(FunctionSpec::case(case, a, 2))?;
        let ctx = context(bits, n, 0)?;
        let t = lib(hp_solve(&f1, &f2, n, &ctx))?;
        put(out, HpHermitePade(t))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hp_hermite_pade_free(t: *mut HpHermitePade) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Degree `n` of the triple.
#[no_mangle]
pub unsafe extern "C" fn hp_hermite_pade_degree(t: *const HpHermitePade) -> usize {
    t.as_ref().map_or(0, |t| t.0.n)
}

/// Largest residual coefficient of the remainder window, as a double.
#[no_mangle]
pub unsafe extern "C" fn hp_hermite_pade_residual(t: *const HpHermitePade) -> f64 {
    t.as_ref().map_or(f64::NAN, |t| t.0.residual.to_f64())
}

/// Coefficient of `z^k` in `q_j`, `j` in 0..3 and `k` in 0..=n.
#[no_mangle]
pub unsafe extern "C" fn hp_hermite_pade_coeff(
    t: *const HpHermitePade,
    j: usize,
    k: usize,
    re: *mut f64,
    im: *mut f64,
) -> HpStatus {
    guard(|| {
        let t = borrow(t, "triple")?;
        let p = t.0.q.get(j).ok_or_else(|| range("polynomial", j, 3))?;
        if k > t.0.n {
            return Err(range("coefficient", k, t.0.n + 1));
        }
        write_complex(&p.coeff(k), re, im)
    })
}

/// Copies `q_j` into a polynomial handle at the triple's precision.
#[no_mangle]
pub unsafe extern "C" fn hp_hermite_pade_polynomial(
    t: *const HpHermitePade,
    j: usize,
    out: *mut *mut HpPolynomial,
) -> HpStatus {
    guard(|| {
        let t = borrow(t, "triple")?;
        let p = t.0.q.get(j).ok_or_else(|| range("polynomial", j, 3))?;
        put(out, HpPolynomial(p.clone()))
    })
}

/// JSON document of the triple with coefficients at full precision.
#[no_mangle]
pub unsafe extern "C" fn hp_hermite_pade_json(t: *const HpHermitePade, out: *mut *mut c_char) -> HpStatus {
    guard(|| {
        let t = borrow(t, "triple")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = owned_string(t.0.to_json().to_string());
        Ok(())
    })
}
