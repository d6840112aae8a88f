use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use hpzeros_ffi::*;

fn last_error() -> String {
    let p = hp_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { hp_string_free(p) };
    s
}

fn roots(z: *const HpZeros) -> Vec<(f64, f64)> {
    let n = unsafe { hp_zeros_len(z) };
    (0..n)
        .map(|k| {
            let (mut re, mut im) = (0.0, 0.0);
            assert_eq!(unsafe { hp_zeros_get(z, k, &mut re, &mut im) }, HpStatus::Ok);
            (re, im)
        })
        .collect()
}

#[test]
fn version_and_presets() {
    let v = unsafe { CStr::from_ptr(hp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    let count = hp_preset_count();
    assert_eq!(count, 72);
    for i in 0..count {
        assert!(!hp_preset_id(i).is_null());
    }
    assert!(hp_preset_id(count).is_null());
}

#[test]
fn polynomial_roots_round_trip() {
    // (z - 1)(z + 2)(z - 3i) = z^3 + (1 - 3i) z^2 + (-2 - 3i) z + 6i
    let re = [0.0, -2.0, 1.0, 1.0];
    let im = [6.0, -3.0, -3.0, 0.0];
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { hp_polynomial_new(re.as_ptr(), im.as_ptr(), 4, 256, &mut p) }, HpStatus::Ok);
    assert_eq!(unsafe { hp_polynomial_degree(p) }, 3);
    let mut z = ptr::null_mut();
    assert_eq!(unsafe { hp_polynomial_roots(p, 7, &mut z) }, HpStatus::Ok);
    let mut got = roots(z);
    got.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let want = [(-2.0, 0.0), (0.0, 3.0), (1.0, 0.0)];
    for (g, w) in got.iter().zip(want) {
        assert!((g.0 - w.0).abs() < 1e-14 && (g.1 - w.1).abs() < 1e-14, "{g:?} vs {w:?}");
    }
    assert!(!unsafe { hp_zeros_is_multiple(z, 0) });
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { hp_zeros_json(z, &mut json) }, HpStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(doc["count"], 3);
    unsafe {
        hp_zeros_free(z);
        hp_polynomial_free(p);
    }
}

#[test]
fn real_input_without_imaginary_part() {
    let re = [-1.0, 0.0, 1.0];
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { hp_polynomial_new(re.as_ptr(), ptr::null(), 3, 0, &mut p) }, HpStatus::Ok);
    let mut z = ptr::null_mut();
    assert_eq!(unsafe { hp_polynomial_roots(p, 0, &mut z) }, HpStatus::Ok);
    let mut got: Vec<f64> = roots(z).iter().map(|r| r.0).collect();
    got.sort_by(f64::total_cmp);
    assert_eq!(got, vec![-1.0, 1.0]);
    unsafe {
        hp_zeros_free(z);
        hp_polynomial_free(p);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { hp_polynomial_new(ptr::null(), ptr::null(), 2, 0, &mut p) }, HpStatus::NullPointer);
    assert!(last_error().contains("re"));

    let re = [1.0, f64::NAN];
    assert_eq!(unsafe { hp_polynomial_new(re.as_ptr(), ptr::null(), 2, 0, &mut p) }, HpStatus::InvalidArgument);
    assert!(last_error().contains("not finite"));

    let re = [1.0, 1.0];
    assert_eq!(unsafe { hp_polynomial_new(re.as_ptr(), ptr::null(), 2, 64, &mut p) }, HpStatus::InvalidArgument);
    assert!(last_error().contains("64"));

    let re = [5.0];
    assert_eq!(unsafe { hp_polynomial_new(re.as_ptr(), ptr::null(), 1, 0, &mut p) }, HpStatus::Ok);
    let mut z = ptr::null_mut();
    assert_eq!(unsafe { hp_polynomial_roots(p, 0, &mut z) }, HpStatus::InvalidArgument);
    assert!(z.is_null());
    unsafe { hp_polynomial_free(p) };

    let id = CString::new("no-such-figure").unwrap();
    let mut run = ptr::null_mut();
    assert_eq!(unsafe { hp_run_preset(id.as_ptr(), -1, 0, 0, &mut run) }, HpStatus::InvalidArgument);
    assert!(last_error().contains("no-such-figure"));
    assert_eq!(unsafe { hp_run_preset(ptr::null(), -1, 0, 0, &mut run) }, HpStatus::NullPointer);

    let a = CString::new("0.2").unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { hp_hermite_pade_case(4, a.as_ptr(), 3, 0, &mut t) }, HpStatus::InvalidArgument);
    let bad = CString::new("two").unwrap();
    assert_eq!(unsafe { hp_hermite_pade_case(1, bad.as_ptr(), 3, 0, &mut t) }, HpStatus::InvalidArgument);
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        hp_run_free(ptr::null_mut());
        hp_zeros_free(ptr::null_mut());
        hp_polynomial_free(ptr::null_mut());
        hp_hermite_pade_free(ptr::null_mut());
        hp_string_free(ptr::null_mut());
        assert_eq!(hp_zeros_len(ptr::null()), 0);
        assert_eq!(hp_run_set_count(ptr::null()), 0);
        assert!(hp_hermite_pade_residual(ptr::null()).is_nan());
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(hp_zeros_get(ptr::null(), 0, &mut re, &mut im), HpStatus::NullPointer);
    }
}

#[test]
fn hermite_pade_case1_reflection() {
    let a = CString::new("1/5").unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { hp_hermite_pade_case(1, a.as_ptr(), 6, 0, &mut t) }, HpStatus::Ok);
    assert_eq!(unsafe { hp_hermite_pade_degree(t) }, 6);
    assert!(unsafe { hp_hermite_pade_residual(t) } < 1e-100);

    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { hp_hermite_pade_coeff(t, 3, 0, &mut re, &mut im) }, HpStatus::OutOfRange);
    assert_eq!(unsafe { hp_hermite_pade_coeff(t, 0, 7, &mut re, &mut im) }, HpStatus::OutOfRange);
    assert_eq!(unsafe { hp_hermite_pade_coeff(t, 0, 6, &mut re, &mut im) }, HpStatus::Ok);

    // Zeros of q2 are the negatives of the zeros of q1.
    let zeros = |j| {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { hp_hermite_pade_polynomial(t, j, &mut p) }, HpStatus::Ok);
        let mut z = ptr::null_mut();
        assert_eq!(unsafe { hp_polynomial_roots(p, 0, &mut z) }, HpStatus::Ok);
        let mut r: Vec<f64> = roots(z).iter().map(|r| r.0).collect();
        unsafe {
            hp_zeros_free(z);
            hp_polynomial_free(p);
        }
        r.sort_by(f64::total_cmp);
        r
    };
    let z1 = zeros(1);
    let mut z2: Vec<f64> = zeros(2).iter().map(|x| -x).collect();
    z2.sort_by(f64::total_cmp);
    assert_eq!(z1.len(), 6);
    for (x, y) in z1.iter().zip(&z2) {
        assert!((x - y).abs() < 1e-12);
        assert!((-1.0..=0.2).contains(x));
    }

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { hp_hermite_pade_json(t, &mut json) }, HpStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(doc["degree"], 6);
    unsafe { hp_hermite_pade_free(t) };
}

#[test]
fn preset_run_matches_library() {
    let id = hp_preset_id(0);
    let name = unsafe { CStr::from_ptr(id) }.to_str().unwrap().to_owned();
    let mut run = ptr::null_mut();
    assert_eq!(unsafe { hp_run_preset(id, 8, 0, 0, &mut run) }, HpStatus::Ok);
    assert_eq!(unsafe { hp_run_degree(run) }, 8);

    let preset = hpzeros::cli::presets::find(&name).unwrap();
    let cfg = hpzeros::cli::RunConfig { n: Some(8), ..Default::default() };
    let lib = hpzeros::cli::run_preset(&preset, &cfg).unwrap();
    let sets = lib.view_sets();
    assert_eq!(unsafe { hp_run_set_count(run) }, sets.len());
    assert_eq!(unsafe { hp_run_failure_count(run) }, lib.failures().len());
    for (i, s) in sets.iter().enumerate() {
        let mut z = ptr::null_mut();
        assert_eq!(unsafe { hp_run_set(run, i, &mut z) }, HpStatus::Ok);
        assert_eq!(roots(z), s.points());
        unsafe { hp_zeros_free(z) };
    }
    let mut z = ptr::null_mut();
    assert_eq!(unsafe { hp_run_set(run, sets.len(), &mut z) }, HpStatus::OutOfRange);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { hp_run_report_json(run, &mut json) }, HpStatus::Ok);
    let text = take_string(json);
    assert_eq!(text, lib.render(hpzeros::cli::Format::Json).unwrap());
    unsafe { hp_run_free(run) };
}

#[test]
fn errors_are_per_thread() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { hp_polynomial_new(ptr::null(), ptr::null(), 1, 0, &mut p) }, HpStatus::NullPointer);
    let other = std::thread::spawn(|| hp_last_error_message().is_null()).join().unwrap();
    assert!(other);
    assert!(!hp_last_error_message().is_null());
}

#[test]
fn header_declares_every_export() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/hpzeros.h")).unwrap();
    let src = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() > 20);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    for handle in ["HpRun", "HpZeros", "HpPolynomial", "HpHermitePade"] {
        assert!(header.contains(&format!("typedef struct {handle} {handle};")));
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let out = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(dir.join("hpzeros.h"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}
