use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use inflator_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> serde_json::Value {
    let v = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
    inflator_string_free(s);
    v
}

unsafe fn last_error() -> String {
    let p = inflator_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn evaluate_and_membership() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            inflator_new(c("valuation-0").as_ptr(), &mut h),
            InflatorStatus::Ok
        );
        let mut d = 0;
        assert_eq!(inflator_degree(h, &mut d), InflatorStatus::Ok);
        assert_eq!(d, 1);

        let mut out = ptr::null_mut();
        let v = c(r#"{"field": "Qt", "ambient": 2, "rows": [["1", "t"]]}"#);
        assert_eq!(
            inflator_evaluate(h, v.as_ptr(), &mut out),
            InflatorStatus::Ok
        );
        let j = take(out);
        assert_eq!(j["length"], 1);
        assert_eq!(
            j["element"]["parts"][0]["rows"],
            serde_json::json!([["1", "0"]])
        );

        assert_eq!(
            inflator_membership(h, c("t/(t+1)").as_ptr(), &mut out),
            InflatorStatus::Ok
        );
        let j = take(out);
        assert_eq!(
            (j["in_R"].as_bool(), j["in_I"].as_bool()),
            (Some(true), Some(true))
        );
        inflator_free(h);
    }
}

#[test]
fn spec_json_and_mutation() {
    unsafe {
        let spec = serde_json::to_string(&inflator_core::inflators::catalog::fiona()).unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(inflator_new(c(&spec).as_ptr(), &mut h), InflatorStatus::Ok);
        let mut g = ptr::null_mut();
        assert_eq!(
            inflator_mutate(h, c("1, i").as_ptr(), &mut g),
            InflatorStatus::Ok
        );
        let mut out = ptr::null_mut();
        assert_eq!(
            inflator_membership(g, c("2/3+5i").as_ptr(), &mut out),
            InflatorStatus::Ok
        );
        assert_eq!(take(out)["in_R"], true);

        let mut passed = false;
        assert_eq!(
            inflator_check_morphism(g, 20, 1, 2, &mut out, &mut passed),
            InflatorStatus::Ok
        );
        assert!(passed);
        take(out);
        inflator_free(g);
        inflator_free(h);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            inflator_new(c("{\"type\": \"nope\"}").as_ptr(), &mut h),
            InflatorStatus::Parse
        );
        assert!(h.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(
            inflator_new(ptr::null(), &mut h),
            InflatorStatus::NullPointer
        );
        assert_eq!(
            inflator_degree(ptr::null(), &mut 0),
            InflatorStatus::NullPointer
        );

        assert_eq!(
            inflator_new(c("valuation-0").as_ptr(), &mut h),
            InflatorStatus::Ok
        );
        assert!(inflator_last_error().is_null());
        let mut out = ptr::null_mut();
        let qi = c(r#"{"field": "Qi", "ambient": 1, "rows": [["i"]]}"#);
        assert_eq!(
            inflator_evaluate(h, qi.as_ptr(), &mut out),
            InflatorStatus::Domain
        );
        assert_eq!(
            inflator_mutate(h, c("1,t").as_ptr(), ptr::null_mut()),
            InflatorStatus::NullPointer
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            inflator_membership(h, bad.as_ptr().cast(), &mut out),
            InflatorStatus::InvalidUtf8
        );
        inflator_free(h);
        inflator_free(ptr::null_mut());

        let mut passed = false;
        assert_eq!(
            inflator_suite(c("nope").as_ptr(), 1, 1, &mut out, &mut passed),
            InflatorStatus::Unknown
        );
        assert_eq!(
            inflator_repro(c("nope").as_ptr(), 1, 1, &mut out, &mut passed),
            InflatorStatus::Unknown
        );
    }
}

#[test]
fn lattices() {
    unsafe {
        let mut l = ptr::null_mut();
        let n5 = c(r#"{"elements": 5, "covers": [[0,1],[1,2],[2,4],[0,3],[3,4]]}"#);
        assert_eq!(
            inflator_lattice_new(n5.as_ptr(), &mut l),
            InflatorStatus::Ok
        );
        let mut modular = true;
        assert_eq!(
            inflator_lattice_is_modular(l, &mut modular),
            InflatorStatus::Ok
        );
        assert!(!modular);
        let (mut r0, mut rb) = (0, 0);
        assert_eq!(
            inflator_lattice_rank(l, &mut r0, &mut rb),
            InflatorStatus::NotModular
        );
        inflator_lattice_free(l);

        let vee = c(r#"{"elements": 3, "covers": [[0,1],[0,2]]}"#);
        assert_eq!(
            inflator_lattice_new(vee.as_ptr(), &mut l),
            InflatorStatus::NotALattice
        );

        let m3 = c(r#"{"elements": 5, "covers": [[0,1],[0,2],[0,3],[1,4],[2,4],[3,4]]}"#);
        assert_eq!(
            inflator_lattice_new(m3.as_ptr(), &mut l),
            InflatorStatus::Ok
        );
        assert_eq!(
            inflator_lattice_rank(l, &mut r0, &mut rb),
            InflatorStatus::Ok
        );
        assert_eq!((r0, rb), (2, 2));
        let mut out = ptr::null_mut();
        assert_eq!(inflator_lattice_flatten(l, &mut out), InflatorStatus::Ok);
        assert_eq!(take(out)["socle"], 4);
        inflator_lattice_free(l);
    }
}

#[test]
fn repro_and_suite() {
    unsafe {
        let mut out = ptr::null_mut();
        let mut passed = false;
        assert_eq!(
            inflator_repro(
                c("mut-gerald").as_ptr(),
                20240601,
                20,
                &mut out,
                &mut passed
            ),
            InflatorStatus::Ok
        );
        assert!(passed);
        assert!(take(out)["source"].is_string());
        assert_eq!(
            inflator_suite(c("hahn").as_ptr(), 1, 10, &mut out, &mut passed),
            InflatorStatus::Ok
        );
        assert!(passed);
        take(out);
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libinflator_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let src = dir.join("tests/smoke.c");
    let bin = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("inflator_smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "degree 2\nrk0 2"
    );
}
