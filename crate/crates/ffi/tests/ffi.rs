//! The C interface driven from Rust, plus a C program compiled against the
//! generated header and the static library.

use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use algconn_ffi::*;
use serde_json::Value;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(algconn_last_error()) }.to_str().unwrap().to_owned()
}

fn bundle(json: &str) -> Result<*mut AlgconnBundle, AlgconnStatus> {
    let mut out = ptr::null_mut();
    match unsafe { algconn_bundle_from_json(c(json).as_ptr(), &mut out) } {
        AlgconnStatus::Ok => Ok(out),
        s => {
            assert!(out.is_null());
            Err(s)
        }
    }
}

fn anchor(json: &str) -> Result<*mut AlgconnAnchor, AlgconnStatus> {
    let mut out = ptr::null_mut();
    match unsafe { algconn_anchor_from_json(c(json).as_ptr(), &mut out) } {
        AlgconnStatus::Ok => Ok(out),
        s => Err(s),
    }
}

unsafe fn take_json(p: *mut c_char) -> Value {
    assert!(!p.is_null());
    let v = serde_json::from_str(CStr::from_ptr(p).to_str().unwrap()).unwrap();
    algconn_string_free(p);
    v
}

#[test]
fn splitting_and_cohomology() {
    let b = bundle(r#"{"rank": 2, "transition": [["z^-1", "1"], ["0", "z"]]}"#).unwrap();
    unsafe {
        let (mut rank, mut degree) = (0usize, 0i64);
        assert_eq!(algconn_bundle_info(b, &mut rank, &mut degree), AlgconnStatus::Ok);
        assert_eq!((rank, degree), (2, 0));

        let mut ty = [99i64; 2];
        let mut len = 0usize;
        assert_eq!(algconn_splitting_type(b, ty.as_mut_ptr(), 2, &mut len), AlgconnStatus::Ok);
        assert_eq!((len, ty), (2, [0, 0]));

        let mut small = [99i64; 1];
        assert_eq!(
            algconn_splitting_type(b, small.as_mut_ptr(), 1, &mut len),
            AlgconnStatus::BufferTooSmall
        );
        assert_eq!((len, small), (2, [99]));
        assert!(!last_error().is_empty());

        let (mut h0, mut h1) = (0u64, 0u64);
        assert_eq!(algconn_cohomology(b, &mut h0, &mut h1), AlgconnStatus::Ok);
        assert_eq!((h0, h1), (2, 0));
        assert!(last_error().is_empty());
        algconn_bundle_free(b);
    }
}

#[test]
fn errors_are_classified() {
    assert_eq!(bundle("{ nope").unwrap_err(), AlgconnStatus::Schema);
    assert!(last_error().contains("schema"));
    assert_eq!(bundle(r#"{"rank": 3, "transition": [["z"]]}"#).unwrap_err(), AlgconnStatus::Schema);
    assert_eq!(
        bundle(r#"{"rank": 2, "transition": [["z", "0"], ["0", "0"]]}"#).unwrap_err(),
        AlgconnStatus::Invalid
    );
    assert_eq!(
        anchor(r#"{"V": {"rank": 1, "transition": [["z^-1"]]}, "phi_row": ["z^4"]}"#).unwrap_err(),
        AlgconnStatus::Invalid
    );
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(algconn_bundle_from_json(ptr::null(), &mut out), AlgconnStatus::NullArgument);
        let bad_utf8 = [0xffu8, 0xfe, 0];
        assert_eq!(
            algconn_bundle_from_json(bad_utf8.as_ptr().cast(), &mut out),
            AlgconnStatus::InvalidUtf8
        );
        let mut len = 0usize;
        assert_eq!(
            algconn_splitting_type(ptr::null(), ptr::null_mut(), 0, &mut len),
            AlgconnStatus::NullArgument
        );
        // freeing null is a no-op
        algconn_bundle_free(ptr::null_mut());
        algconn_anchor_free(ptr::null_mut());
        algconn_string_free(ptr::null_mut());
    }
}

#[test]
fn connect_reports_cocycle_and_certificate() {
    let tx = anchor(r#"{"V": {"rank": 1, "transition": [["z^2"]]}, "phi_row": ["1"]}"#).unwrap();
    let o2 = bundle(r#"{"rank": 1, "transition": [["z^2"]]}"#).unwrap();
    let o0 = bundle(r#"{"rank": 1, "transition": [["1"]]}"#).unwrap();
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(algconn_connect_json(o2, tx, &mut out), AlgconnStatus::Ok);
        let doc = take_json(out);
        assert_eq!(doc["exists"], false);
        assert_eq!(doc["cocycle"], serde_json::json!([["2*z^-1"]]));

        assert_eq!(algconn_connect_json(o0, tx, &mut out), AlgconnStatus::Ok);
        let doc = take_json(out);
        assert_eq!(doc["exists"], true);
        assert_eq!(doc["cert"]["A0"], serde_json::json!([["0"]]));

        algconn_bundle_free(o2);
        algconn_bundle_free(o0);
        algconn_anchor_free(tx);
    }
}

#[test]
fn decide_through_json() {
    let alg = c(r#"{"V": {"genus": 0, "atoms": [{"rank": 1, "degree": -3}]}, "anchor": {"kind": "nonzero"}}"#);
    let e = c(r#"{"genus": 0, "atoms": [{"rank": 1, "degree": 7}]}"#);
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(algconn_decide_json(alg.as_ptr(), e.as_ptr(), &mut out), AlgconnStatus::Ok);
        let d = take_json(out);
        assert_eq!(d["verdict"], "Exists");
        assert_eq!(d["citation"], "Lemma 2");

        let bad = c(r#"{"V": {"genus": 0, "atoms": [{"rank": 1, "degree": 3}]}, "anchor": {"kind": "nonzero"}}"#);
        assert_eq!(algconn_decide_json(bad.as_ptr(), e.as_ptr(), &mut out), AlgconnStatus::Invalid);
        assert!(out.is_null());
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "algconn.h"

int main(void) {
    AlgconnBundle *b = NULL;
    if (algconn_bundle_from_json("{\"rank\": 2, \"transition\": [[\"z^3\", \"0\"], [\"0\", \"z^-5\"]]}", &b) != ALGCONN_STATUS_OK)
        return 10;
    int64_t ty[2];
    size_t len = 0;
    if (algconn_splitting_type(b, ty, 2, &len) != ALGCONN_STATUS_OK || len != 2 || ty[0] != 3 || ty[1] != -5)
        return 11;
    uint64_t h0 = 0, h1 = 0;
    if (algconn_cohomology(b, &h0, &h1) != ALGCONN_STATUS_OK || h0 != 4 || h1 != 4)
        return 12;
    algconn_bundle_free(b);
    if (algconn_bundle_from_json("[", &b) != ALGCONN_STATUS_SCHEMA || strlen(algconn_last_error()) == 0)
        return 13;
    printf("ok %s\n", algconn_version());
    return 0;
}
"#;

#[test]
fn c_program_links_against_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<this test> → target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libalgconn_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());

    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("ffi-c-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let exe = dir.join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();

    let status = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("a C compiler is available");
    assert!(status.success(), "C program failed to compile or link");

    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "C program failed: {}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), format!("ok {}", env!("CARGO_PKG_VERSION")));
}
