use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use serde_json::Value;
use steiner_lab_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { sl_string_free(s) };
    out
}

fn last_error() -> Option<String> {
    let s = sl_last_error();
    (!s.is_null()).then(|| take(s))
}

fn map_from(json: &str) -> *mut SlMap {
    let c = CString::new(json).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { sl_map_from_json(c.as_ptr(), &mut m) }, SlStatus::Ok, "{:?}", last_error());
    m
}

const LINE: &str = r#"{"k":0,"n":1,"s":1,"t":1,"field":"Fp","p":3,"phi":{"rows":1,"cols":2,"entries":[1,0]}}"#;

fn veronese() -> *mut SlMap {
    let spec = CString::new(r#"{"family":"veronese"}"#).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { sl_family_map(spec.as_ptr(), 3, &mut m) }, SlStatus::Ok);
    m
}

#[test]
fn verify_family_passes() {
    let spec = CString::new(r#"{"family":"rnc","d":2,"n":3}"#).unwrap();
    let primes = [5u64, 7];
    let (mut pass, mut out) = (0, ptr::null_mut());
    let st = unsafe { sl_verify_family_json(spec.as_ptr(), primes.as_ptr(), 2, &mut pass, &mut out) };
    assert_eq!((st, pass), (SlStatus::Ok, 1));
    let report: Value = serde_json::from_str(&take(out)).unwrap();
    assert!(report["predicates"].as_object().unwrap().values().all(|b| *b == Value::Bool(true)));
}

#[test]
fn map_round_trip_and_shape() {
    let m = map_from(LINE);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sl_map_to_json(m, &mut out) }, SlStatus::Ok);
    let a: Value = serde_json::from_str(&take(out)).unwrap();
    let b: Value = serde_json::from_str(LINE).unwrap();
    assert_eq!(a["phi"], b["phi"]);
    let mut shape = [9usize; 4];
    assert_eq!(unsafe { sl_map_shape(m, shape.as_mut_ptr()) }, SlStatus::Ok);
    assert_eq!(shape, [0, 1, 1, 1]);
    unsafe { sl_map_free(m) };
}

#[test]
fn check_reports_witness() {
    let m = map_from(LINE);
    let (mut valid, mut w) = (-1, ptr::null_mut());
    assert_eq!(unsafe { sl_check_pk(m, 0, 0, 0, &mut valid, &mut w) }, SlStatus::Ok);
    assert_eq!(valid, 0);
    let v: Value = serde_json::from_str(&take(w)).unwrap();
    assert_eq!(v["witness"], serde_json::json!([["0", "1"]]));
    let mut sampled = -1;
    assert_eq!(unsafe { sl_check_pk(m, 0, 200, 7, &mut sampled, ptr::null_mut()) }, SlStatus::Ok);
    assert_eq!(sampled, 0);
    unsafe { sl_map_free(m) };
}

#[test]
fn reduce_and_dualize() {
    let m = veronese();
    let (mut red, mut trivial) = (ptr::null_mut(), 99usize);
    assert_eq!(unsafe { sl_reduce(m, &mut red, &mut trivial) }, SlStatus::Ok);
    assert_eq!(trivial, 0);
    let (mut d, mut dd) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { sl_dualize(m, &mut d) }, SlStatus::Ok);
    assert_eq!(unsafe { sl_dualize(d, &mut dd) }, SlStatus::Ok);
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        sl_map_to_json(m, &mut a);
        sl_map_to_json(dd, &mut b);
    }
    assert_eq!(take(a), take(b));
    for h in [m, red, d, dd] {
        unsafe { sl_map_free(h) };
    }
}

#[test]
fn numbers_and_reports() {
    let mut r = 0usize;
    assert_eq!(unsafe { sl_rank_bound(0, 3, 2, &mut r) }, SlStatus::Ok);
    assert_eq!(r, 3);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sl_porteous_json(0, 2, 1, 3, &mut out) }, SlStatus::Ok);
    assert!(!take(out).is_empty());

    let m = veronese();
    assert_eq!(unsafe { sl_jumping_report_json(m, 5, &mut out) }, SlStatus::Ok);
    let v: Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["pairs"], 31);
    assert_eq!(v["sigma"].as_array().unwrap().len(), 31);
    unsafe { sl_map_free(m) };
}

#[test]
fn errors_set_status_and_message() {
    let mut m = ptr::null_mut();
    let bad = CString::new("{not json").unwrap();
    assert_eq!(unsafe { sl_map_from_json(bad.as_ptr(), &mut m) }, SlStatus::Parse);
    assert!(last_error().is_some());
    let wrong = CString::new(r#"{"k":0,"n":1,"s":1,"t":3,"field":"Q","phi":{"rows":2,"cols":2,"entries":["1","0","0","1"]}}"#).unwrap();
    assert_eq!(unsafe { sl_map_from_json(wrong.as_ptr(), &mut m) }, SlStatus::Schema);
    assert_eq!(unsafe { sl_map_from_json(ptr::null(), &mut m) }, SlStatus::NullPointer);
    let mut r = 0usize;
    assert_eq!(unsafe { sl_rank_bound(3, 3, 1, &mut r) }, SlStatus::InvalidParameters);
    assert!(last_error().unwrap().contains("invalid parameters"));
    assert_eq!(unsafe { sl_rank_bound(0, 3, 2, &mut r) }, SlStatus::Ok);
    assert_eq!(last_error(), None);

    let spec = CString::new(
        r#"{"family":"case3","k":0,"n":1,"surjection":{"rows":1,"cols":4,"entries":["1","0","0","0"]}}"#,
    )
    .unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { sl_family_map(spec.as_ptr(), 3, &mut m) }, SlStatus::InjectivityViolation);
    assert!(last_error().unwrap().contains("not injective"));
    assert_eq!(unsafe { sl_family_map(spec.as_ptr(), 0, &mut m) }, SlStatus::Ok);
    unsafe { sl_map_free(m) };
    unsafe {
        sl_map_free(ptr::null_mut());
        sl_string_free(ptr::null_mut());
    }
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/steiner_lab.h")
}

#[test]
fn header_declares_every_export() {
    let h = std::fs::read_to_string(header()).unwrap();
    for f in [
        "sl_last_error", "sl_string_free", "sl_map_from_json", "sl_map_to_json", "sl_map_shape", "sl_map_free",
        "sl_check_pk", "sl_reduce", "sl_dualize", "sl_rank_bound", "sl_porteous_json", "sl_jumping_report_json",
        "sl_verify_family_json", "sl_family_map",
    ] {
        assert!(h.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(h.contains("typedef struct SlMap SlMap;"));
    assert!(h.contains("SL_STATUS_INJECTIVITY_VIOLATION = 11"));
}

// Compiles and runs a C client against the static library.
#[test]
fn c_client_links_against_static_library() {
    let target = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = target.join("libsteiner_lab_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = tempfile_dir();
    let src = dir.join("client.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "steiner_lab.h"
int main(void) {
    size_t r = 0;
    if (sl_rank_bound(0, 3, 2, &r) != SL_STATUS_OK || r != 3) return 1;
    SlMap *m = NULL;
    const char *js = "{\"k\":0,\"n\":1,\"s\":1,\"t\":1,\"field\":\"Fp\",\"p\":3,"
                     "\"phi\":{\"rows\":1,\"cols\":2,\"entries\":[1,0]}}";
    if (sl_map_from_json(js, &m) != SL_STATUS_OK) return 2;
    int valid = -1;
    if (sl_check_pk(m, 0, 0, 0, &valid, NULL) != SL_STATUS_OK || valid != 0) return 3;
    sl_map_free(m);
    if (sl_map_from_json("[", &m) != SL_STATUS_PARSE) return 4;
    char *msg = sl_last_error();
    if (msg == NULL || strlen(msg) == 0) return 5;
    sl_string_free(msg);
    puts("ok");
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("client");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("cc not found");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
    std::fs::remove_dir_all(dir).ok();
}

fn tempfile_dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("sl-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
