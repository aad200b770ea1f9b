use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lincomp_ffi::*;

const N1: &str = include_str!("../../core/fixtures/n1.json");
const T1: &str = include_str!("../../core/fixtures/t1.json");
const T_SUM: &str = include_str!("../../core/fixtures/t_sum3.json");

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn network(json: &str) -> *mut LincompNetwork {
    let mut out = ptr::null_mut();
    assert_eq!(lincomp_network_parse(cstr(json).as_ptr(), &mut out), LincompStatus::Ok);
    out
}

unsafe fn target(json: &str) -> *mut LincompTarget {
    let mut out = ptr::null_mut();
    assert_eq!(lincomp_target_parse(cstr(json).as_ptr(), &mut out), LincompStatus::Ok);
    out
}

#[test]
fn n1_mincut_and_verdict() {
    unsafe {
        let net = network(N1);
        let t = target(T1);
        let (mut num, mut den) = (0, 0);
        assert_eq!(lincomp_mincut(net, t, &mut num, &mut den), LincompStatus::Ok);
        assert_eq!((num, den), (1, 1));
        let mut v = LincompVerdict::Solvable;
        assert_eq!(lincomp_solvable(net, t, &mut v), LincompStatus::Ok);
        assert_eq!(v, LincompVerdict::Unsolvable);
        let mut class = LincompClass::AllUnits;
        assert_eq!(lincomp_classify(t, &mut class), LincompStatus::Ok);
        assert_eq!(class, LincompClass::HasZero);
        let (mut l, mut s) = (0, 0);
        assert_eq!(lincomp_target_shape(t, &mut l, &mut s), LincompStatus::Ok);
        assert_eq!((l, s), (2, 3));
        lincomp_target_free(t);
        lincomp_network_free(net);
    }
}

#[test]
fn synthesize_round_trip() {
    unsafe {
        let net = network(N1);
        let t = target(T_SUM);
        let mut outcome = LincompOutcome::Unsolvable;
        let mut code = ptr::null_mut();
        assert_eq!(lincomp_synthesize(net, t, 3, &mut outcome, &mut code), LincompStatus::Ok);
        assert_eq!(outcome, LincompOutcome::Solved);
        assert!(!code.is_null());

        let mut json = ptr::null_mut();
        assert_eq!(lincomp_code_to_json(code, &mut json), LincompStatus::Ok);
        let mut reparsed = ptr::null_mut();
        assert_eq!(lincomp_code_parse(json, &mut reparsed), LincompStatus::Ok);
        let mut ok = false;
        assert_eq!(lincomp_is_solution(net, reparsed, t, &mut ok), LincompStatus::Ok);
        assert!(ok);

        lincomp_string_free(json);
        lincomp_code_free(reparsed);
        lincomp_code_free(code);
        lincomp_target_free(t);
        lincomp_network_free(net);
    }
}

#[test]
fn unsolvable_outcome_leaves_no_code() {
    unsafe {
        let net = network(N1);
        let t = target(T1);
        let mut outcome = LincompOutcome::Solved;
        let mut code = std::ptr::dangling_mut::<LincompCode>();
        assert_eq!(lincomp_synthesize(net, t, 0, &mut outcome, &mut code), LincompStatus::Ok);
        assert_eq!(outcome, LincompOutcome::Unsolvable);
        assert!(code.is_null());
        lincomp_target_free(t);
        lincomp_network_free(net);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut out = ptr::null_mut();
        let cyclic = r#"{"field":{"q":2},"nodes":["a","u","r"],"sources":["a"],"receiver":"r",
            "edges":[["a","u"],["u","a"],["u","r"]]}"#;
        assert_eq!(lincomp_network_parse(cstr(cyclic).as_ptr(), &mut out), LincompStatus::InvalidInput);
        assert!(out.is_null());
        let msg = CStr::from_ptr(lincomp_last_error()).to_str().unwrap();
        assert!(msg.starts_with("CyclicGraph"), "{msg}");

        assert_eq!(lincomp_network_parse(ptr::null(), &mut out), LincompStatus::NullPointer);
        let mut n = 0;
        assert_eq!(lincomp_network_num_edges(ptr::null(), &mut n), LincompStatus::NullPointer);

        let net = network(N1);
        let t = target(r#"{"field":{"q":2},"matrix":[[1,0],[0,1]]}"#);
        let (mut num, mut den) = (0, 0);
        assert_eq!(lincomp_mincut(net, t, &mut num, &mut den), LincompStatus::Computation);
        lincomp_target_free(t);
        lincomp_network_free(net);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lincomp.h")).unwrap();
    for name in [
        "lincomp_network_parse",
        "lincomp_target_parse",
        "lincomp_code_parse",
        "lincomp_mincut",
        "lincomp_solvable",
        "lincomp_classify",
        "lincomp_synthesize",
        "lincomp_is_solution",
        "lincomp_last_error",
        "lincomp_string_free",
        "typedef struct LincompNetwork LincompNetwork",
        "LINCOMP_STATUS_INVALID_INPUT = 3",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles and runs a C program against the header and the static library.
#[test]
fn c_program_links_against_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("liblincomp_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler unavailable");
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        format!(
            r#"#include <stdio.h>
#include "lincomp.h"
static const char *N1 = {n1:?};
static const char *T1 = {t1:?};
int main(void) {{
    LincompNetwork *net = NULL; LincompTarget *t = NULL;
    if (lincomp_network_parse(N1, &net) != LINCOMP_STATUS_OK) return 10;
    if (lincomp_target_parse(T1, &t) != LINCOMP_STATUS_OK) return 11;
    size_t num = 0, den = 0;
    if (lincomp_mincut(net, t, &num, &den) != LINCOMP_STATUS_OK || num != 1 || den != 1) return 12;
    LincompVerdict v;
    if (lincomp_solvable(net, t, &v) != LINCOMP_STATUS_OK || v != LINCOMP_VERDICT_UNSOLVABLE) return 13;
    lincomp_target_free(t); lincomp_network_free(net);
    printf("ok\n");
    return 0;
}}
"#,
            n1 = N1,
            t1 = T1
        ),
    )
    .unwrap();
    let exe = dir.join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
