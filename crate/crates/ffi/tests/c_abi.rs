use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use dlrb::*;

fn system(n: u32, lambda: &str) -> *mut DlrbSystem {
    let lambda = CString::new(lambda).unwrap();
    let mut sys = ptr::null_mut();
    let st = unsafe { dlrb_system_new(n, lambda.as_ptr(), &mut sys) };
    assert_eq!(st, DlrbStatus::Ok);
    assert!(!sys.is_null());
    sys
}

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { dlrb_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(dlrb_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn normal_form_through_handle() {
    let sys = system(2, "1");
    let expr = CString::new("[P(x1) P(x2)]").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { dlrb_normal_form(sys, expr.as_ptr(), 4, 1, &mut out) };
    assert_eq!(st, DlrbStatus::Ok);
    assert_eq!(take(out), "P([P(x1) x2]) - P([P(x2) x1]) + P([x1 x2])");
    unsafe { dlrb_system_free(sys) };
}

#[test]
fn error_codes() {
    let sys = system(1, "0");
    let mut out = ptr::null_mut();
    let bad = CString::new("x1 +").unwrap();
    let st = unsafe { dlrb_normal_form(sys, bad.as_ptr(), 4, 1, &mut out) };
    assert_eq!(st, DlrbStatus::ParseError);
    assert!(out.is_null());
    assert!(last_error().contains("syntax"));

    let deep = CString::new("D^5(x1)").unwrap();
    let st = unsafe { dlrb_normal_form(sys, deep.as_ptr(), 3, 1, &mut out) };
    assert_eq!(st, DlrbStatus::DegreeOverflow);

    let st = unsafe { dlrb_normal_form(ptr::null(), deep.as_ptr(), 3, 1, &mut out) };
    assert_eq!(st, DlrbStatus::NullPointer);

    let lambda = CString::new("1/0").unwrap();
    let mut h = ptr::null_mut();
    let st = unsafe { dlrb_system_new(1, lambda.as_ptr(), &mut h) };
    assert_eq!(st, DlrbStatus::InvalidArgument);
    assert!(h.is_null());
    unsafe { dlrb_system_free(sys) };
}

#[test]
fn basis_and_gsb() {
    let sys = system(1, "1");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dlrb_basis_json(sys, 3, &mut out) }, DlrbStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    let counts: Vec<u64> = v["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![1, 2, 5]);
    let mut failures = 99;
    assert_eq!(unsafe { dlrb_check_gsb(sys, 5, 0, 1, &mut failures) }, DlrbStatus::Ok);
    assert_eq!(failures, 0);
    unsafe { dlrb_system_free(sys) };
}

#[test]
fn header_lists_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/dlrb.h")).unwrap();
    for name in [
        "dlrb_system_new",
        "dlrb_system_free",
        "dlrb_normal_form",
        "dlrb_basis_json",
        "dlrb_check_gsb",
        "dlrb_string_free",
        "dlrb_last_error",
        "typedef struct DlrbSystem DlrbSystem",
        "DLRB_STATUS_NOT_CERTIFIED = 6",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

// Compiles and runs a small C program against the static library when a C
// compiler is available.
#[test]
fn c_program_links() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libdlrb.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "dlrb.h"
int main(void) {
    DlrbSystem *sys = NULL;
    if (dlrb_system_new(2, "1", &sys) != DLRB_STATUS_OK) return 1;
    char *out = NULL;
    if (dlrb_normal_form(sys, "D(P(x1)) - x1", 4, 1, &out) != DLRB_STATUS_OK) return 2;
    int ok = strcmp(out, "0") == 0;
    dlrb_string_free(out);
    if (dlrb_normal_form(sys, "(", 4, 1, &out) != DLRB_STATUS_PARSE_ERROR) return 3;
    printf("%s\n", dlrb_last_error());
    dlrb_system_free(sys);
    return ok ? 0 : 4;
}
"#,
    )
    .unwrap();
    let bin = dir.join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{run:?}");
}
