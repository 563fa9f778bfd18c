use std::ffi::{CStr, CString};
use std::ptr;

use dicyclic_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn group(a: &str, y: &str) -> *mut DicGroup {
    let mut g = ptr::null_mut();
    let st = unsafe { dic_group_new(c(a).as_ptr(), c(y).as_ptr(), &mut g) };
    assert_eq!(st, DicStatus::Ok);
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    let p = dic_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn integral_check_on_z8() {
    let g = group("Z8", "4");
    unsafe {
        assert_eq!(dic_group_order(g), 16);
        let (mut holds, mut agree) = (false, false);
        let st = dic_check_integral(
            g,
            c("[2,6]").as_ptr(),
            c("[0,4]").as_ptr(),
            &mut holds,
            &mut agree,
        );
        assert_eq!(st, DicStatus::Ok);
        assert!(agree);
        // S2 = {0,4}: sum over pi(S2) is 1 + pi(4), always a rational integer.
        assert!(holds);
        dic_group_free(g);
    }
}

#[test]
fn distance_integral_on_q8() {
    let g = group("Z4", "2");
    unsafe {
        let (mut holds, mut agree) = (false, false);
        let st = dic_check_distance_integral(
            g,
            c("[1,3]").as_ptr(),
            c("[0,2]").as_ptr(),
            &mut holds,
            &mut agree,
        );
        assert_eq!(st, DicStatus::Ok);
        assert!(holds && agree);
        dic_group_free(g);
    }
}

#[test]
fn verdict_json_round_trip() {
    let g = group("Z2xZ6", "(0,3)");
    unsafe {
        let mut out = ptr::null_mut();
        let st = dic_verdict_json(
            g,
            c("equivalence").as_ptr(),
            c("[(1,0),(0,1),(0,5)]").as_ptr(),
            c("[(1,0),(1,3)]").as_ptr(),
            &mut out,
        );
        assert_eq!(st, DicStatus::Ok, "{}", last_error());
        let json = CStr::from_ptr(out).to_str().unwrap().to_owned();
        dic_string_free(out);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["check"], "equivalence");
        assert_eq!(v["group"], "Z2xZ6");
        assert_eq!(v["agreement"], true);
        dic_group_free(g);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut g = ptr::null_mut();
        let st = dic_group_new(c("Z8").as_ptr(), c("3").as_ptr(), &mut g);
        assert_eq!(st, DicStatus::InvalidGroup);
        assert!(g.is_null());
        assert!(!last_error().is_empty());

        let st = dic_group_new(c("Z?").as_ptr(), c("0").as_ptr(), &mut g);
        assert_eq!(st, DicStatus::Parse);

        let st = dic_group_new(ptr::null(), c("0").as_ptr(), &mut g);
        assert_eq!(st, DicStatus::NullPointer);

        let g = group("Z8", "4");
        let (mut holds, mut agree) = (false, false);
        // {1} alone is not closed under inversion.
        let st = dic_check_integral(g, c("[1]").as_ptr(), c("[]").as_ptr(), &mut holds, &mut agree);
        assert_eq!(st, DicStatus::InvalidConnectionSet);

        let st = dic_check_distance_integral(
            g,
            c("[4]").as_ptr(),
            c("[]").as_ptr(),
            &mut holds,
            &mut agree,
        );
        assert_eq!(st, DicStatus::NotGenerating, "{}", last_error());

        let mut out = ptr::null_mut();
        let st = dic_verdict_json(g, c("bogus").as_ptr(), c("[]").as_ptr(), c("[]").as_ptr(), &mut out);
        assert_eq!(st, DicStatus::Parse);
        assert!(out.is_null());

        let st = dic_check_integral(ptr::null(), c("[]").as_ptr(), c("[]").as_ptr(), &mut holds, &mut agree);
        assert_eq!(st, DicStatus::NullPointer);

        let st = dic_check_integral(g, c("[2,6]").as_ptr(), c("[]").as_ptr(), &mut holds, &mut agree);
        assert_eq!(st, DicStatus::Ok);
        assert!(dic_last_error_message().is_null());
        dic_group_free(g);
    }
}

#[test]
fn null_frees_are_noops() {
    unsafe {
        dic_group_free(ptr::null_mut());
        dic_string_free(ptr::null_mut());
        assert_eq!(dic_group_order(ptr::null()), 0);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/dicyclic.h")).unwrap();
    for name in [
        "dic_group_new",
        "dic_group_free",
        "dic_group_order",
        "dic_check_integral",
        "dic_check_distance_integral",
        "dic_verdict_json",
        "dic_string_free",
        "dic_last_error_message",
        "DIC_STATUS_OK",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
