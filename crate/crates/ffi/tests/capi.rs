use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use orekit_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { orekit_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(orekit_last_error()) }.to_str().unwrap().to_string()
}

fn tower(p: u64, r: usize, h: &str) -> *mut OrekitTower {
    let h = CString::new(h).unwrap();
    let mut t = ptr::null_mut();
    let st = unsafe { orekit_tower_new(p, 1, r, ptr::null(), h.as_ptr(), &mut t) };
    assert_eq!(st, OrekitStatus::Ok);
    t
}

fn parse(t: *const OrekitTower, text: &str) -> Result<*mut OrekitPoly, OrekitStatus> {
    let text = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    match unsafe { orekit_poly_parse(t, text.as_ptr(), &mut p) } {
        OrekitStatus::Ok => Ok(p),
        st => Err(st),
    }
}

#[test]
fn cubic_round_trip() {
    let t = tower(7, 5, "Y^5+Y+4");
    let p = parse(t, "X^3 + w*X^2 - w^2").unwrap();
    unsafe {
        assert_eq!(orekit_poly_degree(p), 3);
        let mut s = ptr::null_mut();
        assert_eq!(orekit_psi(p, &mut s), OrekitStatus::Ok);
        assert_eq!(take(s), "Y^3 + Y^2 + Y + 5");
        assert_eq!(orekit_splitting_degree(p, &mut s), OrekitStatus::Ok);
        assert_eq!(take(s), "171");
        let mut irr = false;
        assert_eq!(orekit_is_irreducible(p, &mut irr), OrekitStatus::Ok);
        assert!(irr);
        assert_eq!(orekit_poly_to_string(p, &mut s), OrekitStatus::Ok);
        let printed = take(s);
        let q = parse(t, &printed).unwrap();
        let mut sim = false;
        assert_eq!(orekit_is_similar(p, q, &mut sim), OrekitStatus::Ok);
        assert!(sim);
        let mut b = ptr::null_mut();
        assert_eq!(orekit_optimal_bound(p, &mut b), OrekitStatus::Ok);
        assert_eq!(orekit_poly_degree(b), 15);
        orekit_poly_free(b);
        orekit_poly_free(q);
        orekit_poly_free(p);
        assert_eq!(orekit_tower_to_json(t, &mut s), OrekitStatus::Ok);
        assert!(take(s).contains("\"p\":7"));
        orekit_tower_free(t);
    }
}

#[test]
fn sextic_count() {
    let t = tower(7, 2, "Y^2-Y+3");
    let p = parse(
        t,
        "X^6 + w^3*X^5 + w^17*X^4 + w^3*X^3 + w^27*X^2 + w^35*X + w^36",
    )
    .unwrap();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(orekit_count_factorizations(p, &mut s), OrekitStatus::Ok);
        assert_eq!(take(s), "99");
        let mut sq = ptr::null_mut();
        assert_eq!(orekit_poly_mul(p, p, &mut sq), OrekitStatus::Ok);
        assert_eq!(orekit_poly_degree(sq), 12);
        orekit_poly_free(sq);
        orekit_poly_free(p);
        orekit_tower_free(t);
    }
}

#[test]
fn errors_are_reported() {
    let t = tower(3, 2, "Y^2+1");
    assert_eq!(parse(t, "X^2 + ?").unwrap_err(), OrekitStatus::ParseError);
    assert!(!last_error().is_empty());
    let x = parse(t, "X").unwrap();
    let one = parse(t, "1").unwrap();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(orekit_splitting_degree(x, &mut s), OrekitStatus::DomainError);
        let mut flag = false;
        assert_eq!(orekit_is_irreducible(one, &mut flag), OrekitStatus::DomainError);
        assert_eq!(orekit_psi(ptr::null(), &mut s), OrekitStatus::InvalidArgument);
        assert_eq!(orekit_psi(x, ptr::null_mut()), OrekitStatus::InvalidArgument);
        assert_eq!(orekit_poly_degree(ptr::null()), -1);
        orekit_poly_free(ptr::null_mut());
        orekit_poly_free(one);
        orekit_poly_free(x);
        orekit_tower_free(t);
    }
    let mut t = ptr::null_mut();
    let st = unsafe { orekit_tower_new(4, 1, 2, ptr::null(), ptr::null(), &mut t) };
    assert_eq!(st, OrekitStatus::DomainError);
    assert!(t.is_null());
}

#[test]
fn cli_passthrough() {
    let args: Vec<CString> = ["count-factorizations", "--p", "2", "--r", "2", "X^2 + 1"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut out, mut err) = (ptr::null_mut(), ptr::null_mut());
    let code = unsafe { orekit_cli_run(argv.len() as i32, argv.as_ptr(), &mut out, &mut err) };
    assert_eq!(code, 0);
    assert!(take(out).trim().parse::<u64>().unwrap() >= 1);
    take(err);

    let bad = [CString::new("factor").unwrap()];
    let argv: Vec<*const c_char> = bad.iter().map(|a| a.as_ptr()).collect();
    let code = unsafe { orekit_cli_run(1, argv.as_ptr(), ptr::null_mut(), ptr::null_mut()) };
    assert_eq!(code, 2);
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/orekit.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["orekit_tower_new", "orekit_count_factorizations", "OREKIT_STATUS_BUDGET_EXCEEDED"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(status.success());
}
