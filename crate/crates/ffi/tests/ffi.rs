use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use prodfrac_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { pf_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pf_last_error_message()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn parse(text: &str) -> *mut PfPoly {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { pf_poly_parse(c.as_ptr(), &mut p) }, PfStatus::Ok);
    p
}

#[test]
fn parse_render_classify() {
    let p = parse("x^2*(x+1)");
    assert_eq!(unsafe { pf_poly_degree(p) }, 3);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pf_poly_render(p, &mut s) }, PfStatus::Ok);
    assert_eq!(take(s), "x^3 + x^2");
    assert_eq!(unsafe { pf_classify_json(p, &mut s) }, PfStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v[0]["class"], "I");
    let x = CString::new("2").unwrap();
    assert_eq!(unsafe { pf_poly_eval(p, x.as_ptr(), &mut s) }, PfStatus::Ok);
    assert_eq!(take(s), "12");
    unsafe { pf_poly_free(p) };
}

#[test]
fn expansion_handle() {
    let p = parse("x^4");
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { pf_expand(p, 3, &mut e) }, PfStatus::Ok);
    assert_eq!(unsafe { pf_expansion_len(e) }, 8);
    assert_eq!(unsafe { pf_expansion_first_non_integral(e) }, 0);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pf_expansion_quotient(e, 1, &mut s) }, PfStatus::Ok);
    assert_eq!(take(s), "x");
    assert_eq!(unsafe { pf_expansion_quotient(e, 99, &mut s) }, PfStatus::InvalidArgument);
    let at = CString::new("2").unwrap();
    assert_eq!(unsafe { pf_expansion_specialize_json(e, at.as_ptr(), &mut s) }, PfStatus::Ok);
    let terms: Vec<String> = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(terms[..7], ["1", "1", "1", "2", "6", "40", "1632"]);
    unsafe {
        pf_expansion_free(e);
        pf_poly_free(p);
    }
}

#[test]
fn product_and_rational() {
    let p = parse("x^2");
    let at = CString::new("2").unwrap();
    let (mut num, mut den) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { pf_product_value(p, at.as_ptr(), 2, &mut num, &mut den) }, PfStatus::Ok);
    assert_eq!((take(num), take(den)), ("255".to_owned(), "128".to_owned()));
    unsafe { pf_poly_free(p) };
    let (a, b) = (CString::new("-7").unwrap(), CString::new("2").unwrap());
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pf_rational_to_cf_json(a.as_ptr(), b.as_ptr(), &mut s) }, PfStatus::Ok);
    assert_eq!(take(s), r#"["-4","2"]"#);
}

#[test]
fn errors_and_codes() {
    let bad = CString::new("x^(-1)").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { pf_poly_parse(bad.as_ptr(), &mut p) }, PfStatus::ParseError);
    assert!(p.is_null());
    assert!(last_error().starts_with("PARSE_ERROR"));

    assert_eq!(unsafe { pf_poly_parse(ptr::null(), &mut p) }, PfStatus::NullPointer);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pf_poly_render(ptr::null(), &mut s) }, PfStatus::NullPointer);

    let q = parse("x^2-1");
    let one = CString::new("1").unwrap();
    let (mut num, mut den) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(
        unsafe { pf_product_value(q, one.as_ptr(), 3, &mut num, &mut den) },
        PfStatus::OrbitViolation
    );
    assert!(last_error().starts_with("ORBIT_VIOLATION"));
    let name = unsafe { CStr::from_ptr(pf_status_name(PfStatus::OrbitViolation)) };
    assert_eq!(name.to_str().unwrap(), "ORBIT_VIOLATION");

    let c = parse("x^2+1");
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { pf_expand(c, 2, &mut e) }, PfStatus::Ok);
    assert!(unsafe { pf_expansion_first_non_integral(e) } > 0);
    let two = CString::new("2").unwrap();
    assert_eq!(
        unsafe { pf_expansion_specialize_json(e, two.as_ptr(), &mut s) },
        PfStatus::NonSpecializable
    );
    unsafe {
        pf_expansion_free(e);
        pf_poly_free(c);
        pf_poly_free(q);
    }
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { pf_chebyshev(0, &mut t) }, PfStatus::InvalidArgument);
    assert_eq!(unsafe { pf_chebyshev(6, &mut t) }, PfStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe { pf_poly_free(t) };
}

#[test]
fn analysis_json() {
    let p = parse("x^3+x^2");
    let (at, eps) = (CString::new("2").unwrap(), CString::new("1/2").unwrap());
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pf_evidence_json(p, at.as_ptr(), 4, eps.as_ptr(), &mut s) }, PfStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["verdict"], true);
    unsafe { pf_poly_free(p) };
    assert_eq!(unsafe { pf_near_exception_json(at.as_ptr(), 5, &mut s) }, PfStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert!(v["agreeDigits"].as_str().unwrap().parse::<usize>().unwrap() >= 30);
}

#[test]
fn c_program_links_against_header() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = crate_dir.join("include");
    assert!(header_dir.join("prodfrac.h").exists());
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_owned();
    let lib = profile_dir.join("libprodfrac_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let out_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let exe = out_dir.join("ffi_smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "{stdout}{}", String::from_utf8_lossy(&run.stderr));
    assert!(stdout.contains("[\"1\",\"1\",\"1\",\"2\",\"6\",\"40\",\"1632\""), "{stdout}");
    assert!(stdout.contains("PARSE_ERROR"), "{stdout}");
}
