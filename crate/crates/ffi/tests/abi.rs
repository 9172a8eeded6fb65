use std::ffi::{CStr, CString};
use std::ptr;

use isomin_ffi::*;

fn text(p: *const std::ffi::c_char) -> String {
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn version_is_the_crate_version() {
    assert_eq!(text(isomin_version()), env!("CARGO_PKG_VERSION"));
}

#[test]
fn verify_one_certificate() {
    let filter = CString::new("case_d").unwrap();
    let mut r = ptr::null_mut();
    let s = unsafe { isomin_verify(filter.as_ptr(), 0, &mut r) };
    assert_eq!(s, IsominStatus::Ok);
    unsafe {
        assert_eq!(isomin_verify_count(r), 1);
        assert_eq!(isomin_verify_passed(r), 1);
        assert_eq!(text(isomin_verify_name(r, 0)), "case_d");
        assert_eq!(isomin_verify_status(r, 0), IsominCertificateStatus::ProvedEqual);
        assert!(isomin_verify_name(r, 1).is_null());
        assert_eq!(isomin_verify_status(r, 1), IsominCertificateStatus::Invalid);
        let json: serde_json::Value = serde_json::from_str(&text(isomin_verify_json(r))).unwrap();
        assert_eq!(json["certificates"][0]["name"], "case_d");
        isomin_verify_free(r);
    }
}

#[test]
fn verify_rejects_bad_arguments() {
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { isomin_verify(ptr::null(), 0, &mut r) }, IsominStatus::NullPointer);
    assert!(r.is_null());
    assert!(text(isomin_last_error()).contains("filter"));
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { isomin_verify(bad.as_ptr().cast(), 0, &mut r) }, IsominStatus::InvalidUtf8);
    let glob = CString::new("[").unwrap();
    assert_eq!(unsafe { isomin_verify(glob.as_ptr(), 0, &mut r) }, IsominStatus::Config);
    let ok = CString::new("*").unwrap();
    assert_eq!(unsafe { isomin_verify(ok.as_ptr(), 0, ptr::null_mut()) }, IsominStatus::NullPointer);
    unsafe { isomin_verify_free(ptr::null_mut()) };
}

#[test]
fn catenary_pair_through_the_abi() {
    let cfg = CString::new("mode = catenary\nc = 1\nctilde = 0\ngrid = 6x4x4\n").unwrap();
    let mut r = ptr::null_mut();
    let s = unsafe { isomin_pair_check(cfg.as_ptr(), &mut r) };
    assert_eq!(s, IsominStatus::Ok, "{}", text(isomin_last_error()));
    unsafe {
        let n = isomin_pair_check_count(r);
        assert_eq!(n, 7);
        let names: Vec<String> = (0..n).map(|i| text(isomin_pair_check_name(r, i))).collect();
        assert!(names.iter().any(|s| s == "lambda_sum"));
        for i in 0..n {
            assert!(isomin_pair_check_pass(r, i));
            assert!(isomin_pair_check_max(r, i) <= isomin_pair_check_tol(r, i));
        }
        assert!(isomin_pair_check_max(r, n).is_nan());
        let json: serde_json::Value = serde_json::from_str(&text(isomin_pair_check_json(r))).unwrap();
        assert_eq!(json["kind"], "catenary");
        isomin_pair_check_free(r);
    }
}

#[test]
fn pair_status_codes() {
    let run = |s: &str| {
        let cfg = CString::new(s).unwrap();
        let mut r = ptr::null_mut();
        let st = unsafe { isomin_pair_check(cfg.as_ptr(), &mut r) };
        unsafe { isomin_pair_check_free(r) };
        (st, r.is_null())
    };
    assert_eq!(run("mode = cone\nc = 0\nctilde = 1\ngrid = 3x3x3"), (IsominStatus::Obstruction, true));
    assert!(text(isomin_last_error()).contains("c > ct"));
    assert_eq!(run("grid = 1x1x1"), (IsominStatus::Config, true));
    assert_eq!(run("no_such_key = 1"), (IsominStatus::Config, true));
    assert!(text(isomin_last_error()).contains("no_such_key"));
}

#[test]
fn principal_curvatures_of_a_diagonal_pencil() {
    let first = [1.0, 0.0, 0.0, 0.0, 4.0, 0.0, 0.0, 0.0, 9.0];
    let second = [2.0, 0.0, 0.0, 0.0, -4.0, 0.0, 0.0, 0.0, 27.0];
    let mut out = [0.0; 3];
    assert_eq!(
        unsafe { isomin_principal_curvatures(first.as_ptr(), second.as_ptr(), out.as_mut_ptr()) },
        IsominStatus::Ok
    );
    for (a, b) in out.iter().zip([-1.0, 2.0, 3.0]) {
        assert!((a - b).abs() < 1e-14, "{out:?}");
    }
    let indefinite = [1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0];
    let s = unsafe { isomin_principal_curvatures(indefinite.as_ptr(), second.as_ptr(), out.as_mut_ptr()) };
    assert_eq!(s, IsominStatus::Config);
    assert_eq!(
        unsafe { isomin_principal_curvatures(ptr::null(), second.as_ptr(), out.as_mut_ptr()) },
        IsominStatus::NullPointer
    );
}
