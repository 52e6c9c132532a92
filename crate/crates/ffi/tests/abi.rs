use std::ffi::{CStr, CString};
use std::ptr;

use novikov_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn from_catalog(name: &str, params: Option<&str>) -> (NovStatus, *mut NovAlgebra) {
    let mut h = ptr::null_mut();
    let p = params.map(c);
    let s = nov_algebra_from_catalog(c(name).as_ptr(), p.as_ref().map_or(ptr::null(), |p| p.as_ptr()), &mut h);
    (s, h)
}

#[test]
fn derivations_and_cohomology() {
    unsafe {
        let (s, h) = from_catalog("N4_20", Some(r#"{"alpha":"2"}"#));
        assert_eq!(s, NovStatus::Ok);
        let mut d = 0usize;
        assert_eq!(nov_algebra_derivation_dim(h, &mut d), NovStatus::Ok);
        assert_eq!(d, 3);
        nov_algebra_free(h);

        let (_, h) = from_catalog("N3s_01", None);
        let mut dims = NovCohomologyDims::default();
        assert_eq!(nov_cohomology_dims(h, &mut dims), NovStatus::Ok);
        assert_eq!((dims.z2, dims.b2, dims.h2), (6, 1, 5));
        nov_algebra_free(h);
    }
}

#[test]
fn identities_of_zero_algebra() {
    unsafe {
        let (_, h) = from_catalog("zero_4", None);
        let mut f = NovIdentities::default();
        assert_eq!(nov_algebra_check(h, &mut f), NovStatus::Ok);
        assert!(f.novikov && f.two_step && f.right_commutative && f.left_symmetric);
        assert_eq!(f.nilpotency_index, 2);
        nov_algebra_free(h);
    }
}

#[test]
fn extension_and_json_roundtrip() {
    unsafe {
        let (_, h) = from_catalog("N3s_01", None);
        let mut e = ptr::null_mut();
        assert_eq!(nov_central_extension(h, c("D12 + D31").as_ptr(), &mut e), NovStatus::Ok);
        let mut n = 0;
        nov_algebra_dim(e, &mut n);
        assert_eq!(n, 4);
        let mut js = ptr::null_mut();
        assert_eq!(nov_algebra_to_json(e, &mut js), NovStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(nov_algebra_from_json(js, &mut back), NovStatus::Ok);
        let mut f = NovIdentities::default();
        nov_algebra_check(back, &mut f);
        assert!(f.novikov);
        assert_eq!(nov_central_extension(h, c("D23").as_ptr(), &mut e), NovStatus::InvalidInput);
        nov_string_free(js);
        for x in [h, e, back] {
            nov_algebra_free(x);
        }
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let (s, h) = from_catalog("N9_99", None);
        assert_eq!(s, NovStatus::UnknownName);
        assert!(h.is_null());
        let msg = CStr::from_ptr(nov_last_error()).to_str().unwrap();
        assert!(msg.contains("N9_99"), "{msg}");
        assert_eq!(from_catalog("N4_20", Some("{not json")).0, NovStatus::Parse);
        assert_eq!(from_catalog("N4_20", Some(r#"{"beta":"1"}"#)).0, NovStatus::InvalidInput);
        let mut h = ptr::null_mut();
        assert_eq!(nov_algebra_from_catalog(ptr::null(), ptr::null(), &mut h), NovStatus::NullPointer);
        let mut d = 0;
        assert_eq!(nov_algebra_dim(ptr::null(), &mut d), NovStatus::NullPointer);
        nov_algebra_free(ptr::null_mut());
        nov_string_free(ptr::null_mut());
    }
}

#[test]
fn witness_verdicts() {
    unsafe {
        let mut pass = false;
        let mut js = ptr::null_mut();
        assert_eq!(nov_verify_witness(c("B07").as_ptr(), 0, 1, &mut pass, &mut js), NovStatus::Ok);
        assert!(pass);
        let report = CStr::from_ptr(js).to_str().unwrap();
        assert!(report.contains("\"N4_07\""));
        nov_string_free(js);
        assert_eq!(nov_verify_witness(c("B11").as_ptr(), 0, 1, &mut pass, ptr::null_mut()), NovStatus::Ok);
        assert!(!pass);
        assert_eq!(nov_verify_witness(c("B07").as_ptr(), 8, 1, &mut pass, ptr::null_mut()), NovStatus::InvalidInput);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(nov_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/novikov.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["nov_algebra_from_catalog", "nov_algebra_free", "nov_verify_witness", "typedef struct NovAlgebra NovAlgebra"] {
        assert!(text.contains(f), "{f}");
    }
    let Ok(out) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).output() else {
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
