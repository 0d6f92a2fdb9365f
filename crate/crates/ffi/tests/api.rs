use std::ffi::{CStr, CString};
use std::ptr;

use ncpos_ffi::*;

fn last_error() -> String {
    let p = ncpos_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn pres(kind: NcposPreset) -> *mut NcposPresentation {
    let mut p = ptr::null_mut();
    assert_eq!(ncpos_presentation_new(kind, ptr::null(), ptr::null(), &mut p), NcposStatus::Ok);
    p
}

unsafe fn parse(p: *const NcposPresentation, text: &str) -> *mut NcposElement {
    let c = CString::new(text).unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(ncpos_element_parse(p, c.as_ptr(), &mut e), NcposStatus::Ok, "{text}");
    e
}

unsafe fn to_string(e: *const NcposElement) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(ncpos_element_to_string(e, &mut s), NcposStatus::Ok);
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    ncpos_string_free(s);
    out
}

#[test]
fn arithmetic_round_trip() {
    unsafe {
        let w = pres(NcposPreset::Weyl);
        let (p, q) = (parse(w, "p"), parse(w, "q"));
        let mut qp = ptr::null_mut();
        assert_eq!(ncpos_element_mul(q, p, &mut qp), NcposStatus::Ok);
        assert_eq!(to_string(qp), "(0+1*i)*p^0*q^0 + (1+0*i)*p^1*q^1");
        let expected = parse(w, "p*q + i");
        let mut eq = false;
        assert_eq!(ncpos_element_equal(qp, expected, &mut eq), NcposStatus::Ok);
        assert!(eq);

        let mut star = ptr::null_mut();
        assert_eq!(ncpos_element_star(qp, &mut star), NcposStatus::Ok);
        let mut sum = ptr::null_mut();
        assert_eq!(ncpos_element_add(qp, star, &mut sum), NcposStatus::Ok);
        let mut herm = false;
        assert_eq!(ncpos_element_is_hermitian(sum, &mut herm), NcposStatus::Ok);
        assert!(herm);
        let (mut d1, mut d2) = (0, 0);
        assert_eq!(ncpos_element_multidegree(sum, &mut d1, &mut d2), NcposStatus::Ok);
        assert_eq!((d1, d2), (1, 1));

        for e in [p, q, qp, expected, star, sum] {
            ncpos_element_free(e);
        }
        ncpos_presentation_free(w);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let w = pres(NcposPreset::Weyl);
        let bad = CString::new("p*z").unwrap();
        let mut e = ptr::null_mut();
        assert_eq!(ncpos_element_parse(w, bad.as_ptr(), &mut e), NcposStatus::Parse);
        assert!(e.is_null());
        assert!(last_error().contains("unknown generator"));

        assert_eq!(ncpos_element_parse(ptr::null(), bad.as_ptr(), &mut e), NcposStatus::NullPointer);
        let x = pres(NcposPreset::Comm);
        let (pw, px) = (parse(w, "1"), parse(x, "1"));
        let mut out = ptr::null_mut();
        assert_eq!(ncpos_element_add(pw, px, &mut out), NcposStatus::PresetMismatch);

        let alpha = CString::new("-2").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(ncpos_presentation_new(NcposPreset::Axb, alpha.as_ptr(), ptr::null(), &mut p), NcposStatus::InvalidParameters);
        let junk = CString::new("abc").unwrap();
        assert_eq!(ncpos_presentation_new(NcposPreset::Axb, junk.as_ptr(), ptr::null(), &mut p), NcposStatus::Parse);

        let zero = parse(w, "0");
        let (mut d1, mut d2) = (0, 0);
        assert_eq!(ncpos_element_multidegree(zero, &mut d1, &mut d2), NcposStatus::Failed);

        let mut s = ptr::null_mut();
        assert_eq!(ncpos_sohs_search(parse(w, "p*q"), 1, &mut s), NcposStatus::NotHermitian);

        let ok = parse(w, "p");
        assert_eq!(ncpos_element_star(ok, &mut out), NcposStatus::Ok);
        assert!(ncpos_last_error().is_null());
        for e in [pw, px, zero, ok, out] {
            ncpos_element_free(e);
        }
        ncpos_presentation_free(w);
        ncpos_presentation_free(x);
        ncpos_string_free(ptr::null_mut());
    }
}

#[test]
fn decisions() {
    unsafe {
        let w = pres(NcposPreset::Weyl);
        let c = parse(w, "p^2 + q^2 + 1");
        let mut json = ptr::null_mut();
        assert_eq!(ncpos_sohs_search(c, 1, &mut json), NcposStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(report["status"], "Found");
        assert_eq!(report["s"], "1");
        ncpos_string_free(json);

        let neg = parse(w, "0 - 1");
        assert_eq!(ncpos_sohs_search(neg, 0, &mut json), NcposStatus::Inconclusive);
        ncpos_string_free(json);

        let mut member = false;
        let f = CString::new("p*inv(s1*s2)").unwrap();
        assert_eq!(ncpos_member(w, f.as_ptr(), &mut member), NcposStatus::Ok);
        assert!(member);
        let g = CString::new("p^2*inv(s1)").unwrap();
        assert_eq!(ncpos_member(w, g.as_ptr(), &mut member), NcposStatus::Inconclusive);
        assert!(!member);

        let mut pos = false;
        assert_eq!(ncpos_sturm_positive([1i64, 0, 1].as_ptr(), 3, &mut pos), NcposStatus::Ok);
        assert!(pos);
        assert_eq!(ncpos_sturm_positive([-1i64, 0, 1].as_ptr(), 3, &mut pos), NcposStatus::Ok);
        assert!(!pos);
        assert_eq!(ncpos_sturm_positive(ptr::null(), 0, &mut pos), NcposStatus::Failed);

        assert_eq!(CStr::from_ptr(ncpos_version()).to_str().unwrap(), env!("CARGO_PKG_VERSION"));
        ncpos_element_free(c);
        ncpos_element_free(neg);
        ncpos_presentation_free(w);
    }
}
