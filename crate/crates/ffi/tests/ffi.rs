use std::os::raw::c_char;
use std::ptr;

use sobolev_ffi::*;

fn last_error() -> String {
    unsafe {
        let len = sobolev_last_error_message(ptr::null_mut(), 0);
        let mut buf = vec![0 as c_char; len + 1];
        sobolev_last_error_message(buf.as_mut_ptr(), buf.len());
        let bytes: Vec<u8> = buf[..len].iter().map(|&c| c as u8).collect();
        String::from_utf8(bytes).unwrap()
    }
}

#[test]
fn bracket_roundtrip() {
    unsafe {
        let mut h: *mut SobolevBracket = ptr::null_mut();
        assert_eq!(sobolev_bracket_new(6.0, 1.0, 1, &mut h), SobolevStatus::Ok);
        assert!(!h.is_null());
        let (mut lo, mut hi, mut rel, mut lam) = (0.0, 0.0, 0.0, 0.0);
        assert_eq!(sobolev_bracket_s_plus(h, &mut hi), SobolevStatus::Ok);
        assert_eq!(sobolev_bracket_s_minus(h, &mut lo), SobolevStatus::Ok);
        assert_eq!(sobolev_bracket_rel_uncertainty(h, &mut rel), SobolevStatus::Ok);
        assert_eq!(sobolev_bracket_lambda_star(h, &mut lam), SobolevStatus::Ok);
        let mut kind = SobolevBracketKind::Sharp;
        assert_eq!(sobolev_bracket_kind(h, &mut kind), SobolevStatus::Ok);
        assert_eq!(kind, SobolevBracketKind::Estimated);
        assert!(lo < hi);
        assert!((rel - (hi - lo) / lo).abs() < 1e-12);
        assert!(lam > 0.0);
        assert_eq!((hi * 1e4).ceil() / 1e4, 0.6345);
        sobolev_bracket_free(h);
    }
}

#[test]
fn sup_norm_endpoint_is_sharp() {
    unsafe {
        let mut h: *mut SobolevBracket = ptr::null_mut();
        assert_eq!(sobolev_bracket_new(f64::INFINITY, 1.0, 1, &mut h), SobolevStatus::Ok);
        let (mut hi, mut lo) = (0.0, 0.0);
        assert_eq!(sobolev_bracket_s_plus(h, &mut hi), SobolevStatus::Ok);
        assert_eq!(sobolev_bracket_s_minus(h, &mut lo), SobolevStatus::Ok);
        assert!((hi - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        assert_eq!(lo, hi);
        let mut kind = SobolevBracketKind::UpperOnly;
        assert_eq!(sobolev_bracket_kind(h, &mut kind), SobolevStatus::Ok);
        assert_eq!(kind, SobolevBracketKind::Sharp);
        sobolev_bracket_free(h);
    }
}

#[test]
fn upper_only_reports_not_available() {
    unsafe {
        let mut h: *mut SobolevBracket = ptr::null_mut();
        assert_eq!(sobolev_bracket_new(4.0, 1.0, 3, &mut h), SobolevStatus::Ok);
        let mut v = 0.0;
        assert_eq!(sobolev_bracket_s_plus(h, &mut v), SobolevStatus::Ok);
        assert!(v.is_finite() && v > 0.0);
        assert_eq!(sobolev_bracket_s_minus(h, &mut v), SobolevStatus::NotAvailable);
        assert!(last_error().contains("not available"));
        assert_eq!(sobolev_bracket_lambda_star(h, &mut v), SobolevStatus::NotAvailable);
        let mut kind = SobolevBracketKind::Sharp;
        sobolev_bracket_kind(h, &mut kind);
        assert_eq!(kind, SobolevBracketKind::UpperOnly);
        sobolev_bracket_free(h);
    }
}

#[test]
fn scalar_entry_points() {
    unsafe {
        let mut v = 0.0;
        assert_eq!(sobolev_upper_bound(2.0, 1.0, 1, &mut v), SobolevStatus::Ok);
        assert_eq!(v, 1.0);
        assert_eq!(sobolev_lower_bound(6.0, 1.0, 1, &mut v), SobolevStatus::Ok);
        assert!(v > 0.0 && v < 0.6345);
        assert_eq!(sobolev_bessel_k(0.5, 1.0, &mut v), SobolevStatus::Ok);
        let want = (std::f64::consts::PI / 2.0).sqrt() * (-1.0f64).exp();
        assert!((v - want).abs() < 1e-14);
    }
}

#[test]
fn errors_map_to_status() {
    unsafe {
        let mut v = 0.0;
        assert_eq!(sobolev_upper_bound(1.5, 1.0, 1, &mut v), SobolevStatus::Domain);
        assert!(!last_error().is_empty());
        assert_eq!(sobolev_lower_bound(f64::INFINITY, 1.0, 1, &mut v), SobolevStatus::Domain);
        assert_eq!(sobolev_bessel_k(0.5, -1.0, &mut v), SobolevStatus::Domain);
        assert_eq!(sobolev_upper_bound(4.0, 1.0, 1, ptr::null_mut()), SobolevStatus::NullPointer);
        assert_eq!(sobolev_bracket_new(4.0, 1.0, 1, ptr::null_mut()), SobolevStatus::NullPointer);
        assert_eq!(sobolev_bracket_s_plus(ptr::null(), &mut v), SobolevStatus::NullPointer);
        let mut h: *mut SobolevBracket = ptr::null_mut();
        assert_eq!(sobolev_bracket_new(f64::NAN, 1.0, 1, &mut h), SobolevStatus::Domain);
        assert!(h.is_null());
        sobolev_bracket_free(ptr::null_mut());
    }
}

#[test]
fn truncated_error_message() {
    unsafe {
        let mut v = 0.0;
        sobolev_upper_bound(1.5, 1.0, 1, &mut v);
        let mut buf = [1 as c_char; 4];
        let len = sobolev_last_error_message(buf.as_mut_ptr(), buf.len());
        assert!(len > 3);
        assert_eq!(buf[3], 0);
    }
}

#[test]
fn header_declares_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/sobolev.h")).unwrap();
    for name in [
        "sobolev_bracket_new",
        "sobolev_bracket_free",
        "sobolev_bracket_s_plus",
        "sobolev_bracket_s_minus",
        "sobolev_bracket_rel_uncertainty",
        "sobolev_bracket_lambda_star",
        "sobolev_bracket_kind",
        "sobolev_upper_bound",
        "sobolev_lower_bound",
        "sobolev_bessel_k",
        "sobolev_last_error_message",
        "typedef struct SobolevBracket SobolevBracket",
        "SOBOLEV_STATUS_NOT_AVAILABLE",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
