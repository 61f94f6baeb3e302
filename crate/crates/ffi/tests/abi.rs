use std::ffi::{CStr, CString};
use std::ptr;

use isg_core::fixtures;
use isg_ffi::*;

fn cstr(v: &serde_json::Value) -> CString {
    CString::new(v.to_string()).unwrap()
}

fn last_error() -> String {
    let p = isg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn semigroup_handle_round_trip() {
    let json = cstr(&fixtures::get("closure5"));
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(isg_semigroup_from_json(json.as_ptr(), &mut h), IsgStatus::Ok);
        let mut n = 0usize;
        assert_eq!(isg_semigroup_size(h, &mut n), IsgStatus::Ok);
        assert_eq!(n, 5);
        for a in 0..n {
            let mut s = 0usize;
            assert_eq!(isg_semigroup_star(h, a, &mut s), IsgStatus::Ok);
            let (mut x, mut y) = (0usize, 0usize);
            isg_semigroup_product(h, a, s, &mut x);
            isg_semigroup_product(h, x, a, &mut y);
            assert_eq!(y, a);
            let mut leq = false;
            assert_eq!(isg_semigroup_natural_leq(h, a, a, &mut leq), IsgStatus::Ok);
            assert!(leq);
        }
        let mut out = 0usize;
        assert_eq!(isg_semigroup_product(h, 0, 99, &mut out), IsgStatus::OutOfRange);
        assert!(last_error().contains("99"));
        let mut eu = false;
        assert_eq!(isg_semigroup_is_e_unitary(h, &mut eu), IsgStatus::Ok);
        isg_semigroup_free(h);
    }
}

#[test]
fn null_and_malformed_arguments() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(isg_semigroup_from_json(ptr::null(), &mut h), IsgStatus::NullPointer);
        let bad = CString::new("{\"table\": [[0, 1]]}").unwrap();
        assert_eq!(isg_semigroup_from_json(bad.as_ptr(), &mut h), IsgStatus::InputError);
        let graph = cstr(&fixtures::get("bouquet1"));
        assert_eq!(isg_semigroup_from_json(graph.as_ptr(), &mut h), IsgStatus::InputError);
        assert!(h.is_null());
        let mut n = 0usize;
        assert_eq!(isg_semigroup_size(ptr::null(), &mut n), IsgStatus::NullPointer);
        isg_semigroup_free(ptr::null_mut());
        isg_string_free(ptr::null_mut());
    }
}

#[test]
fn graph_orthogonality() {
    for name in ["bouquet2", "parallel2"] {
        let json = cstr(&fixtures::get(name));
        let mut g = ptr::null_mut();
        unsafe {
            assert_eq!(isg_graph_from_json(json.as_ptr(), &mut g), IsgStatus::Ok);
            let mut v = usize::MAX;
            assert_eq!(isg_graph_orthogonality(g, 3, &mut v), IsgStatus::Ok);
            assert_eq!(v, 0);
            isg_graph_free(g);
        }
    }
}

#[test]
fn shift_spectrum() {
    let (mut min, mut norm) = (0.0, 0.0);
    unsafe {
        assert_eq!(isg_shift_min_eig(5, &mut min), IsgStatus::Ok);
        assert_eq!(isg_shift_norm_bound(100, &mut norm), IsgStatus::Ok);
    }
    assert!((min - (1.0 - 2.0 * (std::f64::consts::PI / 7.0).cos())).abs() < 1e-9);
    assert!(norm >= 2.99);
}

#[test]
fn run_command_returns_report() {
    let job = cstr(&serde_json::json!({"command": "e-unitary", "input": fixtures::get("cyclic4")}));
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(isg_run_command(job.as_ptr(), &mut report), IsgStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(report).to_str().unwrap()).unwrap();
        assert_eq!(v["e_unitary"], true);
        isg_string_free(report);

        let job = cstr(&serde_json::json!({"command": "no-such-command"}));
        assert_eq!(isg_run_command(job.as_ptr(), &mut report), IsgStatus::InputError);
        assert!(!report.is_null());
        isg_string_free(report);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/isg.h");
    for name in [
        "isg_last_error",
        "isg_string_free",
        "isg_semigroup_from_json",
        "isg_semigroup_free",
        "isg_semigroup_size",
        "isg_semigroup_product",
        "isg_semigroup_star",
        "isg_semigroup_natural_leq",
        "isg_semigroup_is_e_unitary",
        "isg_graph_from_json",
        "isg_graph_free",
        "isg_graph_orthogonality",
        "isg_shift_min_eig",
        "isg_shift_norm_bound",
        "isg_run_command",
        "typedef struct IsgSemigroup IsgSemigroup",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
