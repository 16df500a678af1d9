use std::ffi::{CStr, CString};
use std::ptr;

use orbifold_voa_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ov_last_error()) }.to_str().unwrap().to_string()
}

struct Engine(*mut OvEngine);

impl Engine {
    fn new(k: u32) -> Self {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { ov_engine_new(k, &mut p) }, OvStatus::Ok);
        assert!(!p.is_null());
        Engine(p)
    }

    fn fusion(&self, a: &str, b: &str, d: &str) -> Result<u8, OvStatus> {
        let mut v = 9u8;
        match unsafe { ov_fusion(self.0, c(a).as_ptr(), c(b).as_ptr(), c(d).as_ptr(), &mut v) } {
            OvStatus::Ok => Ok(v),
            s => Err(s),
        }
    }

    fn top(&self, g: OvZhuGen, l: &str) -> Result<String, OvStatus> {
        let mut out = ptr::null_mut();
        let s = unsafe { ov_top_action(self.0, g, c(l).as_ptr(), &mut out) };
        if s != OvStatus::Ok {
            return Err(s);
        }
        let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        unsafe { ov_string_free(out) };
        Ok(text)
    }
}

impl Drop for Engine {
    fn drop(&mut self) {
        unsafe { ov_engine_free(self.0) }
    }
}

#[test]
fn fusion_values() {
    let e = Engine::new(2);
    assert_eq!(unsafe { ov_engine_k(e.0) }, 2);
    assert_eq!(e.fusion("V+", "V+", "V+"), Ok(1));
    assert_eq!(e.fusion("Vl1", "VT1+", "VT2+"), Ok(1));
    assert_eq!(e.fusion("V+", "V+", "VT1+"), Ok(0));
    assert_eq!(e.fusion("V-", "Va+", "Va+"), Ok(0));
    assert_eq!(last_error(), "");
}

#[test]
fn bound_and_parity() {
    let e = Engine::new(2);
    let mut b = 0u32;
    let s = unsafe { ov_upper_bound(e.0, c("V-").as_ptr(), c("Va+").as_ptr(), c("Va+").as_ptr(), &mut b) };
    assert_eq!(s, OvStatus::Ok);
    assert_eq!(b, 1);
    let mut q = false;
    assert_eq!(unsafe { ov_quasi_admissible(1, 1, 2, &mut q) }, OvStatus::Ok);
    assert!(q);
    assert_eq!(unsafe { ov_quasi_admissible(1, 1, 1, &mut q) }, OvStatus::Ok);
    assert!(!q);
    assert_eq!(unsafe { ov_quasi_admissible(1, 3, 1, &mut q) }, OvStatus::InvalidArgument);
}

#[test]
fn top_actions() {
    let e = Engine::new(2);
    assert_eq!(e.top(OvZhuGen::Omega, "Va+").unwrap(), "(1/2)");
    assert_eq!(e.top(OvZhuGen::J, "V-").unwrap(), "(-6)");
    assert_eq!(e.top(OvZhuGen::E, "V+").unwrap(), "0");
    let k1 = Engine::new(1);
    assert_eq!(k1.top(OvZhuGen::J, "V-"), Err(OvStatus::Unsupported));
    assert!(last_error().contains("two-dimensional"));
}

#[test]
fn errors() {
    let e = Engine::new(3);
    assert_eq!(e.fusion("Vx", "V+", "V+"), Err(OvStatus::BadLabel));
    assert!(last_error().contains("Vx"));
    assert_eq!(e.fusion("Vl3", "V+", "V+"), Err(OvStatus::BadLabel));
    let s = unsafe { ov_fusion(ptr::null(), c("V+").as_ptr(), c("V+").as_ptr(), c("V+").as_ptr(), ptr::null_mut()) };
    assert_eq!(s, OvStatus::NullPointer);
    let s = unsafe { ov_fusion(e.0, c("V+").as_ptr(), ptr::null(), c("V+").as_ptr(), &mut 0) };
    assert_eq!(s, OvStatus::NullPointer);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ov_engine_new(0, &mut p) }, OvStatus::InvalidArgument);
    assert!(p.is_null());
    assert_eq!(unsafe { ov_engine_new(1, ptr::null_mut()) }, OvStatus::NullPointer);
    unsafe { ov_engine_free(ptr::null_mut()) };
    unsafe { ov_string_free(ptr::null_mut()) };
    let name = unsafe { CStr::from_ptr(ov_status_name(OvStatus::BadLabel)) };
    assert_eq!(name.to_str().unwrap(), "bad label");
}

#[test]
fn header_is_current() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/orbifold_voa.h")).unwrap();
    for f in [
        "ov_engine_new",
        "ov_engine_free",
        "ov_fusion",
        "ov_upper_bound",
        "ov_quasi_admissible",
        "ov_top_action",
        "ov_string_free",
        "ov_last_error",
        "typedef struct OvEngine OvEngine;",
        "OV_STATUS_INCONSISTENT = 4",
    ] {
        assert!(h.contains(f), "{f}");
    }
}
