//! Exercises the C ABI exactly as a foreign caller would: raw pointers,
//! NUL-terminated strings, and status codes.

use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use fabius_capi::*;

fn cstring(text: &str) -> CString {
    CString::new(text).unwrap()
}

unsafe fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let text = CStr::from_ptr(ptr).to_str().unwrap().to_string();
    fabius_string_free(ptr);
    text
}

#[test]
fn eval_exact_dyadic_point() {
    unsafe {
        let cache = fabius_cache_new();
        let x = cstring("3/8");
        let mut value: *mut c_char = ptr::null_mut();
        let mut bound: *mut c_char = ptr::null_mut();
        let status = fabius_eval(cache, x.as_ptr(), ptr::null(), &mut value, &mut bound);
        assert_eq!(status, FABIUS_OK);
        assert_eq!(take_string(value), "73/288");
        assert_eq!(take_string(bound), "0");
        fabius_cache_free(cache);
    }
}

#[test]
fn eval_accepts_decimal_and_power_syntax() {
    unsafe {
        let cache = fabius_cache_new();
        for (input, expected) in [("0.375", "73/288"), ("2^-3", "1/288")] {
            let x = cstring(input);
            let mut value: *mut c_char = ptr::null_mut();
            let mut bound: *mut c_char = ptr::null_mut();
            let status = fabius_eval(cache, x.as_ptr(), ptr::null(), &mut value, &mut bound);
            assert_eq!(status, FABIUS_OK, "{input}");
            assert_eq!(take_string(value), expected, "{input}");
            fabius_string_free(bound);
        }
        fabius_cache_free(cache);
    }
}

#[test]
fn eval_non_dyadic_without_tolerance_is_a_mode_error() {
    unsafe {
        let cache = fabius_cache_new();
        let x = cstring("1/3");
        let mut value: *mut c_char = ptr::null_mut();
        let mut bound: *mut c_char = ptr::null_mut();
        let status = fabius_eval(cache, x.as_ptr(), ptr::null(), &mut value, &mut bound);
        assert_eq!(status, FABIUS_ERR_EXACTNESS);
        assert!(value.is_null());
        assert!(bound.is_null());

        let eps = cstring("1e-12");
        let status = fabius_eval(cache, x.as_ptr(), eps.as_ptr(), &mut value, &mut bound);
        assert_eq!(status, FABIUS_OK);
        let value = take_string(value);
        let bound = take_string(bound);
        assert!(value.contains('/'), "approx value {value} is rational");
        assert_ne!(bound, "0");
        fabius_cache_free(cache);
    }
}

#[test]
fn eval_error_statuses() {
    unsafe {
        let cache = fabius_cache_new();
        let mut value: *mut c_char = ptr::null_mut();
        let mut bound: *mut c_char = ptr::null_mut();

        let bad = cstring("abc");
        assert_eq!(
            fabius_eval(cache, bad.as_ptr(), ptr::null(), &mut value, &mut bound),
            FABIUS_ERR_PARSE
        );
        let x = cstring("1/2");
        let negative = cstring("-1/10");
        assert_eq!(
            fabius_eval(cache, x.as_ptr(), negative.as_ptr(), &mut value, &mut bound),
            FABIUS_ERR_DOMAIN
        );
        assert_eq!(
            fabius_eval(cache, ptr::null(), ptr::null(), &mut value, &mut bound),
            FABIUS_ERR_NULL
        );
        assert_eq!(
            fabius_eval(ptr::null(), x.as_ptr(), ptr::null(), &mut value, &mut bound),
            FABIUS_ERR_NULL
        );
        let invalid_utf8 = [0xffu8, 0];
        assert_eq!(
            fabius_eval(
                cache,
                invalid_utf8.as_ptr() as *const c_char,
                ptr::null(),
                &mut value,
                &mut bound
            ),
            FABIUS_ERR_UTF8
        );
        fabius_cache_free(cache);
    }
}

#[test]
fn seq_returns_json_arrays() {
    unsafe {
        let cache = fabius_cache_new();
        let name = cstring("F");
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(fabius_seq(cache, name.as_ptr(), 4, &mut json), FABIUS_OK);
        assert_eq!(take_string(json), r#"["1","1","19","2915","2788989"]"#);

        let name = cstring("c");
        assert_eq!(fabius_seq(cache, name.as_ptr(), 2, &mut json), FABIUS_OK);
        assert_eq!(take_string(json), r#"["1","1/9","19/675"]"#);

        let name = cstring("R");
        assert_eq!(
            fabius_seq(cache, name.as_ptr(), 0, &mut json),
            FABIUS_ERR_DOMAIN
        );
        let name = cstring("q");
        assert_eq!(
            fabius_seq(cache, name.as_ptr(), 3, &mut json),
            FABIUS_ERR_PARSE
        );
        fabius_cache_free(cache);
    }
}

#[test]
fn common_denominator_levels() {
    unsafe {
        let cache = fabius_cache_new();
        let mut lcm: *mut c_char = ptr::null_mut();
        assert_eq!(fabius_common_denominator(cache, 3, &mut lcm), FABIUS_OK);
        assert_eq!(take_string(lcm), "288");
        assert_eq!(
            fabius_common_denominator(cache, 0, &mut lcm),
            FABIUS_ERR_DOMAIN
        );
        fabius_cache_free(cache);
    }
}

#[test]
fn verify_reports_outcome() {
    unsafe {
        let cache = fabius_cache_new();
        let suite = cstring("parity");
        let mut passed: c_int = -1;
        assert_eq!(
            fabius_verify(cache, suite.as_ptr(), 12, &mut passed),
            FABIUS_OK
        );
        assert_eq!(passed, 1);

        let bogus = cstring("bogus");
        assert_eq!(
            fabius_verify(cache, bogus.as_ptr(), 12, &mut passed),
            FABIUS_ERR_PARSE
        );
        fabius_cache_free(cache);
    }
}

#[test]
fn frees_tolerate_null() {
    unsafe {
        fabius_string_free(ptr::null_mut());
        fabius_cache_free(ptr::null_mut());
    }
}
