//! C ABI over the fabius library: an opaque shared cache handle,
//! UTF-8 rational strings in canonical `p/q` form, and integer status
//! codes.
//!
//! Every string handed out is allocated by Rust and must be released
//! with [`fabius_string_free`]. Point and tolerance arguments accept
//! the same syntax as the CLI: `p/q`, an integer, a decimal like
//! `0.375` or `1e-30`, or `2^-7`. All entry points are panic-safe —
//! internal failures surface as [`FABIUS_ERR_INTERNAL`], never as an
//! unwind across the boundary.

use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::Zero;

use fabius::cli::parse_rational_input;
use fabius::{audit, denominators, eval, sequences, Error, ExactRational, SequenceCache};

/// Success.
pub const FABIUS_OK: c_int = 0;
/// A required pointer argument was null.
pub const FABIUS_ERR_NULL: c_int = 1;
/// A string argument was not valid UTF-8.
pub const FABIUS_ERR_UTF8: c_int = 2;
/// A string argument did not parse (point syntax, sequence or suite name).
pub const FABIUS_ERR_PARSE: c_int = 3;
/// A domain violation: index out of range, negative tolerance, and the like.
pub const FABIUS_ERR_DOMAIN: c_int = 4;
/// Exact evaluation (tolerance omitted or zero) of a non-dyadic point.
pub const FABIUS_ERR_EXACTNESS: c_int = 5;
/// An internal consistency check failed; results must not be trusted.
pub const FABIUS_ERR_INTERNAL: c_int = 6;

/// Opaque, thread-safe cache of sequence prefixes shared by every call
/// made through the same handle. Create with [`fabius_cache_new`],
/// release with [`fabius_cache_free`].
pub struct FabiusCache {
    inner: SequenceCache,
}

fn status_for(err: &Error) -> c_int {
    match err {
        Error::Parse { .. } => FABIUS_ERR_PARSE,
        Error::NonDyadicExact(_) => FABIUS_ERR_EXACTNESS,
        Error::Inconsistency(_) => FABIUS_ERR_INTERNAL,
        _ => FABIUS_ERR_DOMAIN,
    }
}

fn guarded(body: impl FnOnce() -> c_int) -> c_int {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(code) => code,
        Err(_) => FABIUS_ERR_INTERNAL,
    }
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        return Err(FABIUS_ERR_NULL);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| FABIUS_ERR_UTF8)
}

unsafe fn write_string(out: *mut *mut c_char, text: String) {
    // Canonical rationals and JSON contain no interior NUL.
    *out = CString::new(text).expect("no interior NUL").into_raw();
}

/// Allocate a fresh cache handle. Never returns null (allocation
/// failure aborts).
#[no_mangle]
pub extern "C" fn fabius_cache_new() -> *mut FabiusCache {
    Box::into_raw(Box::new(FabiusCache {
        inner: SequenceCache::new(),
    }))
}

/// Release a cache handle. Passing null is a no-op.
///
/// # Safety
/// `cache` must be null or a pointer returned by [`fabius_cache_new`]
/// that has not been freed, with no other thread using it concurrently.
#[no_mangle]
pub unsafe extern "C" fn fabius_cache_free(cache: *mut FabiusCache) {
    if !cache.is_null() {
        drop(Box::from_raw(cache));
    }
}

/// Release a string returned by this library. Passing null is a no-op.
///
/// # Safety
/// `s` must be null or a string pointer produced by a `fabius_*` call,
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fabius_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Evaluate `F(x)` within tolerance `eps`.
///
/// `eps` may be null, which demands exactness and is admitted only for
/// dyadic `x` (otherwise [`FABIUS_ERR_EXACTNESS`]). On success
/// `*out_value` and `*out_error_bound` receive canonical rationals
/// (bound `0` means exact); both must be freed with
/// [`fabius_string_free`]. On any error nothing is written.
///
/// # Safety
/// `cache` must be a live handle from [`fabius_cache_new`]; `x` (and
/// `eps` when non-null) must be NUL-terminated strings; `out_value` and
/// `out_error_bound` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fabius_eval(
    cache: *const FabiusCache,
    x: *const c_char,
    eps: *const c_char,
    out_value: *mut *mut c_char,
    out_error_bound: *mut *mut c_char,
) -> c_int {
    if cache.is_null() || out_value.is_null() || out_error_bound.is_null() {
        return FABIUS_ERR_NULL;
    }
    let x_text = match read_utf8(x) {
        Ok(text) => text,
        Err(code) => return code,
    };
    let eps_text = if eps.is_null() {
        None
    } else {
        match read_utf8(eps) {
            Ok(text) => Some(text),
            Err(code) => return code,
        }
    };
    let cache = &(*cache).inner;
    guarded(|| {
        let x = match parse_rational_input(x_text) {
            Ok(x) => x,
            Err(e) => return status_for(&e),
        };
        let eps = match eps_text {
            Some(text) => match parse_rational_input(text) {
                Ok(eps) => eps,
                Err(e) => return status_for(&e),
            },
            None => ExactRational::zero(),
        };
        match eval::f_eval(&x, &eps, cache) {
            Ok(result) => {
                write_string(out_value, result.value.to_string());
                write_string(out_error_bound, result.error_bound.to_string());
                FABIUS_OK
            }
            Err(e) => status_for(&e),
        }
    })
}

/// Write sequence values `name[0..=max]` (`name` one of `"c"`, `"d"`,
/// `"F"`, `"G"`, `"R"`; `R` starts at index 1 and requires `max >= 1`)
/// to `*out_json` as a JSON array of canonical value strings. Free with
/// [`fabius_string_free`].
///
/// # Safety
/// `cache` must be a live handle; `name` a NUL-terminated string;
/// `out_json` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fabius_seq(
    cache: *const FabiusCache,
    name: *const c_char,
    max: u32,
    out_json: *mut *mut c_char,
) -> c_int {
    if cache.is_null() || out_json.is_null() {
        return FABIUS_ERR_NULL;
    }
    let name = match read_utf8(name) {
        Ok(text) => text,
        Err(code) => return code,
    };
    let cache = &(*cache).inner;
    guarded(|| {
        let max = max as usize;
        let rationals = |values: Vec<ExactRational>| -> Vec<String> {
            values.iter().map(|v| v.to_string()).collect()
        };
        let values = match name {
            "c" => rationals(sequences::c_seq(max, cache)),
            "d" => rationals(sequences::d_seq(max, cache)),
            "F" => match sequences::f_seq(max, cache) {
                Ok(v) => v.iter().map(|x| x.to_string()).collect(),
                Err(e) => return status_for(&e),
            },
            "G" => match sequences::g_seq(max, cache) {
                Ok(v) => v.iter().map(|x| x.to_string()).collect(),
                Err(e) => return status_for(&e),
            },
            "R" => match sequences::r_seq(max, cache) {
                Ok(v) => v.iter().map(|x| x.to_string()).collect(),
                Err(e) => return status_for(&e),
            },
            _ => return FABIUS_ERR_PARSE,
        };
        write_string(
            out_json,
            serde_json::to_string(&values).expect("string arrays serialize"),
        );
        FABIUS_OK
    })
}

/// Compute the common denominator of the level-`n` dyadic values
/// (`n >= 1`) and write it to `*out_lcm` as a decimal integer string.
/// Free with [`fabius_string_free`].
///
/// # Safety
/// `cache` must be a live handle; `out_lcm` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fabius_common_denominator(
    cache: *const FabiusCache,
    level: u32,
    out_lcm: *mut *mut c_char,
) -> c_int {
    if cache.is_null() || out_lcm.is_null() {
        return FABIUS_ERR_NULL;
    }
    let cache = &(*cache).inner;
    guarded(|| match denominators::common_denominator(level, cache) {
        Ok(row) => {
            write_string(out_lcm, row.lcm.to_string());
            FABIUS_OK
        }
        Err(e) => status_for(&e),
    })
}

/// Run one verification suite (`"reshetnikov"`, `"valuation"`,
/// `"parity"`, `"cross"`, `"eval"`, `"denominators"`, or
/// `"conjecture"`) up to index `max`. Returns [`FABIUS_OK`] when the
/// suite ran, writing 1 to `*out_passed` if every check held and 0
/// otherwise; statuses other than `FABIUS_OK` mean the suite could not
/// run at all.
///
/// # Safety
/// `cache` must be a live handle; `suite` a NUL-terminated string;
/// `out_passed` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fabius_verify(
    cache: *const FabiusCache,
    suite: *const c_char,
    max: u32,
    out_passed: *mut c_int,
) -> c_int {
    if cache.is_null() || out_passed.is_null() {
        return FABIUS_ERR_NULL;
    }
    let suite = match read_utf8(suite) {
        Ok(text) => text,
        Err(code) => return code,
    };
    let cache = &(*cache).inner;
    guarded(|| match audit::run_named_suite(suite, max, cache) {
        Ok(report) => {
            *out_passed = c_int::from(report.passed());
            FABIUS_OK
        }
        Err(e) => status_for(&e),
    })
}
