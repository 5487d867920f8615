//! C interface to `dlrb-core`.
//!
//! Every function returns a [`DlrbStatus`]; on failure a message is kept for
//! the calling thread and can be read with [`dlrb_last_error`]. Strings
//! handed out by the library are released with [`dlrb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dlrb_core::cli::{basis_json, format_lie, format_poly, parse_poly, parse_rational};
use dlrb_core::drbl::DrblSystem;
use dlrb_core::gsb::{is_gsb, reduce_assoc, Mode, Rewriter, RuleSet};
use dlrb_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlrbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ParseError = 4,
    DegreeOverflow = 5,
    NotCertified = 6,
    Internal = 7,
}

/// Opaque handle to a rule system over `x1 > … > xn` with operator `P`.
pub struct DlrbSystem {
    inner: DrblSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> DlrbStatus {
    match e {
        Error::Syntax { .. } | Error::UnknownSymbol(_) | Error::ArityMismatch { .. } => {
            DlrbStatus::ParseError
        }
        Error::DegreeOverflow { .. } | Error::SizeOverflow(_) => DlrbStatus::DegreeOverflow,
        _ => DlrbStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), DlrbStatus>) -> DlrbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DlrbStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            DlrbStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, DlrbStatus> {
    if s.is_null() {
        set_error("null string");
        return Err(DlrbStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not UTF-8");
        DlrbStatus::InvalidUtf8
    })
}

fn fail(e: Error) -> DlrbStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), DlrbStatus> {
    let c = CString::new(s).map_err(|_| DlrbStatus::Internal)?;
    *out = c.into_raw();
    Ok(())
}

/// Creates a system with `n_generators` generators and weight `lambda`
/// (`"p/q"` or an integer). The handle is released with [`dlrb_system_free`].
///
/// # Safety
/// `lambda` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dlrb_system_new(
    n_generators: u32,
    lambda: *const c_char,
    out: *mut *mut DlrbSystem,
) -> DlrbStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return Err(DlrbStatus::NullPointer);
        }
        *out = ptr::null_mut();
        let lambda = parse_rational(read_str(lambda)?).map_err(|e| {
            set_error(e);
            DlrbStatus::InvalidArgument
        })?;
        if n_generators == 0 {
            set_error("at least one generator is required");
            return Err(DlrbStatus::InvalidArgument);
        }
        let inner = DrblSystem::standard(n_generators as usize, lambda);
        *out = Box::into_raw(Box::new(DlrbSystem { inner }));
        Ok(())
    })
}

/// # Safety
/// `sys` must come from [`dlrb_system_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dlrb_system_free(sys: *mut DlrbSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Normal form of `expr`. With `lie != 0` the result is a combination of
/// bracketed basis elements, otherwise an associative polynomial.
///
/// # Safety
/// `sys` must be a live handle, `expr` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dlrb_normal_form(
    sys: *const DlrbSystem,
    expr: *const c_char,
    max_degree: u32,
    lie: i32,
    out: *mut *mut c_char,
) -> DlrbStatus {
    guard(|| {
        if sys.is_null() || out.is_null() {
            set_error("null pointer");
            return Err(DlrbStatus::NullPointer);
        }
        *out = ptr::null_mut();
        let sys = &(*sys).inner;
        let alg = sys.algebra();
        let p = parse_poly(alg, read_str(expr)?).map_err(fail)?;
        let text = if lie != 0 {
            format_lie(alg.alphabet(), &sys.drbl_nf(&p, max_degree).map_err(fail)?)
        } else {
            if p.degree() > max_degree {
                return Err(fail(Error::DegreeOverflow {
                    degree: p.degree(),
                    bound: max_degree,
                }));
            }
            format_poly(alg.alphabet(), &reduce_assoc(&p, sys))
        };
        write_string(out, text)
    })
}

/// The linear basis up to `max_degree` as JSON:
/// `{"lambda": "p/q", "degrees": [{"degree": n, "count": c, "elements": [...]}]}`.
///
/// # Safety
/// `sys` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dlrb_basis_json(
    sys: *const DlrbSystem,
    max_degree: u32,
    out: *mut *mut c_char,
) -> DlrbStatus {
    guard(|| {
        if sys.is_null() || out.is_null() {
            set_error("null pointer");
            return Err(DlrbStatus::NullPointer);
        }
        *out = ptr::null_mut();
        let v = basis_json(&(*sys).inner, max_degree);
        write_string(out, v.to_string())
    })
}

/// Bounded Gröbner-Shirshov check of the full system (`s1_only == 0`) or of
/// the `g` family alone. Returns [`DlrbStatus::NotCertified`] when some
/// composition does not reduce to zero; the count goes to `failures`.
///
/// # Safety
/// `sys` must be a live handle; `failures` may be null.
#[no_mangle]
pub unsafe extern "C" fn dlrb_check_gsb(
    sys: *const DlrbSystem,
    max_degree: u32,
    s1_only: i32,
    lie: i32,
    failures: *mut u64,
) -> DlrbStatus {
    guard(|| {
        if sys.is_null() {
            set_error("null pointer");
            return Err(DlrbStatus::NullPointer);
        }
        let sys = &(*sys).inner;
        let rules = if s1_only != 0 {
            sys.s1_rules(max_degree)
        } else {
            sys.instantiate_rules(max_degree)
        };
        let rs = RuleSet::new(sys.algebra(), rules, max_degree);
        let mode = if lie != 0 { Mode::Lie } else { Mode::Assoc };
        let report = is_gsb(&rs, max_degree, mode);
        if !failures.is_null() {
            *failures = report.failures.len() as u64;
        }
        if report.passed() {
            Ok(())
        } else {
            set_error(format!("{} compositions not certified", report.failures.len()));
            Err(DlrbStatus::NotCertified)
        }
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn dlrb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn dlrb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
