//! C ABI over `bcwitt-core`.
//!
//! Values cross the boundary as opaque handles or as JSON strings in the CLI wire format.
//! Every fallible function returns a [`BcwittStatus`]; on failure the message is available
//! from [`bcwitt_last_error`] on the same thread. Strings returned through `char **` outputs
//! are owned by the caller and released with [`bcwitt_string_free`]; handles are released with
//! their `_free` function. Passing NULL to a `_free` function is a no-op.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, c_int, size_t};

use bcwitt_core::dynamical::ToralMap;
use bcwitt_core::equivariant::CyclicAction;
use bcwitt_core::json;
use bcwitt_core::qz::QZElement;
use bcwitt_core::torified::TorifiedClass;
use bcwitt_core::witt::WittVector;
use bcwitt_core::Error;

/// Status codes; the domain variants mirror the library's error kinds.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcwittStatus {
    Ok = 0,
    NotQuasiUnipotent = 1,
    NotSplit = 2,
    NotDivisible = 3,
    DegenerateIterate = 4,
    NotEffectivelyTorified = 5,
    HalfTwistPresent = 6,
    TruncationTooSmall = 7,
    InvalidInput = 8,
    NullPointer = 9,
    InvalidUtf8 = 10,
    Panic = 11,
}

/// An element of Z[Q/Z].
pub struct BcwittQz(QZElement);
/// A truncated big Witt vector.
pub struct BcwittWitt(WittVector);
/// A torified class in the T-basis.
pub struct BcwittClass(TorifiedClass);
/// An integer matrix acting on a torus.
pub struct BcwittToral(ToralMap);
/// A permutation of a finite set with finite order dividing its level.
pub struct BcwittAction(CyclicAction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Failure {
    Domain(Error),
    Null,
    Utf8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn status_of(e: &Error) -> BcwittStatus {
    match e {
        Error::NotQuasiUnipotent => BcwittStatus::NotQuasiUnipotent,
        Error::NotSplit => BcwittStatus::NotSplit,
        Error::NotDivisible(_) => BcwittStatus::NotDivisible,
        Error::DegenerateIterate(_) => BcwittStatus::DegenerateIterate,
        Error::NotEffectivelyTorified => BcwittStatus::NotEffectivelyTorified,
        Error::HalfTwistPresent => BcwittStatus::HalfTwistPresent,
        Error::TruncationTooSmall { .. } => BcwittStatus::TruncationTooSmall,
        Error::InvalidInput(_) => BcwittStatus::InvalidInput,
    }
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BcwittStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BcwittStatus::Ok,
        Ok(Err(Failure::Domain(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null)) => {
            set_error("null pointer argument".into());
            BcwittStatus::NullPointer
        }
        Ok(Err(Failure::Utf8)) => {
            set_error("string argument is not valid UTF-8".into());
            BcwittStatus::InvalidUtf8
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            BcwittStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Null);
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure::Utf8)
}

unsafe fn json_arg(s: *const c_char) -> Result<json::Value, Failure> {
    Ok(json::parse(str_arg(s)?)?)
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, Failure> {
    h.as_ref().ok_or(Failure::Null)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null);
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null);
    }
    *out = CString::new(s).expect("JSON has no interior NUL").into_raw();
    Ok(())
}

unsafe fn free<T>(h: *mut T) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Message for the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn bcwitt_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a CLI command. `argv` excludes the program name. Writes the exit code to `exit_code`
/// and the stdout text (or the usage message) to `out`.
#[no_mangle]
pub unsafe extern "C" fn bcwitt_command(
    argv: *const *const c_char,
    argc: size_t,
    exit_code: *mut c_int,
    out: *mut *mut c_char,
) -> BcwittStatus {
    guard(|| {
        if exit_code.is_null() || (argv.is_null() && argc > 0) {
            return Err(Failure::Null);
        }
        let mut args = vec!["bcwitt".to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i))?.to_string());
        }
        let result = bcwitt_core::cli::run(args);
        *exit_code = result.code;
        put_string(out, if result.stdout.is_empty() { result.stderr } else { result.stdout })
    })
}

// ---- Z[Q/Z] ----

#[no_mangle]
pub unsafe extern "C" fn bcwitt_qz_from_json(text: *const c_char, out: *mut *mut BcwittQz) -> BcwittStatus {
    guard(|| put(out, BcwittQz(json::qz_from_json(&json_arg(text)?)?)))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_qz_to_json(h: *const BcwittQz, out: *mut *mut c_char) -> BcwittStatus {
    guard(|| put_string(out, json::render(&json::qz_to_json(&handle(h)?.0))))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_qz_sigma(h: *const BcwittQz, n: u64, out: *mut *mut BcwittQz) -> BcwittStatus {
    guard(|| {
        if n == 0 {
            return Err(Error::invalid("n must be positive").into());
        }
        put(out, BcwittQz(handle(h)?.0.sigma(n)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_qz_rho(h: *const BcwittQz, n: u64, out: *mut *mut BcwittQz) -> BcwittStatus {
    guard(|| {
        if n == 0 {
            return Err(Error::invalid("n must be positive").into());
        }
        put(out, BcwittQz(handle(h)?.0.rho(n)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_qz_mul(
    a: *const BcwittQz,
    b: *const BcwittQz,
    out: *mut *mut BcwittQz,
) -> BcwittStatus {
    guard(|| put(out, BcwittQz(handle(a)?.0.mul(&handle(b)?.0))))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_qz_equal(a: *const BcwittQz, b: *const BcwittQz) -> bool {
    matches!((a.as_ref(), b.as_ref()), (Some(x), Some(y)) if x.0 == y.0)
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_qz_free(h: *mut BcwittQz) {
    free(h)
}

// ---- Witt vectors ----

/// Accepts either wire form; the rational form is expanded to `trunc`.
#[no_mangle]
pub unsafe extern "C" fn bcwitt_witt_from_json(
    text: *const c_char,
    trunc: size_t,
    out: *mut *mut BcwittWitt,
) -> BcwittStatus {
    guard(|| {
        if trunc == 0 {
            return Err(Error::invalid("truncation must be positive").into());
        }
        put(out, BcwittWitt(json::witt_from_json(&json_arg(text)?)?.to_series(trunc)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_witt_to_json(h: *const BcwittWitt, out: *mut *mut c_char) -> BcwittStatus {
    guard(|| put_string(out, json::render(&json::witt_to_json(&handle(h)?.0))))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_witt_ghost_json(h: *const BcwittWitt, out: *mut *mut c_char) -> BcwittStatus {
    guard(|| put_string(out, json::render(&json::ghost_to_json(&handle(h)?.0.ghost()))))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_witt_truncation(h: *const BcwittWitt) -> size_t {
    h.as_ref().map_or(0, |w| w.0.truncation())
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_witt_add(
    a: *const BcwittWitt,
    b: *const BcwittWitt,
    out: *mut *mut BcwittWitt,
) -> BcwittStatus {
    guard(|| put(out, BcwittWitt(handle(a)?.0.add(&handle(b)?.0))))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_witt_mul(
    a: *const BcwittWitt,
    b: *const BcwittWitt,
    out: *mut *mut BcwittWitt,
) -> BcwittStatus {
    guard(|| put(out, BcwittWitt(handle(a)?.0.mul(&handle(b)?.0))))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_witt_frobenius(
    h: *const BcwittWitt,
    n: size_t,
    out: *mut *mut BcwittWitt,
) -> BcwittStatus {
    guard(|| {
        if n == 0 {
            return Err(Error::invalid("n must be positive").into());
        }
        put(out, BcwittWitt(handle(h)?.0.frobenius(n)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_witt_verschiebung(
    h: *const BcwittWitt,
    n: size_t,
    out: *mut *mut BcwittWitt,
) -> BcwittStatus {
    guard(|| {
        if n == 0 {
            return Err(Error::invalid("n must be positive").into());
        }
        put(out, BcwittWitt(handle(h)?.0.verschiebung(n)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_witt_free(h: *mut BcwittWitt) {
    free(h)
}

// ---- torified classes ----

/// Accepts `{"T":[…]}` or `{"L":{…}}`; L-basis input must be effectively torified.
#[no_mangle]
pub unsafe extern "C" fn bcwitt_class_from_json(text: *const c_char, out: *mut *mut BcwittClass) -> BcwittStatus {
    guard(|| put(out, BcwittClass(json::class_from_json(&json_arg(text)?)?.to_t()?)))
}

/// Writes `{"T":[…]}`.
#[no_mangle]
pub unsafe extern "C" fn bcwitt_class_to_json(h: *const BcwittClass, out: *mut *mut c_char) -> BcwittStatus {
    guard(|| put_string(out, json::render(&json::t_class_to_json(&handle(h)?.0))))
}

/// Writes `{"L":{…}}`.
#[no_mangle]
pub unsafe extern "C" fn bcwitt_class_to_l_json(h: *const BcwittClass, out: *mut *mut c_char) -> BcwittStatus {
    guard(|| put_string(out, json::render(&json::l_class_to_json(&handle(h)?.0.to_l()))))
}

/// Point count over F₁ᵐ as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn bcwitt_class_points(h: *const BcwittClass, m: u64, out: *mut *mut c_char) -> BcwittStatus {
    guard(|| {
        if m == 0 {
            return Err(Error::invalid("m must be positive").into());
        }
        put_string(out, handle(h)?.0.f1m_points(m).to_string())
    })
}

/// Euler characteristic as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn bcwitt_class_euler(h: *const BcwittClass, out: *mut *mut c_char) -> BcwittStatus {
    guard(|| put_string(out, handle(h)?.0.euler_characteristic().to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_class_add(
    a: *const BcwittClass,
    b: *const BcwittClass,
    out: *mut *mut BcwittClass,
) -> BcwittStatus {
    guard(|| put(out, BcwittClass(handle(a)?.0.add(&handle(b)?.0))))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_class_mul(
    a: *const BcwittClass,
    b: *const BcwittClass,
    out: *mut *mut BcwittClass,
) -> BcwittStatus {
    guard(|| put(out, BcwittClass(handle(a)?.0.mul(&handle(b)?.0))))
}

/// F₁-zeta function truncated at `trunc`.
#[no_mangle]
pub unsafe extern "C" fn bcwitt_class_f1_zeta(
    h: *const BcwittClass,
    trunc: size_t,
    out: *mut *mut BcwittWitt,
) -> BcwittStatus {
    guard(|| {
        if trunc == 0 {
            return Err(Error::invalid("truncation must be positive").into());
        }
        put(out, BcwittWitt(bcwitt_core::zeta::f1_zeta(&handle(h)?.0, trunc).witt))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_class_free(h: *mut BcwittClass) {
    free(h)
}

// ---- toral maps ----

/// Accepts `{"rows":[[…],…]}` with integer entries.
#[no_mangle]
pub unsafe extern "C" fn bcwitt_toral_from_json(text: *const c_char, out: *mut *mut BcwittToral) -> BcwittStatus {
    guard(|| put(out, BcwittToral(ToralMap::new(json::matrix_from_json(&json_arg(text)?)?)?)))
}

/// Writes `{"exponents":{…}}` for a quasi-unipotent map.
#[no_mangle]
pub unsafe extern "C" fn bcwitt_toral_lefschetz_closed_json(
    h: *const BcwittToral,
    out: *mut *mut c_char,
) -> BcwittStatus {
    guard(|| put_string(out, json::render(&json::lefschetz_to_json(&handle(h)?.0.lefschetz_zeta_closed()?))))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_toral_lefschetz_series(
    h: *const BcwittToral,
    trunc: size_t,
    out: *mut *mut BcwittWitt,
) -> BcwittStatus {
    guard(|| {
        if trunc == 0 {
            return Err(Error::invalid("truncation must be positive").into());
        }
        put(out, BcwittWitt(handle(h)?.0.lefschetz_zeta_series(trunc)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_toral_artin_mazur_series(
    h: *const BcwittToral,
    trunc: size_t,
    out: *mut *mut BcwittWitt,
) -> BcwittStatus {
    guard(|| {
        if trunc == 0 {
            return Err(Error::invalid("truncation must be positive").into());
        }
        put(out, BcwittWitt(handle(h)?.0.artin_mazur_series(trunc)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_toral_spectral_euler(h: *const BcwittToral, out: *mut *mut BcwittQz) -> BcwittStatus {
    guard(|| put(out, BcwittQz(bcwitt_core::dynamical::spectral_euler(handle(h)?.0.matrix())?)))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_toral_free(h: *mut BcwittToral) {
    free(h)
}

// ---- cyclic actions ----

/// Accepts `{"level":N,"perm":[…]}`.
#[no_mangle]
pub unsafe extern "C" fn bcwitt_action_from_json(text: *const c_char, out: *mut *mut BcwittAction) -> BcwittStatus {
    guard(|| put(out, BcwittAction(json::action_from_json(&json_arg(text)?)?)))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_action_to_json(h: *const BcwittAction, out: *mut *mut c_char) -> BcwittStatus {
    guard(|| put_string(out, json::render(&json::action_to_json(&handle(h)?.0))))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_action_sigma(
    h: *const BcwittAction,
    n: u64,
    out: *mut *mut BcwittAction,
) -> BcwittStatus {
    guard(|| {
        if n == 0 {
            return Err(Error::invalid("n must be positive").into());
        }
        put(out, BcwittAction(handle(h)?.0.sigma_action(n)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_action_verschiebung(
    h: *const BcwittAction,
    n: u64,
    out: *mut *mut BcwittAction,
) -> BcwittStatus {
    guard(|| {
        if n == 0 {
            return Err(Error::invalid("n must be positive").into());
        }
        put(out, BcwittAction(handle(h)?.0.verschiebung_action(n)))
    })
}

/// Number of points fixed by `g^k`.
#[no_mangle]
pub unsafe extern "C" fn bcwitt_action_periodic_count(h: *const BcwittAction, k: u64, out: *mut size_t) -> BcwittStatus {
    guard(|| {
        if k == 0 {
            return Err(Error::invalid("k must be positive").into());
        }
        let n = handle(h)?.0.periodic_points(k).len();
        out.as_mut().map(|o| *o = n).ok_or(Failure::Null)
    })
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_action_euler(h: *const BcwittAction, out: *mut *mut BcwittQz) -> BcwittStatus {
    guard(|| put(out, BcwittQz(handle(h)?.0.euler_char())))
}

#[no_mangle]
pub unsafe extern "C" fn bcwitt_action_free(h: *mut BcwittAction) {
    free(h)
}
