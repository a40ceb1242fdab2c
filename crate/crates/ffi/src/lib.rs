//! C ABI over `inflator-core`.
//!
//! Inflators and lattices live behind opaque handles. Every call returns an
//! `InflatorStatus`; on anything but `INFLATOR_OK` the message is available
//! from `inflator_last_error` on the same thread. Strings handed out by the
//! library are freed with `inflator_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use inflator_core::fields::parse_element;
use inflator_core::fundamental::membership;
use inflator_core::inflators::{catalog, check_morphism, Inflator as CoreInflator, InflatorSpec};
use inflator_core::lattice::{flatten, rk0, rk_bot, FiniteLattice, LatticeJson};
use inflator_core::linalg::Subspace;
use inflator_core::mutation::{mutate, Line};
use inflator_core::{repro, suites, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InflatorStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    NotALattice = 5,
    NotModular = 6,
    Unknown = 7,
    Internal = 8,
    Panic = 9,
}

/// An inflator.
pub struct Inflator(CoreInflator);

/// A finite lattice.
pub struct Lattice(FiniteLattice);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(InflatorStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Syntax { .. } | Error::Json(_) | Error::Spec { .. } => InflatorStatus::Parse,
            Error::NotALattice { .. } => InflatorStatus::NotALattice,
            Error::NotModular(_) => InflatorStatus::NotModular,
            Error::Internal(_) => InflatorStatus::Internal,
            _ => InflatorStatus::Domain,
        };
        Fail(status, e.to_string())
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail(InflatorStatus::Parse, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> InflatorStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            InflatorStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside inflator".into());
            InflatorStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(
            InflatorStatus::NullPointer,
            "null string argument".into(),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(InflatorStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(InflatorStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(
            InflatorStatus::NullPointer,
            "null output pointer".into(),
        ));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_json(out: *mut *mut c_char, v: &serde_json::Value) -> Result<(), Fail> {
    let s =
        CString::new(v.to_string()).map_err(|e| Fail(InflatorStatus::Internal, e.to_string()))?;
    put(out, s.into_raw())
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into the library.
#[no_mangle]
pub extern "C" fn inflator_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn inflator_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds from a spec JSON document, or a catalog name such as "gerald".
///
/// # Safety
/// `spec` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn inflator_new(
    spec: *const c_char,
    out: *mut *mut Inflator,
) -> InflatorStatus {
    guard(|| {
        let s = str_arg(spec)?;
        let spec = match catalog::by_name(s.trim()) {
            Some(x) => x,
            None => serde_json::from_str::<InflatorSpec>(s)?,
        };
        let f = CoreInflator::build(&spec)?;
        put(out, Box::into_raw(Box::new(Inflator(f))))
    })
}

/// # Safety
/// `h` is NULL or a handle from `inflator_new`/`inflator_mutate`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn inflator_free(h: *mut Inflator) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn inflator_degree(h: *const Inflator, out: *mut usize) -> InflatorStatus {
    guard(|| put(out, handle(h)?.0.degree()))
}

/// `ς_n(V)` for a subspace JSON document; writes the directory element JSON.
///
/// # Safety
/// `h` is a live handle; `subspace` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn inflator_evaluate(
    h: *const Inflator,
    subspace: *const c_char,
    out: *mut *mut c_char,
) -> InflatorStatus {
    guard(|| {
        let f = &handle(h)?.0;
        let v: Subspace = serde_json::from_str(str_arg(subspace)?)?;
        let e = f.evaluate(v.ambient(), &v)?;
        put_json(
            out,
            &serde_json::json!({"element": e, "length": e.length()}),
        )
    })
}

/// Fundamental ring and ideal membership of an element literal.
///
/// # Safety
/// `h` is a live handle; `element` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn inflator_membership(
    h: *const Inflator,
    element: *const c_char,
    out: *mut *mut c_char,
) -> InflatorStatus {
    guard(|| {
        let f = &handle(h)?.0;
        let a = parse_element(f.source(), str_arg(element)?)?;
        put_json(out, &membership(f, &a)?.to_json())
    })
}

/// Mutation along a comma-separated line of literals; writes a new handle.
///
/// # Safety
/// `h` is a live handle; `line` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn inflator_mutate(
    h: *const Inflator,
    line: *const c_char,
    out: *mut *mut Inflator,
) -> InflatorStatus {
    guard(|| {
        let f = &handle(h)?.0;
        let xs = str_arg(line)?
            .split(',')
            .map(|x| parse_element(f.source(), x.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        let g = mutate(f, &Line::new(f.source(), xs)?)?;
        put(out, Box::into_raw(Box::new(Inflator(g))))
    })
}

/// Randomized axiom check; writes the report JSON and sets `passed`.
///
/// # Safety
/// `h` is a live handle; `out` and `passed` are writable.
#[no_mangle]
pub unsafe extern "C" fn inflator_check_morphism(
    h: *const Inflator,
    trials: usize,
    seed: u64,
    max_level: usize,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> InflatorStatus {
    guard(|| {
        let r = check_morphism(&handle(h)?.0, trials, seed, max_level);
        put(passed, r.passed())?;
        put_json(out, &serde_json::to_value(&r)?)
    })
}

/// # Safety
/// `json` is a NUL-terminated lattice document; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn inflator_lattice_new(
    json: *const c_char,
    out: *mut *mut Lattice,
) -> InflatorStatus {
    guard(|| {
        let j: LatticeJson = serde_json::from_str(str_arg(json)?)?;
        put(
            out,
            Box::into_raw(Box::new(Lattice(FiniteLattice::from_json(&j)?))),
        )
    })
}

/// # Safety
/// `h` is NULL or a handle from `inflator_lattice_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn inflator_lattice_free(h: *mut Lattice) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn inflator_lattice_is_modular(
    h: *const Lattice,
    out: *mut bool,
) -> InflatorStatus {
    guard(|| put(out, handle(h)?.0.is_modular()))
}

/// Reduced rank and rank over the bottom.
///
/// # Safety
/// `h` is a live handle; `rk0_out` and `rk_bot_out` are writable.
#[no_mangle]
pub unsafe extern "C" fn inflator_lattice_rank(
    h: *const Lattice,
    rk0_out: *mut usize,
    rk_bot_out: *mut usize,
) -> InflatorStatus {
    guard(|| {
        let l = &handle(h)?.0;
        put(rk0_out, rk0(l)?)?;
        put(rk_bot_out, rk_bot(l)?)
    })
}

/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn inflator_lattice_flatten(
    h: *const Lattice,
    out: *mut *mut c_char,
) -> InflatorStatus {
    guard(|| put_json(out, &serde_json::to_value(flatten(&handle(h)?.0)?)?))
}

/// Runs a named suite; writes the report JSON and sets `passed`.
///
/// # Safety
/// `name` is a NUL-terminated string; `out` and `passed` are writable.
#[no_mangle]
pub unsafe extern "C" fn inflator_suite(
    name: *const c_char,
    seed: u64,
    trials: usize,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> InflatorStatus {
    guard(|| {
        let name = str_arg(name)?;
        if !suites::SUITES.contains(&name) {
            return Err(Fail(
                InflatorStatus::Unknown,
                format!("unknown suite {name:?}"),
            ));
        }
        let r = suites::run(name, seed, trials, 3)?;
        put(passed, r.passed())?;
        put_json(out, &serde_json::to_value(&r)?)
    })
}

/// Runs a reproduction by id; writes the report JSON and sets `passed`.
///
/// # Safety
/// `id` is a NUL-terminated string; `out` and `passed` are writable.
#[no_mangle]
pub unsafe extern "C" fn inflator_repro(
    id: *const c_char,
    seed: u64,
    samples: usize,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> InflatorStatus {
    guard(|| {
        let id = str_arg(id)?;
        if repro::source(id).is_none() {
            return Err(Fail(
                InflatorStatus::Unknown,
                format!("unknown repro id {id:?}"),
            ));
        }
        let r = repro::run(id, seed, samples)?;
        put(passed, r.passed())?;
        put_json(out, &serde_json::to_value(&r)?)
    })
}
