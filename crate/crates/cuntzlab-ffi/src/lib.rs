//! C ABI for cuntzlab.
//!
//! Every fallible call returns a [`CuStatus`]; on failure the message is kept
//! per thread and read with [`cu_last_error`]. Strings handed out by the
//! library are owned by the caller and released with [`cu_string_free`].
//! Handles are opaque and released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cuntzlab::bivariant::{self, parse_expr, resolve_space, show_expr, Bivariant, Value};
use cuntzlab::catalog::Carrier;
use cuntzlab::finite::{tau_finite, FiniteQ};
use cuntzlab::order::{check_o5, check_o6};
use cuntzlab::structure_file::StructureFile;
use cuntzlab::{repro, tensor, Error};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CuStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Structure = 4,
    Invalid = 5,
    Bound = 6,
    Element = 7,
    Unknown = 8,
    NoClosedForm = 9,
    Unsupported = 10,
    Precondition = 11,
    Mismatch = 12,
    Path = 13,
    Bimorphism = 14,
    Panic = 15,
}

impl From<&Error> for CuStatus {
    fn from(e: &Error) -> CuStatus {
        match e {
            Error::Structure(_) => CuStatus::Structure,
            Error::Invalid(_) => CuStatus::Invalid,
            Error::Bound { .. } => CuStatus::Bound,
            Error::Parse(_) => CuStatus::Parse,
            Error::Element(_) => CuStatus::Element,
            Error::Unknown(_) => CuStatus::Unknown,
            Error::NoClosedForm(_) => CuStatus::NoClosedForm,
            Error::Unsupported(_) => CuStatus::Unsupported,
            Error::Precondition(_) => CuStatus::Precondition,
            Error::Mismatch(_) => CuStatus::Mismatch,
            Error::Path(_) => CuStatus::Path,
            Error::Bimorphism(_) => CuStatus::Bimorphism,
        }
    }
}

/// A validated finite Q-semigroup loaded from a structure file.
pub struct CuStructure {
    file: StructureFile,
    q: FiniteQ,
}

/// A bivariant Cu-semigroup `⟦S,T⟧`.
pub struct CuBivariant {
    inner: Bivariant,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(CuStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(CuStatus::from(&e), e.to_string())
    }
}

type Outcome = std::result::Result<(), Fail>;

fn guard(f: impl FnOnce() -> Outcome) -> CuStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CuStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            CuStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or a valid nul-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> std::result::Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(CuStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(CuStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn out_ptr<T>(p: *mut T, what: &str) -> std::result::Result<&'static mut T, Fail> {
    // SAFETY: callers pass either null or a writable location.
    unsafe { p.as_mut() }.ok_or_else(|| Fail(CuStatus::NullArgument, format!("{what} is null")))
}

fn handle<'a, T>(p: *const T, what: &str) -> std::result::Result<&'a T, Fail> {
    // SAFETY: non-null handles come from this library and are live.
    unsafe { p.as_ref() }.ok_or_else(|| Fail(CuStatus::NullArgument, format!("{what} is null")))
}

fn give(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn braces(labels: impl IntoIterator<Item = String>) -> String {
    format!("{{{}}}", labels.into_iter().collect::<Vec<_>>().join(","))
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn cu_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cu_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cu_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn structure_from(file: StructureFile) -> std::result::Result<Box<CuStructure>, Fail> {
    let q = file.to_q()?;
    Ok(Box::new(CuStructure { file, q }))
}

/// Parses and validates structure-file JSON.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cu_structure_parse(json: *const c_char, out: *mut *mut CuStructure) -> CuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let s = structure_from(StructureFile::parse(text(json, "json")?)?)?;
        *out = Box::into_raw(s);
        Ok(())
    })
}

/// Loads and validates a structure file from disk.
///
/// # Safety
/// `path` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cu_structure_load(path: *const c_char, out: *mut *mut CuStructure) -> CuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let s = structure_from(StructureFile::load(text(path, "path")?)?)?;
        *out = Box::into_raw(s);
        Ok(())
    })
}

/// # Safety
/// `h` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn cu_structure_free(h: *mut CuStructure) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `h` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cu_structure_size(h: *const CuStructure) -> usize {
    h.as_ref().map_or(0, |s| s.q.len())
}

/// Canonical JSON of the structure.
///
/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cu_structure_to_json(h: *const CuStructure, out: *mut *mut c_char) -> CuStatus {
    guard(|| {
        let s = handle(h, "structure")?;
        *out_ptr(out, "out")? = give(s.file.to_json());
        Ok(())
    })
}

/// Elements of τ(S), written `{a,b,...}`.
///
/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cu_structure_tau(h: *const CuStructure, out: *mut *mut c_char) -> CuStatus {
    guard(|| {
        let s = handle(h, "structure")?;
        let t = tau_finite(&s.q);
        *out_ptr(out, "out")? = give(braces(t.cu.pom.elements.clone()));
        Ok(())
    })
}

/// Counts O5 and O6 failures of the underlying pom.
///
/// # Safety
/// `h` is a live handle; `o5` and `o6` are writable.
#[no_mangle]
pub unsafe extern "C" fn cu_structure_axioms(h: *const CuStructure, o5: *mut usize, o6: *mut usize) -> CuStatus {
    guard(|| {
        let s = handle(h, "structure")?;
        let (w5, w6) = (check_o5(&s.q.pom)?, check_o6(&s.q.pom)?);
        *out_ptr(o5, "o5")? = w5.len();
        *out_ptr(o6, "o6")? = w6.len();
        Ok(())
    })
}

/// Checks structure-file JSON without building a handle. `violations`
/// receives the number of violated laws, and `report` (if non-null) a
/// line per violation.
///
/// # Safety
/// `json` is a nul-terminated string; `violations` is writable; `report` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn cu_validate_json(
    json: *const c_char,
    violations: *mut usize,
    report: *mut *mut c_char,
) -> CuStatus {
    guard(|| {
        let r = StructureFile::parse(text(json, "json")?)?.report()?;
        *out_ptr(violations, "violations")? = r.violations.len();
        if let Some(out) = report.as_mut() {
            let lines: Vec<String> =
                r.violations.iter().map(|v| format!("{}: ({})", v.law, v.witness.join(","))).collect();
            *out = give(lines.join("\n"));
        }
        Ok(())
    })
}

/// Builds `⟦S,T⟧`. Spaces are file paths, `0`, `+`-separated sums or catalog
/// names. `bound` caps enumeration; 0 means the library default.
///
/// # Safety
/// `source` and `target` are nul-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cu_bivariant_new(
    source: *const c_char,
    target: *const c_char,
    bound: usize,
    out: *mut *mut CuBivariant,
) -> CuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let s = resolve_space(text(source, "source")?)?;
        let t = resolve_space(text(target, "target")?)?;
        let inner = bivariant::bivariant(&s, &t, effective(bound))?;
        *out = Box::into_raw(Box::new(CuBivariant { inner }));
        Ok(())
    })
}

fn effective(bound: usize) -> usize {
    if bound == 0 {
        cuntzlab::bound_from_env()
    } else {
        bound
    }
}

/// # Safety
/// `h` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn cu_bivariant_free(h: *mut CuBivariant) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// The carrier: an element list for finite pairs, a catalog name otherwise.
///
/// # Safety
/// `h` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cu_bivariant_describe(h: *const CuBivariant, out: *mut *mut c_char) -> CuStatus {
    guard(|| {
        let b = handle(h, "bivariant")?;
        *out_ptr(out, "out")? = give(b.inner.describe());
        Ok(())
    })
}

/// Evaluates the element `x` of `⟦S,T⟧` at the element `s` of `S`.
///
/// # Safety
/// `h` is a live handle; `x` and `s` are nul-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cu_bivariant_evaluate(
    h: *const CuBivariant,
    x: *const c_char,
    s: *const c_char,
    out: *mut *mut c_char,
) -> CuStatus {
    guard(|| {
        let b = &handle(h, "bivariant")?.inner;
        let xv: Value = b.carrier.parse(text(x, "x")?)?;
        let sv = b.source.parse(text(s, "s")?)?;
        let r = b.evaluate(&xv, &sv)?;
        *out_ptr(out, "out")? = give(b.target.format(&r));
        Ok(())
    })
}

/// Composes two `S->T:ELEM` expressions, outer after inner.
///
/// # Safety
/// `outer` and `inner` are nul-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cu_compose(
    outer: *const c_char,
    inner: *const c_char,
    bound: usize,
    out: *mut *mut c_char,
) -> CuStatus {
    guard(|| {
        let bound = effective(bound);
        let (bo, y) = parse_expr(text(outer, "outer")?, bound)?;
        let (bi, x) = parse_expr(text(inner, "inner")?, bound)?;
        let (r, v) = bivariant::compose(&bo, &y, &bi, &x, bound)?;
        *out_ptr(out, "out")? = give(show_expr(&r, &v));
        Ok(())
    })
}

/// Closed form of the tensor product of two catalog carriers.
///
/// # Safety
/// `left` and `right` are nul-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cu_tensor(left: *const c_char, right: *const c_char, out: *mut *mut c_char) -> CuStatus {
    guard(|| {
        let l = Carrier::parse(text(left, "left")?)?;
        let r = Carrier::parse(text(right, "right")?)?;
        *out_ptr(out, "out")? = give(tensor::tensor_catalog(&l, &r)?.to_string());
        Ok(())
    })
}

/// Runs one reproduction case. `pass` receives the verdict and `actual` the computed output.
///
/// # Safety
/// `id` is a nul-terminated string; `pass` and `actual` are writable.
#[no_mangle]
pub unsafe extern "C" fn cu_repro(id: *const c_char, pass: *mut bool, actual: *mut *mut c_char) -> CuStatus {
    guard(|| {
        let r = repro::run_repro(text(id, "id")?, cuntzlab::bound_from_env())?;
        *out_ptr(pass, "pass")? = r.pass;
        *out_ptr(actual, "actual")? = give(r.actual);
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn take(p: *mut c_char) -> String {
        let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
        unsafe { cu_string_free(p) };
        s
    }

    #[test]
    fn status_codes_cover_every_error() {
        let errs = [
            Error::Structure(String::new()),
            Error::Parse(String::new()),
            Error::NoClosedForm(String::new()),
            Error::Path(String::new()),
        ];
        let codes: Vec<CuStatus> = errs.iter().map(CuStatus::from).collect();
        assert_eq!(codes, [CuStatus::Structure, CuStatus::Parse, CuStatus::NoClosedForm, CuStatus::Path]);
    }

    #[test]
    fn errors_set_and_clear_message() {
        let mut out = ptr::null_mut();
        let st = unsafe { cu_tensor(c"E2".as_ptr(), c"Nbar".as_ptr(), &mut out) };
        assert_eq!(st, CuStatus::Ok);
        assert_eq!(take(out), "E2");
        let st = unsafe { cu_tensor(c"M1".as_ptr(), c"Sex".as_ptr(), &mut out) };
        assert_eq!(st, CuStatus::NoClosedForm);
        assert!(!cu_last_error().is_null());
        let st = unsafe { cu_tensor(c"R2".as_ptr(), c"R3".as_ptr(), &mut out) };
        assert_eq!(st, CuStatus::Ok);
        assert!(cu_last_error().is_null());
        assert_eq!(take(out), "R{2,3}");
    }

    #[test]
    fn null_arguments_are_reported() {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { cu_tensor(ptr::null(), c"R3".as_ptr(), &mut out) }, CuStatus::NullArgument);
        assert_eq!(unsafe { cu_tensor(c"R2".as_ptr(), c"R3".as_ptr(), ptr::null_mut()) }, CuStatus::NullArgument);
        assert_eq!(unsafe { cu_structure_size(ptr::null()) }, 0);
    }
}
