//! C ABI over `tagforge`.
//!
//! Every fallible function returns a [`TfStatus`]; on failure a message is
//! kept per thread and can be read with [`tf_last_error_message`]. Tag sets
//! are opaque handles released with [`tf_tagset_free`]. No function unwinds
//! across the boundary: panics become `TF_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use tagforge::cycle_packing::{combined_design, DEFAULT_MAX_PERIOD};
use tagforge::ilp::{build_model, extract_tags, solve_ilp, ModelOptions};
use tagforge::token_graph::{build_layered, Stability};
use tagforge::tokens::{DnaString, TokenSet};
use tagforge::tree_search::{tree_search, Availability, Pairwise, Provenance, TagSet, TokenMode};
use tagforge::verify::{parse_tags, stats, verify_tagset};
use tagforge::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfStatus {
    Ok = 0,
    NullPointer = 1,
    Parameter = 2,
    Input = 3,
    Contract = 4,
    Solver = 5,
    Io = 6,
    OutOfRange = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfMethod {
    Tree = 0,
    CycleTree = 1,
    Ilp = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfStabilityKind {
    Length = 0,
    MinWeight = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfPairwise {
    C = 0,
    Cbar = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfTokenMode {
    Unique = 0,
    Multiple = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfProvenance {
    TreeSearch = 0,
    CyclePacking = 1,
    Ilp = 2,
}

/// Design request. Fill with [`tf_design_params_default`] first.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TfDesignParams {
    pub method: TfMethod,
    pub c: u32,
    pub stability: TfStabilityKind,
    /// `l` for `TF_STABILITY_KIND_LENGTH`, `h` for `TF_STABILITY_KIND_MIN_WEIGHT`.
    pub stability_value: u32,
    pub pairwise: TfPairwise,
    /// Ignored by `TF_METHOD_CYCLE_TREE` (always multiple) and `TF_METHOD_ILP` (always unique).
    pub token_mode: TfTokenMode,
    pub max_period: usize,
    /// Nonzero keeps the paired C0 cut rows in the ILP.
    pub cut5: u8,
    pub time_limit_seconds: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TfStats {
    pub tags: usize,
    pub c_tokens: usize,
    pub pct_cyclic: f64,
}

/// Opaque tag set handle.
pub struct TfTagSet {
    set: TagSet,
    texts: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: TfStatus, msg: impl Into<String>) -> TfStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> TfStatus {
    match e {
        Error::Parameter(_) => TfStatus::Parameter,
        Error::Input { .. } | Error::InvalidInput(_) | Error::LpParse(_) => TfStatus::Input,
        Error::Contract(_) => TfStatus::Contract,
        Error::Solver(_) => TfStatus::Solver,
        Error::Io(_) => TfStatus::Io,
    }
}

fn guard(f: impl FnOnce() -> TfStatus) -> TfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(TfStatus::Panic, format!("panic: {msg}"))
        }
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return fail(status_of(&err), err.to_string()),
        }
    };
}

/// The message of the last failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn tf_clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Writes the number of c-tokens for `c` to `*out`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_token_count(c: u32, out: *mut usize) -> TfStatus {
    guard(|| {
        if out.is_null() {
            return fail(TfStatus::NullPointer, "out is NULL");
        }
        let tokens = tri!(TokenSet::new(c));
        unsafe { *out = tokens.len() };
        TfStatus::Ok
    })
}

/// # Safety
/// `params` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_design_params_default(params: *mut TfDesignParams) -> TfStatus {
    if params.is_null() {
        return fail(TfStatus::NullPointer, "params is NULL");
    }
    unsafe {
        *params = TfDesignParams {
            method: TfMethod::Tree,
            c: 4,
            stability: TfStabilityKind::Length,
            stability_value: 20,
            pairwise: TfPairwise::C,
            token_mode: TfTokenMode::Multiple,
            max_period: DEFAULT_MAX_PERIOD,
            cut5: 1,
            time_limit_seconds: 600.0,
        }
    };
    TfStatus::Ok
}

fn stability(kind: TfStabilityKind, value: u32) -> Stability {
    match kind {
        TfStabilityKind::Length => Stability::Length(value),
        TfStabilityKind::MinWeight => Stability::Weight(value),
    }
}

fn pairwise(p: TfPairwise) -> Pairwise {
    match p {
        TfPairwise::C => Pairwise::C,
        TfPairwise::Cbar => Pairwise::Cbar,
    }
}

fn token_mode(m: TfTokenMode) -> TokenMode {
    match m {
        TfTokenMode::Unique => TokenMode::Unique,
        TfTokenMode::Multiple => TokenMode::Multiple,
    }
}

fn run_design(p: &TfDesignParams) -> Result<TagSet, TfStatus> {
    let lift = |e: Error| fail(status_of(&e), e.to_string());
    let tokens = TokenSet::new(p.c).map_err(lift)?;
    let st = stability(p.stability, p.stability_value);
    let pw = pairwise(p.pairwise);
    match p.method {
        TfMethod::Tree => {
            let mut avail = Availability::new(&tokens, pw);
            Ok(tree_search(&tokens, st, pw, token_mode(p.token_mode), &mut avail))
        }
        TfMethod::CycleTree => Ok(combined_design(&tokens, st, pw, p.max_period).0),
        TfMethod::Ilp => {
            if pw != Pairwise::C {
                return Err(fail(TfStatus::Parameter, "the ILP supports pairwise C only"));
            }
            let limit = Duration::try_from_secs_f64(p.time_limit_seconds)
                .ok()
                .filter(|d| !d.is_zero())
                .ok_or_else(|| fail(TfStatus::Parameter, "time limit must be positive"))?;
            let g = build_layered(&tokens, st).map_err(lift)?;
            let opts = ModelOptions {
                cut5: p.cut5 != 0,
                ..ModelOptions::default()
            };
            let model = build_model(&g, &tokens, opts);
            let sol = solve_ilp(&model, limit).map_err(lift)?;
            extract_tags(&model, &sol.values, &g, &tokens).map_err(lift)
        }
    }
}

fn into_handle(set: TagSet) -> *mut TfTagSet {
    let texts = set
        .sequences()
        .map(|s| CString::new(s.to_string()).expect("DNA text has no NUL"))
        .collect();
    Box::into_raw(Box::new(TfTagSet { set, texts }))
}

/// Runs a design and, on success, stores a new handle in `*out`. The result
/// has passed the verifier; an infeasible design is reported as
/// `TF_STATUS_CONTRACT`.
///
/// # Safety
/// `params` must be NULL or point to an initialized `TfDesignParams`; `out`
/// must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_design(params: *const TfDesignParams, out: *mut *mut TfTagSet) -> TfStatus {
    guard(|| {
        if params.is_null() || out.is_null() {
            return fail(TfStatus::NullPointer, "params or out is NULL");
        }
        let p = unsafe { *params };
        let set = match run_design(&p) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let seqs: Vec<DnaString> = set.sequences().cloned().collect();
        let report = verify_tagset(&seqs, set.c, set.stability, set.pairwise, set.token_mode);
        if !report.is_feasible() {
            return fail(
                TfStatus::Contract,
                format!("design failed verification: {}", report.violations[0]),
            );
        }
        unsafe { *out = into_handle(set) };
        TfStatus::Ok
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `set` must be NULL or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn tf_tagset_free(set: *mut TfTagSet) {
    if !set.is_null() {
        drop(unsafe { Box::from_raw(set) });
    }
}

/// Number of tags, or 0 for NULL.
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_tagset_len(set: *const TfTagSet) -> usize {
    unsafe { set.as_ref() }.map_or(0, |s| s.set.len())
}

/// Borrowed NUL-terminated text of tag `index`, valid while the handle
/// lives; NULL when out of range.
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tf_tagset_tag(set: *const TfTagSet, index: usize) -> *const c_char {
    match unsafe { set.as_ref() }.and_then(|s| s.texts.get(index)) {
        Some(t) => t.as_ptr(),
        None => {
            set_error(format!("tag index {index} out of range"));
            ptr::null()
        }
    }
}

/// # Safety
/// `set` must be NULL or a live handle; `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_tagset_provenance(
    set: *const TfTagSet,
    index: usize,
    out: *mut TfProvenance,
) -> TfStatus {
    let (Some(s), false) = (unsafe { set.as_ref() }, out.is_null()) else {
        return fail(TfStatus::NullPointer, "set or out is NULL");
    };
    let Some(tag) = s.set.tags.get(index) else {
        return fail(TfStatus::OutOfRange, format!("tag index {index} out of range"));
    };
    let p = match tag.provenance {
        Provenance::TreeSearch => TfProvenance::TreeSearch,
        Provenance::CyclePacking => TfProvenance::CyclePacking,
        Provenance::Ilp => TfProvenance::Ilp,
    };
    unsafe { *out = p };
    TfStatus::Ok
}

/// # Safety
/// `set` must be NULL or a live handle; `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_tagset_stats(set: *const TfTagSet, out: *mut TfStats) -> TfStatus {
    let (Some(s), false) = (unsafe { set.as_ref() }, out.is_null()) else {
        return fail(TfStatus::NullPointer, "set or out is NULL");
    };
    let st = stats(&s.set);
    unsafe {
        *out = TfStats {
            tags: st.tags,
            c_tokens: st.c_tokens,
            pct_cyclic: st.pct_cyclic,
        }
    };
    TfStatus::Ok
}

/// Verifies newline-separated tags (the tag file format) and writes the
/// number of violations to `*violations`.
///
/// # Safety
/// `text` must be NULL or a NUL-terminated string; `violations` must be NULL
/// or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_verify_text(
    text: *const c_char,
    c: u32,
    kind: TfStabilityKind,
    value: u32,
    pw: TfPairwise,
    mode: TfTokenMode,
    violations: *mut usize,
) -> TfStatus {
    guard(|| {
        if text.is_null() || violations.is_null() {
            return fail(TfStatus::NullPointer, "text or violations is NULL");
        }
        let Ok(text) = unsafe { CStr::from_ptr(text) }.to_str() else {
            return fail(TfStatus::Input, "text is not UTF-8");
        };
        if c == 0 {
            return fail(TfStatus::Parameter, "c must be at least 1");
        }
        let tags: Vec<DnaString> = tri!(parse_tags(text)).into_iter().map(|(s, _)| s).collect();
        let report = verify_tagset(&tags, c, stability(kind, value), pairwise(pw), token_mode(mode));
        if let Some(v) = report.violations.first() {
            set_error(v.to_string());
        }
        unsafe { *violations = report.violations.len() };
        TfStatus::Ok
    })
}
