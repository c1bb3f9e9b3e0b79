//! C ABI for `roughmeasure`.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free` function. Every fallible call returns an
//! [`RmStatus`] and writes its result through an out-pointer; on failure the
//! message is available from [`rm_last_error`] on the same thread. Strings
//! returned through out-pointers are NUL-terminated UTF-8 and must be
//! released with [`rm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use roughmeasure::approximations::{resolve_operator, ApproximationOperator};
use roughmeasure::baseline_metrics::{divergence_report, rates, ConfusionCounts, MetricMode};
use roughmeasure::measures::{amalg, finv, nabla};
use roughmeasure::partial_algebra::{check_groups, AxiomGroup, CheckOptions, FiniteStructure};
use roughmeasure::rough_core::{GranularSpace, ObjectSet, SpaceOptions};
use roughmeasure::Error;

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RmStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed input: bad JSON, unknown object, unknown operator, ...
    InvalidInput = 3,
    /// An operation's precondition does not hold for the given input.
    Precondition = 4,
    /// The input exceeds an exhaustive-enumeration cap.
    CapExceeded = 5,
    /// An internal error; the library state is unaffected.
    Internal = 6,
}

/// A granular approximation space (universe, granules, neighborhoods).
pub struct RmSpace {
    space: GranularSpace,
}

/// A finite structure with operation tables, ready for axiom checking.
pub struct RmStructure {
    structure: FiniteStructure,
}

/// How `rm_metrics_rates` reads the rate denominators.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RmMetricMode {
    /// Rates over predicted totals.
    Paper = 0,
    /// Rates over actual-class totals.
    Conventional = 1,
    /// Both modes plus the divergence report.
    Both = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(text).expect("NULs removed")));
}

fn status_of(e: &Error) -> RmStatus {
    match e {
        Error::Precondition(_) => RmStatus::Precondition,
        Error::CapExceeded { .. } => RmStatus::CapExceeded,
        _ => RmStatus::InvalidInput,
    }
}

/// Runs `f`, converting errors and panics to a status and recording the
/// message for `rm_last_error`.
fn guard(f: impl FnOnce() -> Result<(), (RmStatus, String)>) -> RmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RmStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            RmStatus::Internal
        }
    }
}

fn lib<T>(r: roughmeasure::Result<T>) -> Result<T, (RmStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

/// # Safety
/// `p` is NULL or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (RmStatus, String)> {
    if p.is_null() {
        return Err((RmStatus::NullArgument, format!("`{what}` is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (RmStatus::InvalidUtf8, format!("`{what}` is not valid UTF-8")))
}

/// # Safety
/// `out` is NULL or valid for writes.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (RmStatus, String)> {
    if out.is_null() {
        return Err((RmStatus::NullArgument, "`out` is NULL".into()));
    }
    let c = CString::new(s).map_err(|_| (RmStatus::Internal, "result contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// # Safety
/// `p` is NULL or a handle returned by this library and not yet freed.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (RmStatus, String)> {
    p.as_ref().ok_or_else(|| (RmStatus::NullArgument, format!("`{what}` is NULL")))
}

/// Message for the last failed call on this thread, or NULL after a
/// successful call. Valid until the next call on this thread; do not free.
#[no_mangle]
pub extern "C" fn rm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` is NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Reads a granulation JSON document (`pairs`, `blocks` or `neighborhoods`).
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rm_space_from_json(json: *const c_char, out: *mut *mut RmSpace) -> RmStatus {
    guard(|| {
        if out.is_null() {
            return Err((RmStatus::NullArgument, "`out` is NULL".into()));
        }
        let space = lib(GranularSpace::from_json(text(json, "json")?, SpaceOptions::default()))?;
        *out = Box::into_raw(Box::new(RmSpace { space }));
        Ok(())
    })
}

/// Releases a space. NULL is ignored.
///
/// # Safety
/// `space` is NULL or a handle from `rm_space_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rm_space_free(space: *mut RmSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Number of objects in the space's universe; 0 for NULL.
///
/// # Safety
/// `space` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rm_space_len(space: *const RmSpace) -> usize {
    space.as_ref().map_or(0, |s| s.space.universe().len())
}

fn operator(space: &GranularSpace, spec: &str) -> Result<ApproximationOperator, (RmStatus, String)> {
    lib(resolve_operator(spec, space))
}

fn subset(space: &GranularSpace, s: &str) -> Result<ObjectSet, (RmStatus, String)> {
    lib(ObjectSet::parse(space.universe(), s))
}

/// Applies the operator `op` (`l`, `u`, `ub`, `lk:K`, `uk:K`, `id`,
/// `fix:FILE`) to `subset` (`{x1,x2}` or `x1,x2`) and writes the rendered
/// result.
///
/// # Safety
/// String arguments are NUL-terminated; `space` is a live handle; `out` is
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rm_approx(
    space: *const RmSpace,
    op: *const c_char,
    subset_text: *const c_char,
    out: *mut *mut c_char,
) -> RmStatus {
    guard(|| {
        let s = &handle(space, "space")?.space;
        let o = operator(s, text(op, "op")?)?;
        let x = subset(s, text(subset_text, "subset")?)?;
        put_string(out, lib(o.apply(&x))?.to_string())
    })
}

type Measure3 = fn(
    &ObjectSet,
    &ApproximationOperator,
    &ApproximationOperator,
    &ApproximationOperator,
) -> roughmeasure::Result<ObjectSet>;

/// # Safety
/// As for [`rm_nabla`].
unsafe fn measure3(
    f: Measure3,
    space: *const RmSpace,
    ops: [*const c_char; 3],
    subset_text: *const c_char,
    out: *mut *mut c_char,
) -> RmStatus {
    guard(|| {
        let s = &handle(space, "space")?.space;
        let [a, b, c] = [
            operator(s, text(ops[0], "a")?)?,
            operator(s, text(ops[1], "b")?)?,
            operator(s, text(ops[2], "c")?)?,
        ];
        let x = subset(s, text(subset_text, "subset")?)?;
        put_string(out, lib(f(&x, &a, &b, &c))?.to_string())
    })
}

/// `nabla(x, a, b, c) = (x^a \ x^b)^c ∪ (x^b \ x^a)^c`, rendered.
///
/// # Safety
/// String arguments are NUL-terminated; `space` is a live handle; `out` is
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rm_nabla(
    space: *const RmSpace,
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    subset_text: *const c_char,
    out: *mut *mut c_char,
) -> RmStatus {
    measure3(nabla, space, [a, b, c], subset_text, out)
}

/// `amalg(x, a, b, c) = (x^b \ x^a)^c`, rendered.
///
/// # Safety
/// As for [`rm_nabla`].
#[no_mangle]
pub unsafe extern "C" fn rm_amalg(
    space: *const RmSpace,
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    subset_text: *const c_char,
    out: *mut *mut c_char,
) -> RmStatus {
    measure3(amalg, space, [a, b, c], subset_text, out)
}

/// `finv(x, l1, ls, u1, us) = nabla(x, l1, ls, us) ∪ nabla(x, ls, l1, u1)`,
/// rendered.
///
/// # Safety
/// As for [`rm_nabla`].
#[no_mangle]
pub unsafe extern "C" fn rm_finv(
    space: *const RmSpace,
    l1: *const c_char,
    ls: *const c_char,
    u1: *const c_char,
    us: *const c_char,
    subset_text: *const c_char,
    out: *mut *mut c_char,
) -> RmStatus {
    guard(|| {
        let s = &handle(space, "space")?.space;
        let ops = [(l1, "l1"), (ls, "ls"), (u1, "u1"), (us, "us")]
            .into_iter()
            .map(|(p, name)| operator(s, text(p, name)?))
            .collect::<Result<Vec<_>, _>>()?;
        let x = subset(s, text(subset_text, "subset")?)?;
        put_string(out, lib(finv(&x, &ops[0], &ops[1], &ops[2], &ops[3]))?.to_string())
    })
}

/// Reads a structure JSON document (carrier, leq, constants, unary, binary).
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rm_structure_from_json(json: *const c_char, out: *mut *mut RmStructure) -> RmStatus {
    guard(|| {
        if out.is_null() {
            return Err((RmStatus::NullArgument, "`out` is NULL".into()));
        }
        let structure = lib(FiniteStructure::from_json(text(json, "json")?))?;
        *out = Box::into_raw(Box::new(RmStructure { structure }));
        Ok(())
    })
}

/// Releases a structure. NULL is ignored.
///
/// # Safety
/// `structure` is NULL or a handle from `rm_structure_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rm_structure_free(structure: *mut RmStructure) {
    if !structure.is_null() {
        drop(Box::from_raw(structure));
    }
}

/// Checks the comma-separated axiom `groups` (or `all`) and writes the JSON
/// report. `*all_pass` is set to 1 when no axiom failed, else 0.
///
/// # Safety
/// `structure` is a live handle; `groups` is NUL-terminated; `report` and
/// `all_pass` are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rm_structure_check(
    structure: *const RmStructure,
    groups: *const c_char,
    report: *mut *mut c_char,
    all_pass: *mut c_int,
) -> RmStatus {
    guard(|| {
        let s = &handle(structure, "structure")?.structure;
        if all_pass.is_null() {
            return Err((RmStatus::NullArgument, "`all_pass` is NULL".into()));
        }
        let spec = text(groups, "groups")?;
        let list: Vec<AxiomGroup> = if spec.trim() == "all" {
            AxiomGroup::ALL.to_vec()
        } else {
            lib(spec.split(',').map(|g| g.trim().parse()).collect())?
        };
        let reports = lib(check_groups(s, &list, &CheckOptions::default()))?;
        let json = serde_json::to_string(&reports).map_err(|e| (RmStatus::Internal, e.to_string()))?;
        put_string(report, json)?;
        *all_pass = c_int::from(reports.iter().all(|r| r.all_pass()));
        Ok(())
    })
}

/// Classifier rates for the given confusion counts as a JSON document.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rm_metrics_rates(
    tp: u64,
    fp: u64,
    tn: u64,
    fn_: u64,
    mode: RmMetricMode,
    out: *mut *mut c_char,
) -> RmStatus {
    guard(|| {
        let c = ConfusionCounts::new(tp, fp, tn, fn_);
        let value = match mode {
            RmMetricMode::Paper => serde_json::to_value(rates(c, MetricMode::Paper)),
            RmMetricMode::Conventional => serde_json::to_value(rates(c, MetricMode::Conventional)),
            RmMetricMode::Both => serde_json::to_value(serde_json::json!({
                "paper": rates(c, MetricMode::Paper),
                "conventional": rates(c, MetricMode::Conventional),
                "divergence": divergence_report(c),
            })),
        }
        .map_err(|e| (RmStatus::Internal, e.to_string()))?;
        put_string(out, value.to_string())
    })
}
