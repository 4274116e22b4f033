//! C ABI over `lssp-core`.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns an
//! [`LsspStatus`]; on failure the message is available from
//! [`lssp_last_error_message`] until the next failing call on the same
//! thread. Strings handed out by the library are freed with
//! [`lssp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lssp_core::dependency::DependencyRule;
use lssp_core::io::{emit_circuit, gen_random, parse_circuit, parse_layout_json, schedule_to_json, RandomSpec};
use lssp_core::layout::{build_layout, LayoutGraph, LayoutSpec};
use lssp_core::scheduler::{schedule, Report, Schedule, ScheduleOptions};
use lssp_core::transpiler::{optimize_fixpoint, transpile};
use lssp_core::{Circuit, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsspStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Dimension = 5,
    UnsupportedAngle = 6,
    Capacity = 7,
    Scheduling = 8,
    Invariant = 9,
    Domain = 10,
    Panic = 99,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsspRule {
    Serial = 0,
    Trivial = 1,
    General = 2,
}

impl From<LsspRule> for DependencyRule {
    fn from(r: LsspRule) -> Self {
        match r {
            LsspRule::Serial => DependencyRule::Serial,
            LsspRule::Trivial => DependencyRule::Trivial,
            LsspRule::General => DependencyRule::General,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct LsspScheduleOptions {
    pub rule: LsspRule,
    /// Shuffle candidates with `order_seed` when true.
    pub use_order_seed: bool,
    pub order_seed: u64,
    pub allow_shared_data: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct LsspMetrics {
    pub en: usize,
    pub lb: usize,
    pub ub: usize,
    pub average_width: f64,
    pub t_dep_s: f64,
    pub t_sch_s: f64,
    pub t_tot_s: f64,
}

/// Opaque rotation circuit.
pub struct LsspCircuit(Circuit);

/// Opaque layout graph.
pub struct LsspLayout(LayoutGraph);

/// Opaque schedule with its metrics.
pub struct LsspSchedule {
    schedule: Schedule,
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> LsspStatus {
    match e {
        Error::Parse { .. } => LsspStatus::Parse,
        Error::Validation(_) => LsspStatus::Validation,
        Error::Dimension { .. } => LsspStatus::Dimension,
        Error::UnsupportedAngle(_) => LsspStatus::UnsupportedAngle,
        Error::Capacity(_) => LsspStatus::Capacity,
        Error::Scheduling { .. } => LsspStatus::Scheduling,
        Error::Invariant(_) => LsspStatus::Invariant,
        Error::Domain(_) => LsspStatus::Domain,
    }
}

/// Runs `f`, turning errors and panics into a status plus stored message.
fn guard(f: impl FnOnce() -> Result<(), (LsspStatus, String)>) -> LsspStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LsspStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LsspStatus::Panic
        }
    }
}

fn core(e: Error) -> (LsspStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (LsspStatus, String) {
    (LsspStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (LsspStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (LsspStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lssp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lssp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a circuit in the rotation or gate text format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lssp_circuit_parse(text: *const c_char, out: *mut *mut LsspCircuit) -> LsspStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let c = parse_circuit(read_str(text, "text")?).map_err(core)?;
        put(out, LsspCircuit(c));
        Ok(())
    })
}

/// Random π/8 circuit followed by Z measurements on every qubit.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lssp_circuit_random(
    m: usize,
    n: usize,
    n_pct: f64,
    seed: u64,
    out: *mut *mut LsspCircuit,
) -> LsspStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let c = gen_random(&RandomSpec { m, n, n_pct, seed }).map_err(core)?;
        put(out, LsspCircuit(c));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lssp_circuit_free(c: *mut LsspCircuit) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of qubits, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn lssp_circuit_num_qubits(c: *const LsspCircuit) -> usize {
    c.as_ref().map_or(0, |c| c.0.num_qubits())
}

/// Number of operations, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn lssp_circuit_len(c: *const LsspCircuit) -> usize {
    c.as_ref().map_or(0, |c| c.0.len())
}

/// Number of π/8 rotations, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn lssp_circuit_pi8_count(c: *const LsspCircuit) -> usize {
    c.as_ref().map_or(0, |c| c.0.pi8_count())
}

/// Writes the rotation text format; free the result with `lssp_string_free`.
///
/// # Safety
/// `c` must be a live circuit handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lssp_circuit_emit(c: *const LsspCircuit, out: *mut *mut c_char) -> LsspStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("circuit"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = to_c_string(emit_circuit(&c.0));
        Ok(())
    })
}

/// Transpiles `c` to π/8 rotations and measurements, optionally merging
/// commuting layers to a fixpoint. The final Clifford is dropped.
///
/// # Safety
/// `c` must be a live circuit handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lssp_transpile(
    c: *const LsspCircuit,
    fixpoint: bool,
    out: *mut *mut LsspCircuit,
) -> LsspStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("circuit"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let (t, _) = if fixpoint { optimize_fixpoint(&c.0) } else { transpile(&c.0) }.map_err(core)?;
        put(out, LsspCircuit(t));
        Ok(())
    })
}

/// Builds a layout from `{"style", "aisles", "patches_per_aisle", "n_storage", "n_ancillary"}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lssp_layout_from_json(json: *const c_char, out: *mut *mut LsspLayout) -> LsspStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = parse_layout_json(read_str(json, "json")?).map_err(core)?;
        put(out, LsspLayout(build_layout(&spec).map_err(core)?));
        Ok(())
    })
}

/// Smallest near-square parallelizable layout holding `n_qubits`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lssp_layout_auto(
    n_qubits: usize,
    n_storage: usize,
    n_ancillary: usize,
    out: *mut *mut LsspLayout,
) -> LsspStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = LayoutSpec::auto(n_qubits, n_storage, n_ancillary);
        put(out, LsspLayout(build_layout(&spec).map_err(core)?));
        Ok(())
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `l` must be null or a live layout handle.
#[no_mangle]
pub unsafe extern "C" fn lssp_layout_num_vertices(l: *const LsspLayout) -> usize {
    l.as_ref().map_or(0, |l| l.0.num_vertices())
}

/// # Safety
/// `l` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lssp_layout_free(l: *mut LsspLayout) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// General rule, source order, no data sharing.
#[no_mangle]
pub extern "C" fn lssp_schedule_options_default() -> LsspScheduleOptions {
    LsspScheduleOptions {
        rule: LsspRule::General,
        use_order_seed: false,
        order_seed: 0,
        allow_shared_data: false,
    }
}

/// Schedules `c` on `l`. A null `opts` means the defaults.
///
/// # Safety
/// `c` and `l` must be live handles; `opts` null or valid; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lssp_schedule(
    c: *const LsspCircuit,
    l: *const LsspLayout,
    opts: *const LsspScheduleOptions,
    out: *mut *mut LsspSchedule,
) -> LsspStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("circuit"))?;
        let l = l.as_ref().ok_or_else(|| null("layout"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let o = opts.as_ref().copied().unwrap_or_else(|| lssp_schedule_options_default());
        let mut options = ScheduleOptions::new(o.rule.into());
        options.order_seed = o.use_order_seed.then_some(o.order_seed);
        options.allow_shared_data = o.allow_shared_data;
        let (schedule, report) = schedule(&c.0, &l.0, &options).map_err(core)?;
        put(out, LsspSchedule { schedule, report });
        Ok(())
    })
}

/// Number of time steps, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live schedule handle.
#[no_mangle]
pub unsafe extern "C" fn lssp_schedule_steps(s: *const LsspSchedule) -> usize {
    s.as_ref().map_or(0, |s| s.schedule.num_steps())
}

/// # Safety
/// `s` must be a live schedule handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lssp_schedule_metrics(s: *const LsspSchedule, out: *mut LsspMetrics) -> LsspStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("schedule"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = &s.report;
        *out = LsspMetrics {
            en: r.en,
            lb: r.lb,
            ub: r.ub,
            average_width: r.average_width,
            t_dep_s: r.t_dep_s,
            t_sch_s: r.t_sch_s,
            t_tot_s: r.t_tot_s,
        };
        Ok(())
    })
}

/// Schedule JSON; timings are null unless `with_timing`. Free the result
/// with `lssp_string_free`.
///
/// # Safety
/// `s` must be a live schedule handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lssp_schedule_to_json(
    s: *const LsspSchedule,
    with_timing: bool,
    out: *mut *mut c_char,
) -> LsspStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("schedule"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = to_c_string(schedule_to_json(&s.schedule, &s.report, with_timing));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lssp_schedule_free(s: *mut LsspSchedule) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
