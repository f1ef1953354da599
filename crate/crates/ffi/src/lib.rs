// SPDX-License-Identifier: Apache-2.0

//! C ABI over `revfault`.
//!
//! Objects are opaque heap handles created by `rf_*_new`/`rf_*_parse`/
//! `rf_*_load` and released with the matching `rf_*_free`. Every fallible
//! call returns an [`RfStatus`]; on failure a message for the calling thread
//! is available from [`rf_last_error`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use revfault::engine::{simulate_exhaustive_packed, SimError, SimLimits, TruthTable};
use revfault::faultlab::{implication_impact, ImpactError};
use revfault::implications::{
    discover_artificial, discover_natural, GateLibrary, Implication, ImplicationKind, Placement, SiteScope,
};
use revfault::netlist::{append_gate, fault_universe, load_real, parse_real, Circuit, LoadError};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    IoError = 4,
    TooManyInputs = 5,
    OutOfRange = 6,
    NotHolding = 7,
    Mismatch = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfImplicationKind {
    Literal = 0,
    Equal = 1,
    Inverted = 2,
}

/// Plain-data view of one implication. `antecedent`/`consequent` are only
/// meaningful for `Literal`. Artificial entries have `artificial = 1` and
/// carry the appended gate's line in the list (see
/// [`rf_implication_list_placement`]).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RfImplication {
    pub in_wire: usize,
    pub out_wire: usize,
    pub kind: RfImplicationKind,
    pub antecedent: u8,
    pub consequent: u8,
    pub artificial: u8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RfImpact {
    pub error_detected: u64,
    pub error_missed: u64,
    pub impact_percent: f64,
    pub denominator_zero: u8,
}

/// Opaque circuit handle.
pub struct RfCircuit {
    inner: Circuit,
}

/// Opaque exhaustive truth table handle.
pub struct RfTruthTable {
    inner: TruthTable,
    max_inputs: usize,
}

/// Opaque list of implications, natural or artificial.
pub struct RfImplicationList {
    items: Vec<(Implication, Option<Placement>)>,
    placements: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

type Failure = (RfStatus, String);

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RfStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RfStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    (RfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (RfStatus::InvalidUtf8, format!("{what}: {e}")))
}

fn sim_failure(e: SimError) -> Failure {
    (RfStatus::TooManyInputs, e.to_string())
}

fn limits(max_inputs: usize) -> SimLimits {
    if max_inputs == 0 {
        SimLimits::default()
    } else {
        SimLimits::with_max_free_inputs(max_inputs)
    }
}

/// Message describing the last failed call on this thread, or null if the
/// last call succeeded. Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn rf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `.real` text.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_circuit_parse(text: *const c_char, out: *mut *mut RfCircuit) -> RfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let text = c_str(text, "text")?;
        let c = parse_real(text).map_err(|e| (RfStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(RfCircuit { inner: c }));
        Ok(())
    })
}

/// Loads a `.real` file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_circuit_load(path: *const c_char, out: *mut *mut RfCircuit) -> RfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let path = c_str(path, "path")?;
        let c = load_real(path).map_err(|e| match e {
            LoadError::Io { .. } => (RfStatus::IoError, e.to_string()),
            LoadError::Parse { .. } => (RfStatus::ParseError, e.to_string()),
        })?;
        *out = Box::into_raw(Box::new(RfCircuit { inner: c }));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rf_circuit_free(c: *mut RfCircuit) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Wire, gate, garbage and fault counts. Any out pointer may be null.
///
/// # Safety
/// `c` must be a live circuit handle; non-null out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_circuit_shape(
    c: *const RfCircuit,
    wires: *mut usize,
    gates: *mut usize,
    garbage: *mut usize,
    faults: *mut usize,
) -> RfStatus {
    guard(|| {
        let c = &borrow(c, "circuit")?.inner;
        if let Some(w) = wires.as_mut() {
            *w = c.num_wires();
        }
        if let Some(g) = gates.as_mut() {
            *g = c.num_gates();
        }
        if let Some(g) = garbage.as_mut() {
            *g = c.num_garbage();
        }
        if let Some(f) = faults.as_mut() {
            *f = fault_universe(c).len();
        }
        Ok(())
    })
}

/// Simulates every free-input vector. `max_inputs = 0` uses the default cap.
///
/// # Safety
/// `c` must be a live circuit handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_truth_table_new(
    c: *const RfCircuit,
    max_inputs: usize,
    out: *mut *mut RfTruthTable,
) -> RfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let c = &borrow(c, "circuit")?.inner;
        let t = simulate_exhaustive_packed(c, &limits(max_inputs)).map_err(sim_failure)?;
        *out = Box::into_raw(Box::new(RfTruthTable { inner: t, max_inputs }));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rf_truth_table_free(t: *mut RfTruthTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live table handle; `rows` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_truth_table_rows(t: *const RfTruthTable, rows: *mut usize) -> RfStatus {
    guard(|| {
        *out_ptr(rows, "rows")? = borrow(t, "table")?.inner.rows();
        Ok(())
    })
}

/// Reads one bit. `output = 0` selects the input side.
///
/// # Safety
/// `t` must be a live table handle; `bit` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_truth_table_bit(
    t: *const RfTruthTable,
    row: usize,
    wire: usize,
    output: u8,
    bit: *mut u8,
) -> RfStatus {
    guard(|| {
        let bit = out_ptr(bit, "bit")?;
        let t = &borrow(t, "table")?.inner;
        if row >= t.rows() || wire >= t.num_wires() {
            return Err((RfStatus::OutOfRange, format!("row {row} / wire {wire} out of range")));
        }
        *bit = if output != 0 { t.output_bit(row, wire) } else { t.input_bit(row, wire) } as u8;
        Ok(())
    })
}

fn check_pair(c: &Circuit, t: &TruthTable) -> Result<(), Failure> {
    if c.num_wires() != t.num_wires() || c.free_wires() != t.free_wires() {
        return Err((RfStatus::Mismatch, "truth table was not built from this circuit".into()));
    }
    Ok(())
}

fn new_list(c: &Circuit, items: Vec<(Implication, Option<Placement>)>) -> *mut RfImplicationList {
    let placements = items
        .iter()
        .map(|(_, p)| CString::new(p.as_ref().map_or(String::new(), |p| p.describe(c))).unwrap_or_default())
        .collect();
    Box::into_raw(Box::new(RfImplicationList { items, placements }))
}

/// Natural implications of `c`, read from its table `t`.
///
/// # Safety
/// `c` and `t` must be live handles, `t` built from `c`; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rf_implications_natural(
    c: *const RfCircuit,
    t: *const RfTruthTable,
    out: *mut *mut RfImplicationList,
) -> RfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let c = &borrow(c, "circuit")?.inner;
        let t = &borrow(t, "table")?.inner;
        check_pair(c, t)?;
        let items = discover_natural(t, c).into_iter().map(|i| (i, None)).collect();
        *out = new_list(c, items);
        Ok(())
    })
}

/// Artificial implications from the default gate library, all-pairs sites.
///
/// # Safety
/// `c` and `t` must be live handles, `t` built from `c`; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rf_implications_artificial(
    c: *const RfCircuit,
    t: *const RfTruthTable,
    out: *mut *mut RfImplicationList,
) -> RfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let c = &borrow(c, "circuit")?.inner;
        let t = &borrow(t, "table")?.inner;
        check_pair(c, t)?;
        let mut items = Vec::new();
        for f in discover_artificial(c, t, &GateLibrary::default(), SiteScope::AllPairs) {
            for i in f.new_implications {
                items.push((i, Some(f.placement.clone())));
            }
        }
        *out = new_list(c, items);
        Ok(())
    })
}

/// # Safety
/// `l` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rf_implication_list_free(l: *mut RfImplicationList) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// # Safety
/// `l` must be a live list handle; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_implication_list_len(l: *const RfImplicationList, len: *mut usize) -> RfStatus {
    guard(|| {
        *out_ptr(len, "len")? = borrow(l, "list")?.items.len();
        Ok(())
    })
}

fn item(l: &RfImplicationList, index: usize) -> Result<&(Implication, Option<Placement>), Failure> {
    l.items
        .get(index)
        .ok_or_else(|| (RfStatus::OutOfRange, format!("index {index} out of range for {} items", l.items.len())))
}

/// # Safety
/// `l` must be a live list handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_implication_list_get(
    l: *const RfImplicationList,
    index: usize,
    out: *mut RfImplication,
) -> RfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let (imp, placement) = item(borrow(l, "list")?, index)?;
        let (kind, a, b) = match imp.kind {
            ImplicationKind::Literal { antecedent, consequent } => {
                (RfImplicationKind::Literal, antecedent as u8, consequent as u8)
            }
            ImplicationKind::Equal => (RfImplicationKind::Equal, 0, 0),
            ImplicationKind::Inverted => (RfImplicationKind::Inverted, 0, 0),
        };
        *out = RfImplication {
            in_wire: imp.in_wire,
            out_wire: imp.out_wire,
            kind,
            antecedent: a,
            consequent: b,
            artificial: placement.is_some() as u8,
        };
        Ok(())
    })
}

/// The appended gate of an artificial entry as a `.real` line (empty for
/// natural entries). The string lives as long as the list.
///
/// # Safety
/// `l` must be a live list handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_implication_list_placement(
    l: *const RfImplicationList,
    index: usize,
    out: *mut *const c_char,
) -> RfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let l = borrow(l, "list")?;
        item(l, index)?;
        *out = l.placements[index].as_ptr();
        Ok(())
    })
}

/// Impact of entry `index` over the full fault universe. Artificial entries
/// are scored on the circuit with their gate appended.
///
/// # Safety
/// `c`, `t` and `l` must be live handles derived from the same circuit;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rf_implication_impact(
    c: *const RfCircuit,
    t: *const RfTruthTable,
    l: *const RfImplicationList,
    index: usize,
    out: *mut RfImpact,
) -> RfStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let c = &borrow(c, "circuit")?.inner;
        let t = borrow(t, "table")?;
        check_pair(c, &t.inner)?;
        let lim = limits(t.max_inputs);
        let (imp, placement) = item(borrow(l, "list")?, index)?;
        let to_failure = |e: ImpactError| match e {
            ImpactError::DoesNotHold(_) => (RfStatus::NotHolding, e.to_string()),
            ImpactError::Sim(s) => sim_failure(s),
        };
        let r = match placement {
            None => implication_impact(c, &t.inner, imp, &lim).map_err(to_failure)?,
            Some(p) => {
                let appended = append_gate(c, p.template, &p.wires).map_err(|e| (RfStatus::Mismatch, e.to_string()))?;
                let t2 = simulate_exhaustive_packed(&appended, &lim).map_err(sim_failure)?;
                implication_impact(&appended, &t2, imp, &lim).map_err(to_failure)?
            }
        };
        *out = RfImpact {
            error_detected: r.error_detected,
            error_missed: r.error_missed,
            impact_percent: r.impact_percent,
            denominator_zero: r.denominator_zero as u8,
        };
        Ok(())
    })
}
