//! C ABI for the selflink library.
//!
//! Rings and ring elements are exposed as opaque handles with explicit free
//! functions; the headline computations (forested forms, linking matrices,
//! self-linking weights, wall-crossing scenarios) are exposed through the
//! same JSON documents the command-line tool reads and writes, so bindings
//! in any language can reuse one stable wire format.
//!
//! Every fallible call returns an [`SlStatus`]; when a call fails, a
//! human-readable message is stored per thread and can be fetched with
//! [`sl_last_error_message`]. Strings returned to the caller are allocated
//! by this library and must be released with [`sl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use selflink::error::Error;
use selflink::forested::{forested_form, Evaluator};
use selflink::json;
use selflink::link::{linking_matrix, self_linking_weight};
use selflink::ring::{Ring, RingElement};
use selflink::trees::enumerate_trees;
use selflink::wall::{generate_random_scenario, run_scenario, trace_is_constant, ScenarioParams};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStatus {
    /// Success.
    SlOk = 0,
    /// A required pointer argument was null.
    SlNullArgument = 1,
    /// A string argument was not valid UTF-8.
    SlInvalidUtf8 = 2,
    /// Malformed input (bad JSON, bad ring spec, bad element text).
    SlInvalidInput = 3,
    /// A mathematical precondition was violated (ring mismatch, bounds,
    /// degenerate projection, rejected wall event).
    SlPrecondition = 4,
    /// An internal invariant failed (e.g. a non-constant wall trace).
    SlInternal = 5,
}

/// Opaque handle to a coefficient ring.
pub struct SlRing(Ring);

/// Opaque handle to a ring element.
pub struct SlElement(RingElement);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let stored = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn status_of(e: &Error) -> SlStatus {
    match e.exit_code() {
        3 => SlStatus::SlInvalidInput,
        4 => SlStatus::SlPrecondition,
        _ => SlStatus::SlInternal,
    }
}

fn fail(e: Error) -> SlStatus {
    let status = status_of(&e);
    set_error(&e.to_string());
    status
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated C string.
unsafe fn str_arg<'a>(ptr: *const c_char) -> Result<&'a str, SlStatus> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(SlStatus::SlNullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        SlStatus::SlInvalidUtf8
    })
}

fn export_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Latest error message on this thread as a newly allocated string, or null
/// when no error has occurred. Free with [`sl_string_free`].
#[no_mangle]
pub extern "C" fn sl_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => export_string(msg.to_string_lossy().into_owned()),
        None => ptr::null_mut(),
    })
}

/// Release a string allocated by this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Create a ring handle from its spec string: `integers`, `mod:<q>` or
/// `poly:<v1,v2,...>`. Returns null on error. Free with [`sl_ring_free`].
///
/// # Safety
/// `spec` must be a valid NUL-terminated C string.
#[no_mangle]
pub unsafe extern "C" fn sl_ring_new(spec: *const c_char) -> *mut SlRing {
    let Ok(spec) = str_arg(spec) else { return ptr::null_mut() };
    match Ring::from_spec(spec) {
        Ok(ring) => Box::into_raw(Box::new(SlRing(ring))),
        Err(e) => {
            fail(e);
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `ring` must be null or a pointer from [`sl_ring_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl_ring_free(ring: *mut SlRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// `element` must be null or an element pointer from this library, not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn sl_element_free(element: *mut SlElement) {
    if !element.is_null() {
        drop(Box::from_raw(element));
    }
}

unsafe fn ring_arg<'a>(ring: *const SlRing) -> Result<&'a Ring, SlStatus> {
    if ring.is_null() {
        set_error("null ring handle");
        return Err(SlStatus::SlNullArgument);
    }
    Ok(&(*ring).0)
}

unsafe fn element_arg<'a>(element: *const SlElement) -> Result<&'a RingElement, SlStatus> {
    if element.is_null() {
        set_error("null element handle");
        return Err(SlStatus::SlNullArgument);
    }
    Ok(&(*element).0)
}

/// The additive identity of the ring. Free with [`sl_element_free`].
///
/// # Safety
/// `ring` must be a valid ring handle.
#[no_mangle]
pub unsafe extern "C" fn sl_ring_zero(ring: *const SlRing) -> *mut SlElement {
    match ring_arg(ring) {
        Ok(r) => Box::into_raw(Box::new(SlElement(r.zero()))),
        Err(_) => ptr::null_mut(),
    }
}

/// The multiplicative identity of the ring. Free with [`sl_element_free`].
///
/// # Safety
/// `ring` must be a valid ring handle.
#[no_mangle]
pub unsafe extern "C" fn sl_ring_one(ring: *const SlRing) -> *mut SlElement {
    match ring_arg(ring) {
        Ok(r) => Box::into_raw(Box::new(SlElement(r.one()))),
        Err(_) => ptr::null_mut(),
    }
}

/// Parse an element from its canonical text form. Returns null on error.
///
/// # Safety
/// `ring` must be a valid ring handle and `text` a valid C string.
#[no_mangle]
pub unsafe extern "C" fn sl_element_parse(
    ring: *const SlRing,
    text: *const c_char,
) -> *mut SlElement {
    let Ok(r) = ring_arg(ring) else { return ptr::null_mut() };
    let Ok(text) = str_arg(text) else { return ptr::null_mut() };
    match r.parse_element(text) {
        Ok(e) => Box::into_raw(Box::new(SlElement(e))),
        Err(e) => {
            fail(e);
            ptr::null_mut()
        }
    }
}

/// Canonical text form of an element. Free with [`sl_string_free`].
///
/// # Safety
/// `ring` and `element` must be valid handles, and the element must belong
/// to the ring.
#[no_mangle]
pub unsafe extern "C" fn sl_element_format(
    ring: *const SlRing,
    element: *const SlElement,
) -> *mut c_char {
    let Ok(r) = ring_arg(ring) else { return ptr::null_mut() };
    let Ok(e) = element_arg(element) else { return ptr::null_mut() };
    if let Err(err) = r.validate(e) {
        fail(err);
        return ptr::null_mut();
    }
    export_string(r.format_element(e))
}

unsafe fn binary_op(
    ring: *const SlRing,
    a: *const SlElement,
    b: *const SlElement,
    op: impl Fn(&Ring, &RingElement, &RingElement) -> selflink::Result<RingElement>,
) -> *mut SlElement {
    let Ok(r) = ring_arg(ring) else { return ptr::null_mut() };
    let Ok(a) = element_arg(a) else { return ptr::null_mut() };
    let Ok(b) = element_arg(b) else { return ptr::null_mut() };
    match op(r, a, b) {
        Ok(out) => Box::into_raw(Box::new(SlElement(out))),
        Err(e) => {
            fail(e);
            ptr::null_mut()
        }
    }
}

/// Canonical sum of two elements of the ring. Returns null on mismatch.
///
/// # Safety
/// All handles must be valid.
#[no_mangle]
pub unsafe extern "C" fn sl_element_add(
    ring: *const SlRing,
    a: *const SlElement,
    b: *const SlElement,
) -> *mut SlElement {
    binary_op(ring, a, b, Ring::add)
}

/// Canonical product of two elements of the ring. Returns null on mismatch.
///
/// # Safety
/// All handles must be valid.
#[no_mangle]
pub unsafe extern "C" fn sl_element_mul(
    ring: *const SlRing,
    a: *const SlElement,
    b: *const SlElement,
) -> *mut SlElement {
    binary_op(ring, a, b, Ring::mul)
}

/// Equality of canonical forms: 1 equal, 0 different, -1 on null input.
///
/// # Safety
/// Handles must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn sl_element_eq(a: *const SlElement, b: *const SlElement) -> c_int {
    match (element_arg(a), element_arg(b)) {
        (Ok(a), Ok(b)) => c_int::from(a == b),
        _ => -1,
    }
}

/// Number of spanning trees of the complete graph on `n` vertices, by
/// exhaustive enumeration (`n <= 9`).
///
/// # Safety
/// `out_count` must point to writable memory for one u64.
#[no_mangle]
pub unsafe extern "C" fn sl_trees_count(n: u32, out_count: *mut u64) -> SlStatus {
    if out_count.is_null() {
        set_error("null output pointer");
        return SlStatus::SlNullArgument;
    }
    match enumerate_trees(n as usize) {
        Ok(iter) => {
            *out_count = iter.count() as u64;
            SlStatus::SlOk
        }
        Err(e) => fail(e),
    }
}

/// Evaluate the forested form of an edge-vector JSON document. On success
/// `out_value` receives the canonical element string.
///
/// # Safety
/// `input_json` must be a valid C string and `out_value` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn sl_forested_eval_json(
    input_json: *const c_char,
    use_tree_sum: c_int,
    out_value: *mut *mut c_char,
) -> SlStatus {
    if out_value.is_null() {
        set_error("null output pointer");
        return SlStatus::SlNullArgument;
    }
    let input = match str_arg(input_json) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let evaluator = if use_tree_sum != 0 { Evaluator::TreeSum } else { Evaluator::Determinant };
    let result = json::read_edge_vector(input)
        .and_then(|vector| Ok((vector.ring().clone(), forested_form(&vector, evaluator)?)));
    match result {
        Ok((ring, value)) => {
            *out_value = export_string(ring.format_element(&value));
            SlStatus::SlOk
        }
        Err(e) => fail(e),
    }
}

/// Compute the linking matrix of a link JSON document over the given ring
/// spec. On success `out_json` receives the canonical matrix document.
///
/// # Safety
/// Inputs must be valid C strings and `out_json` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn sl_linking_matrix_json(
    link_json: *const c_char,
    ring_spec: *const c_char,
    out_json: *mut *mut c_char,
) -> SlStatus {
    if out_json.is_null() {
        set_error("null output pointer");
        return SlStatus::SlNullArgument;
    }
    let link = match str_arg(link_json) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let spec = match str_arg(ring_spec) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let result = (|| {
        let ring = Ring::from_spec(spec)?;
        let link = json::read_link(link)?;
        let matrix = linking_matrix(&link, &ring)?;
        json::to_canonical_string(&json::matrix_to_doc(&matrix))
    })();
    match result {
        Ok(doc) => {
            *out_json = export_string(doc);
            SlStatus::SlOk
        }
        Err(e) => fail(e),
    }
}

/// Self-linking weight of a matrix JSON document; `out_value` receives the
/// canonical element string.
///
/// # Safety
/// `matrix_json` must be a valid C string and `out_value` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn sl_self_linking_weight_json(
    matrix_json: *const c_char,
    out_value: *mut *mut c_char,
) -> SlStatus {
    if out_value.is_null() {
        set_error("null output pointer");
        return SlStatus::SlNullArgument;
    }
    let input = match str_arg(matrix_json) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let result = (|| {
        let matrix = json::read_matrix(input)?;
        let weight = self_linking_weight(&matrix)?;
        Ok(matrix.ring().format_element(&weight))
    })();
    match result {
        Ok(value) => {
            *out_value = export_string(value);
            SlStatus::SlOk
        }
        Err(e) => fail(e),
    }
}

/// Run a wall-crossing scenario document. `out_trace_json` receives the
/// trace as a JSON array of `{time, weight}` points whenever the scenario
/// executes; the call reports an internal-invariant failure when the trace
/// is not constant.
///
/// # Safety
/// `scenario_json` must be a valid C string and `out_trace_json` a writable
/// slot.
#[no_mangle]
pub unsafe extern "C" fn sl_wall_run_scenario_json(
    scenario_json: *const c_char,
    out_trace_json: *mut *mut c_char,
) -> SlStatus {
    if out_trace_json.is_null() {
        set_error("null output pointer");
        return SlStatus::SlNullArgument;
    }
    let input = match str_arg(scenario_json) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let result = (|| {
        let scenario = json::read_scenario(input)?;
        let trace = run_scenario(&scenario)?;
        let doc = json::to_canonical_string(&json::trace_to_docs(&scenario.ring, &trace))?;
        Ok((doc, trace_is_constant(&trace)))
    })();
    match result {
        Ok((doc, constant)) => {
            *out_trace_json = export_string(doc);
            if constant {
                SlStatus::SlOk
            } else {
                set_error("total weight changed along the trace");
                SlStatus::SlInternal
            }
        }
        Err(e) => fail(e),
    }
}

/// Generate and run `count` seeded scenarios over the given ring spec with
/// at most `events` events each. Returns an internal-invariant failure and
/// stores the offending seed when any trace is non-constant.
///
/// # Safety
/// `ring_spec` must be a valid C string; `out_failed_seed` may be null.
#[no_mangle]
pub unsafe extern "C" fn sl_wall_fuzz(
    seed: u64,
    count: u64,
    ring_spec: *const c_char,
    events: u32,
    out_failed_seed: *mut u64,
) -> SlStatus {
    let spec = match str_arg(ring_spec) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let ring = match Ring::from_spec(spec) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let params = ScenarioParams { events: events as usize, ..ScenarioParams::default() };
    for offset in 0..count {
        let s = seed.wrapping_add(offset);
        let result = generate_random_scenario(s, &ring, &params).and_then(|sc| run_scenario(&sc));
        match result {
            Ok(trace) => {
                if !trace_is_constant(&trace) {
                    if !out_failed_seed.is_null() {
                        *out_failed_seed = s;
                    }
                    set_error("non-constant trace");
                    return SlStatus::SlInternal;
                }
            }
            Err(e) => return fail(e),
        }
    }
    SlStatus::SlOk
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        sl_string_free(ptr);
        s
    }

    #[test]
    fn ring_handles_do_arithmetic() {
        unsafe {
            let ring = sl_ring_new(cstr("mod:7").as_ptr());
            assert!(!ring.is_null());
            let three = sl_element_parse(ring, cstr("3").as_ptr());
            let five = sl_element_parse(ring, cstr("5").as_ptr());
            let sum = sl_element_add(ring, three, five);
            let formatted = take_string(sl_element_format(ring, sum));
            assert_eq!(formatted, "1 mod 7");
            let prod = sl_element_mul(ring, three, five);
            assert_eq!(take_string(sl_element_format(ring, prod)), "1 mod 7");
            assert_eq!(sl_element_eq(sum, prod), 1);
            let one = sl_ring_one(ring);
            assert_eq!(sl_element_eq(sum, one), 1);
            for e in [three, five, sum, prod, one] {
                sl_element_free(e);
            }
            sl_ring_free(ring);
        }
    }

    #[test]
    fn bad_ring_spec_reports_an_error() {
        unsafe {
            let ring = sl_ring_new(cstr("galois:9").as_ptr());
            assert!(ring.is_null());
            let msg = take_string(sl_last_error_message());
            assert!(msg.contains("ring"));
        }
    }

    #[test]
    fn tree_count_matches_enumeration() {
        unsafe {
            let mut count = 0u64;
            assert_eq!(sl_trees_count(4, &mut count), SlStatus::SlOk);
            assert_eq!(count, 16);
            assert_eq!(sl_trees_count(99, &mut count), SlStatus::SlPrecondition);
        }
    }

    #[test]
    fn forested_eval_runs_on_documents() {
        let doc = r#"{"n": 4, "ring": {"kind": "integers"},
            "coefficients": [
              {"edge": [0,1], "value": "1"}, {"edge": [0,2], "value": "1"},
              {"edge": [0,3], "value": "1"}, {"edge": [1,2], "value": "1"},
              {"edge": [1,3], "value": "1"}, {"edge": [2,3], "value": "1"}
            ]}"#;
        unsafe {
            let mut out: *mut c_char = ptr::null_mut();
            let status = sl_forested_eval_json(cstr(doc).as_ptr(), 0, &mut out);
            assert_eq!(status, SlStatus::SlOk);
            assert_eq!(take_string(out), "16");
            let mut out2: *mut c_char = ptr::null_mut();
            let status = sl_forested_eval_json(cstr("{oops").as_ptr(), 1, &mut out2);
            assert_eq!(status, SlStatus::SlInvalidInput);
        }
    }

    #[test]
    fn linking_and_weight_pipeline() {
        let link = r#"{"components": [
            [[1,1,0], [-1,1,0], [-1,-1,0], [1,-1,0]],
            [[0,0,-1], [0,0,1], [3,0,1], [3,0,-1]]
        ]}"#;
        unsafe {
            let mut matrix: *mut c_char = ptr::null_mut();
            let status =
                sl_linking_matrix_json(cstr(link).as_ptr(), cstr("integers").as_ptr(), &mut matrix);
            assert_eq!(status, SlStatus::SlOk);
            let matrix_doc = take_string(matrix);
            assert!(matrix_doc.contains("\"1\""));
            let mut weight: *mut c_char = ptr::null_mut();
            let status = sl_self_linking_weight_json(cstr(&matrix_doc).as_ptr(), &mut weight);
            assert_eq!(status, SlStatus::SlOk);
            assert_eq!(take_string(weight), "1");
        }
    }

    #[test]
    fn fuzz_reports_clean_runs() {
        unsafe {
            let mut failed = 0u64;
            let status = sl_wall_fuzz(11, 10, cstr("mod:2").as_ptr(), 8, &mut failed);
            assert_eq!(status, SlStatus::SlOk);
        }
    }
}
