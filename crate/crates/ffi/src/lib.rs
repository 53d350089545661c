//! C ABI over the embedding library.
//!
//! Conventions, mirrored in the generated header:
//! - Bouquets cross the boundary as opaque `EqbBouquet` handles; free them
//!   with [`eqb_bouquet_free`]. Reports and documents cross as UTF-8 JSON
//!   strings owned by this library; free them with [`eqb_string_free`].
//! - Every function returns an [`EqbStatus`]; results land in out-pointers
//!   that are written only on `Ok`. On any failure the thread-local error
//!   message is set and readable via [`eqb_last_error_message`].
//! - Panics never unwind across the boundary; they surface as
//!   `EqbStatus::Panic`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use equibouquet::certificate::certify;
use equibouquet::constructions::{b2_demo, construction_a, construction_b, EmbeddedBouquet};
use equibouquet::io;
use equibouquet::symgroup::GraphPoint;
use equibouquet::verify::{all_pass, verify_all, VerifyOptions};
use equibouquet::Error;

/// Result of every FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqbStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// Arguments outside the supported domain (bad genus, sizes, formats).
    InvalidArgument = 3,
    /// Input parsed but is mathematically inconsistent.
    Inconsistent = 4,
    /// JSON parse or serialization failure.
    Json = 5,
    Io = 6,
    /// A panic was caught at the boundary; state may be stale.
    Panic = 7,
}

/// Opaque embedding handle.
pub struct EqbBouquet {
    inner: EmbeddedBouquet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let stored = CString::new(message.replace('\0', "?"))
        .unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn status_of(e: &Error) -> EqbStatus {
    match e {
        Error::Domain(_) => EqbStatus::InvalidArgument,
        Error::Inconsistent(_) => EqbStatus::Inconsistent,
        Error::Json(_) => EqbStatus::Json,
        Error::Io(_) => EqbStatus::Io,
    }
}

fn fail(e: &Error) -> EqbStatus {
    set_error(&e.to_string());
    status_of(e)
}

fn fail_with(status: EqbStatus, message: &str) -> EqbStatus {
    set_error(message);
    status
}

/// Runs `body` with panics converted to `EqbStatus::Panic`.
fn guarded(body: impl FnOnce() -> EqbStatus) -> EqbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let text = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic across the FFI boundary".to_string());
            fail_with(EqbStatus::Panic, &text)
        }
    }
}

/// # Safety
/// `ptr` must be null or a pointer previously handed out by this library.
unsafe fn borrow<'a>(ptr: *const EqbBouquet) -> Result<&'a EmbeddedBouquet, EqbStatus> {
    // SAFETY: caller contract.
    unsafe { ptr.as_ref() }
        .map(|h| &h.inner)
        .ok_or_else(|| fail_with(EqbStatus::NullPointer, "bouquet handle is null"))
}

unsafe fn utf8<'a>(ptr: *const c_char) -> Result<&'a str, EqbStatus> {
    if ptr.is_null() {
        return Err(fail_with(EqbStatus::NullPointer, "string argument is null"));
    }
    // SAFETY: non-null, caller passes a NUL-terminated string.
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|e| fail_with(EqbStatus::Utf8, &format!("string argument: {e}")))
}

fn hand_out(bouquet: EmbeddedBouquet, out: *mut *mut EqbBouquet) -> EqbStatus {
    if out.is_null() {
        return fail_with(EqbStatus::NullPointer, "out pointer is null");
    }
    let handle = Box::into_raw(Box::new(EqbBouquet { inner: bouquet }));
    // SAFETY: out checked non-null; caller owns the handle afterwards.
    unsafe { *out = handle };
    EqbStatus::Ok
}

fn hand_out_string(text: String, out: *mut *mut c_char) -> EqbStatus {
    if out.is_null() {
        return fail_with(EqbStatus::NullPointer, "out pointer is null");
    }
    match CString::new(text) {
        Ok(s) => {
            // SAFETY: out checked non-null; caller frees via eqb_string_free.
            unsafe { *out = s.into_raw() };
            EqbStatus::Ok
        }
        Err(_) => fail_with(EqbStatus::Json, "produced text contains a NUL byte"),
    }
}

/// Message of the most recent failure on this thread, or null when the
/// last call succeeded. The pointer stays valid until the next failing
/// call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn eqb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string pointer handed out by this library that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn eqb_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: caller contract; pointer originated from CString::into_raw.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Frees a bouquet handle. Null is ignored.
///
/// # Safety
/// `b` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eqb_bouquet_free(b: *mut EqbBouquet) {
    if !b.is_null() {
        // SAFETY: caller contract; pointer originated from Box::into_raw.
        drop(unsafe { Box::from_raw(b) });
    }
}

/// Builds the flat simplex-frame family at the given genus (≥ 2), with an
/// optional lift onto the unit sphere one dimension up.
///
/// # Safety
/// `out` must be a valid pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn eqb_construction_a(
    genus: usize,
    compactified: bool,
    out: *mut *mut EqbBouquet,
) -> EqbStatus {
    guarded(|| {
        let built = construction_a(genus).and_then(|e| {
            if compactified {
                e.compactify()
            } else {
                Ok(e)
            }
        });
        match built {
            Ok(e) => hand_out(e, out),
            Err(e) => fail(&e),
        }
    })
}

/// Builds the unit-sphere family at the given genus (≥ 2).
///
/// # Safety
/// `out` must be a valid pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn eqb_construction_b(genus: usize, out: *mut *mut EqbBouquet) -> EqbStatus {
    guarded(|| match construction_b(genus) {
        Ok(e) => hand_out(e, out),
        Err(e) => fail(&e),
    })
}

/// Builds the hand-made two-circle demo in three-space.
///
/// # Safety
/// `out` must be a valid pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn eqb_b2_demo(out: *mut *mut EqbBouquet) -> EqbStatus {
    guarded(|| hand_out(b2_demo(), out))
}

/// Parses a bouquet document (the same JSON schema the CLI writes).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn eqb_bouquet_from_json(
    json: *const c_char,
    out: *mut *mut EqbBouquet,
) -> EqbStatus {
    guarded(|| {
        let text = match unsafe { utf8(json) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        match io::bouquet_from_json(text) {
            Ok(e) => hand_out(e, out),
            Err(e) => fail(&e),
        }
    })
}

/// Serializes the bouquet as a JSON document with full-precision floats.
///
/// # Safety
/// `b` must be a live handle; `out` must be valid. Free the string with
/// [`eqb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn eqb_bouquet_to_json(
    b: *const EqbBouquet,
    out: *mut *mut c_char,
) -> EqbStatus {
    guarded(|| {
        let bouquet = match unsafe { borrow(b) } {
            Ok(e) => e,
            Err(status) => return status,
        };
        match io::bouquet_to_json(bouquet) {
            Ok(text) => hand_out_string(text, out),
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `b` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn eqb_bouquet_genus(b: *const EqbBouquet, out: *mut usize) -> EqbStatus {
    guarded(|| {
        let bouquet = match unsafe { borrow(b) } {
            Ok(e) => e,
            Err(status) => return status,
        };
        if out.is_null() {
            return fail_with(EqbStatus::NullPointer, "out pointer is null");
        }
        unsafe { *out = bouquet.genus() };
        EqbStatus::Ok
    })
}

/// # Safety
/// `b` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn eqb_bouquet_ambient_dim(
    b: *const EqbBouquet,
    out: *mut usize,
) -> EqbStatus {
    guarded(|| {
        let bouquet = match unsafe { borrow(b) } {
            Ok(e) => e,
            Err(status) => return status,
        };
        if out.is_null() {
            return fail_with(EqbStatus::NullPointer, "out pointer is null");
        }
        unsafe { *out = bouquet.ambient_dim() };
        EqbStatus::Ok
    })
}

/// Evaluates one circle point. `angle` is in radians; angle 0 is the
/// shared vertex. Writes exactly `ambient_dim` coordinates, so `out_len`
/// must equal the handle's ambient dimension.
///
/// # Safety
/// `b` must be a live handle; `out` must point to `out_len` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn eqb_bouquet_eval(
    b: *const EqbBouquet,
    circle: usize,
    angle: f64,
    out: *mut f64,
    out_len: usize,
) -> EqbStatus {
    guarded(|| {
        let bouquet = match unsafe { borrow(b) } {
            Ok(e) => e,
            Err(status) => return status,
        };
        if out.is_null() {
            return fail_with(EqbStatus::NullPointer, "out pointer is null");
        }
        if circle >= bouquet.genus() {
            return fail_with(
                EqbStatus::InvalidArgument,
                &format!("circle {circle} out of range for genus {}", bouquet.genus()),
            );
        }
        if out_len != bouquet.ambient_dim() {
            return fail_with(
                EqbStatus::InvalidArgument,
                &format!(
                    "out_len {out_len} but the embedding has {} coordinates",
                    bouquet.ambient_dim()
                ),
            );
        }
        if !angle.is_finite() {
            return fail_with(EqbStatus::InvalidArgument, "angle must be finite");
        }
        let point = bouquet.eval(GraphPoint::OnCircle { circle, angle });
        // SAFETY: out_len checked against the embedding dimension above.
        let slice = unsafe { std::slice::from_raw_parts_mut(out, out_len) };
        slice.copy_from_slice(point.as_slice());
        EqbStatus::Ok
    })
}

/// Lifts a flat bouquet onto the unit sphere one dimension up.
///
/// # Safety
/// `b` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn eqb_bouquet_compactify(
    b: *const EqbBouquet,
    out: *mut *mut EqbBouquet,
) -> EqbStatus {
    guarded(|| {
        let bouquet = match unsafe { borrow(b) } {
            Ok(e) => e,
            Err(status) => return status,
        };
        match bouquet.compactify() {
            Ok(e) => hand_out(e, out),
            Err(e) => fail(&e),
        }
    })
}

/// Runs the full checker suite. `samples` of 0 selects the default
/// sampling density, `seed` is used verbatim. On `Ok`, `report_json`
/// receives the serialized check list and `all_checks_pass` the verdict.
///
/// # Safety
/// `b` must be a live handle; `report_json` and `all_checks_pass` must be
/// valid. Free the string with [`eqb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn eqb_verify(
    b: *const EqbBouquet,
    samples: usize,
    seed: u64,
    report_json: *mut *mut c_char,
    all_checks_pass: *mut bool,
) -> EqbStatus {
    guarded(|| {
        let bouquet = match unsafe { borrow(b) } {
            Ok(e) => e,
            Err(status) => return status,
        };
        if all_checks_pass.is_null() {
            return fail_with(EqbStatus::NullPointer, "all_checks_pass pointer is null");
        }
        let mut opts = VerifyOptions::default();
        if samples > 0 {
            opts.samples = samples;
        }
        opts.seed = seed;
        let reports = match verify_all(bouquet, &opts) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        let text = match serde_json::to_string(&reports) {
            Ok(t) => t,
            Err(e) => return fail(&Error::from(e)),
        };
        let verdict = all_pass(&reports);
        let status = hand_out_string(text, report_json);
        if status == EqbStatus::Ok {
            // SAFETY: checked non-null above.
            unsafe { *all_checks_pass = verdict };
        }
        status
    })
}

/// Runs the dimension-bound certificate. On `Ok`, `report_json` receives
/// the serialized report and `bound_holds` its verdict.
///
/// # Safety
/// `b` must be a live handle; `report_json` and `bound_holds` must be
/// valid. Free the string with [`eqb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn eqb_certify(
    b: *const EqbBouquet,
    report_json: *mut *mut c_char,
    bound_holds: *mut bool,
) -> EqbStatus {
    guarded(|| {
        let bouquet = match unsafe { borrow(b) } {
            Ok(e) => e,
            Err(status) => return status,
        };
        if bound_holds.is_null() {
            return fail_with(EqbStatus::NullPointer, "bound_holds pointer is null");
        }
        let report = match certify(bouquet) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        let text = match serde_json::to_string(&report) {
            Ok(t) => t,
            Err(e) => return fail(&Error::from(e)),
        };
        let verdict = report.holds;
        let status = hand_out_string(text, report_json);
        if status == EqbStatus::Ok {
            // SAFETY: checked non-null above.
            unsafe { *bound_holds = verdict };
        }
        status
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    unsafe fn own_string(p: *mut c_char) -> String {
        let text = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
        unsafe { eqb_string_free(p) };
        text
    }

    #[test]
    fn construct_query_and_free() {
        unsafe {
            let mut handle: *mut EqbBouquet = ptr::null_mut();
            assert_eq!(eqb_construction_b(3, &mut handle), EqbStatus::Ok);
            let mut genus = 0usize;
            let mut dim = 0usize;
            assert_eq!(eqb_bouquet_genus(handle, &mut genus), EqbStatus::Ok);
            assert_eq!(eqb_bouquet_ambient_dim(handle, &mut dim), EqbStatus::Ok);
            assert_eq!((genus, dim), (3, 6));

            let mut point = vec![0.0f64; dim];
            assert_eq!(
                eqb_bouquet_eval(handle, 0, 0.0, point.as_mut_ptr(), dim),
                EqbStatus::Ok
            );
            let norm: f64 = point.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12, "vertex norm {norm}");

            eqb_bouquet_free(handle);
        }
    }

    #[test]
    fn json_round_trip_is_stable() {
        unsafe {
            let mut handle: *mut EqbBouquet = ptr::null_mut();
            assert_eq!(eqb_construction_a(2, true, &mut handle), EqbStatus::Ok);
            let mut text_ptr: *mut c_char = ptr::null_mut();
            assert_eq!(eqb_bouquet_to_json(handle, &mut text_ptr), EqbStatus::Ok);
            let first = own_string(text_ptr);

            let cstring = CString::new(first.clone()).unwrap();
            let mut reparsed: *mut EqbBouquet = ptr::null_mut();
            assert_eq!(
                eqb_bouquet_from_json(cstring.as_ptr(), &mut reparsed),
                EqbStatus::Ok
            );
            let mut second_ptr: *mut c_char = ptr::null_mut();
            assert_eq!(eqb_bouquet_to_json(reparsed, &mut second_ptr), EqbStatus::Ok);
            assert_eq!(first, own_string(second_ptr));

            eqb_bouquet_free(handle);
            eqb_bouquet_free(reparsed);
        }
    }

    #[test]
    fn verify_and_certify_report_success() {
        unsafe {
            let mut handle: *mut EqbBouquet = ptr::null_mut();
            assert_eq!(eqb_construction_b(2, &mut handle), EqbStatus::Ok);

            let mut report: *mut c_char = ptr::null_mut();
            let mut ok = false;
            assert_eq!(
                eqb_verify(handle, 64, 0x5EED, &mut report, &mut ok),
                EqbStatus::Ok
            );
            assert!(ok);
            let parsed: serde_json::Value =
                serde_json::from_str(&own_string(report)).unwrap();
            assert!(parsed.as_array().unwrap().len() >= 8);

            let mut cert: *mut c_char = ptr::null_mut();
            let mut holds = false;
            assert_eq!(eqb_certify(handle, &mut cert, &mut holds), EqbStatus::Ok);
            assert!(holds);
            let parsed: serde_json::Value = serde_json::from_str(&own_string(cert)).unwrap();
            assert_eq!(parsed["dim_V"], 2);

            eqb_bouquet_free(handle);
        }
    }

    #[test]
    fn failures_set_status_and_message() {
        unsafe {
            let mut handle: *mut EqbBouquet = ptr::null_mut();
            assert_eq!(
                eqb_construction_a(1, false, &mut handle),
                EqbStatus::InvalidArgument
            );
            let msg = CStr::from_ptr(eqb_last_error_message()).to_string_lossy().into_owned();
            assert!(msg.contains("at least 2"), "{msg}");

            assert_eq!(
                eqb_bouquet_genus(ptr::null(), &mut 0usize),
                EqbStatus::NullPointer
            );

            let garbage = CString::new("{\"genus\":").unwrap();
            assert_eq!(
                eqb_bouquet_from_json(garbage.as_ptr(), &mut handle),
                EqbStatus::Json
            );

            assert_eq!(eqb_construction_b(2, &mut handle), EqbStatus::Ok);
            let mut point = [0.0f64; 3];
            assert_eq!(
                eqb_bouquet_eval(handle, 0, 1.0, point.as_mut_ptr(), 3),
                EqbStatus::InvalidArgument,
                "wrong out_len must be rejected"
            );
            assert_eq!(
                eqb_bouquet_eval(handle, 7, 1.0, point.as_mut_ptr(), 3),
                EqbStatus::InvalidArgument,
                "circle index out of range"
            );
            eqb_bouquet_free(handle);
        }
    }

    #[test]
    fn compactify_raises_dimension_once() {
        unsafe {
            let mut flat: *mut EqbBouquet = ptr::null_mut();
            assert_eq!(eqb_b2_demo(&mut flat), EqbStatus::Ok);
            let mut lifted: *mut EqbBouquet = ptr::null_mut();
            assert_eq!(eqb_bouquet_compactify(flat, &mut lifted), EqbStatus::Ok);
            let mut dim = 0usize;
            assert_eq!(eqb_bouquet_ambient_dim(lifted, &mut dim), EqbStatus::Ok);
            assert_eq!(dim, 4);
            let mut twice: *mut EqbBouquet = ptr::null_mut();
            assert_eq!(
                eqb_bouquet_compactify(lifted, &mut twice),
                EqbStatus::InvalidArgument
            );
            eqb_bouquet_free(flat);
            eqb_bouquet_free(lifted);
        }
    }
}
