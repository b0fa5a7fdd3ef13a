//! C ABI for the gkz library.
//!
//! Handles are opaque pointers to loaded models; every analysis returns a
//! freshly allocated JSON string that the caller must release with
//! [`gkz_string_free`]. All functions return a [`GkzStatus`] code; on
//! failure an error message is available through [`gkz_last_error`]-style
//! out-parameters on the call itself.

use gkz::error::GkzError;
use gkz::io::{self, InputBundle};
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Status codes returned by every FFI entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GkzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    SchemaError = 3,
    MathError = 4,
    InternalError = 5,
}

/// Opaque handle to a loaded configuration or model.
pub struct GkzModel {
    bundle: InputBundle,
}

fn status_of(e: &GkzError) -> GkzStatus {
    match e.exit_code() {
        2 => GkzStatus::SchemaError,
        _ => GkzStatus::MathError,
    }
}

fn string_out(s: String, out: *mut *mut c_char) -> GkzStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            GkzStatus::Ok
        }
        Err(_) => GkzStatus::InternalError,
    }
}

/// Parse a JSON configuration/model document into a handle.
///
/// # Safety
/// `json` must be a valid NUL-terminated C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkz_model_load_json(
    json: *const c_char,
    out: *mut *mut GkzModel,
) -> GkzStatus {
    if json.is_null() || out.is_null() {
        return GkzStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        return GkzStatus::InvalidUtf8;
    };
    match io::load_input(text) {
        Ok(bundle) => {
            *out = Box::into_raw(Box::new(GkzModel { bundle }));
            GkzStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Release a model handle.
///
/// # Safety
/// `model` must be null or a pointer previously returned by
/// [`gkz_model_load_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gkz_model_free(model: *mut GkzModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Release a string returned by any analysis call.
///
/// # Safety
/// `s` must be null or a string pointer returned by this library, not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn gkz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn with_model<F>(model: *const GkzModel, out: *mut *mut c_char, f: F) -> GkzStatus
where
    F: FnOnce(&InputBundle) -> Result<String, GkzError>,
{
    if model.is_null() || out.is_null() {
        return GkzStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let bundle = &(*model).bundle;
    match f(bundle) {
        Ok(s) => string_out(s, out),
        Err(e) => status_of(&e),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, GkzError> {
    serde_json::to_string(v).map_err(|e| GkzError::Internal(e.to_string()))
}

/// Summary of the configuration: lattice data, volume, chamber and ring.
///
/// # Safety
/// `model` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkz_analyze_json(
    model: *const GkzModel,
    out: *mut *mut c_char,
) -> GkzStatus {
    with_model(model, out, |bundle| {
        let vol = gkz::fan::volume(&bundle.config, &bundle.lattice)?;
        let chamber = bundle.chamber()?;
        let ring = gkz::ring::build_ring(&bundle.config, &bundle.lattice, &chamber)?;
        let payload = serde_json::json!({
            "name": bundle.name,
            "num_points": bundle.config.num_points(),
            "ambient_rank": bundle.config.ambient_rank(),
            "lattice_rank": bundle.lattice.rank(),
            "volume": vol.to_string(),
            "chamber": io::triangulation_json(&bundle.config, &chamber),
            "ring_ranks": ring.grading_ranks,
            "poincare_ok": gkz::ring::poincare_check(&ring, &bundle.config, &chamber),
        });
        to_json(&payload)
    })
}

/// All chambers of the secondary fan as triangulation records.
///
/// # Safety
/// `model` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkz_fan_json(model: *const GkzModel, out: *mut *mut c_char) -> GkzStatus {
    with_model(model, out, |bundle| {
        let tris = gkz::fan::enumerate_regular_triangulations(&bundle.config, &bundle.lattice)?;
        let chambers: Vec<io::TriangulationJson> = tris
            .iter()
            .map(|t| io::triangulation_json(&bundle.config, t))
            .collect();
        to_json(&serde_json::json!({ "name": bundle.name, "chambers": chambers }))
    })
}

/// The graded ring of the distinguished chamber.
///
/// # Safety
/// `model` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkz_ring_json(model: *const GkzModel, out: *mut *mut c_char) -> GkzStatus {
    with_model(model, out, |bundle| {
        let chamber = bundle.chamber()?;
        let ring = gkz::ring::build_ring(&bundle.config, &bundle.lattice, &chamber)?;
        to_json(&io::ring_json(&ring))
    })
}

/// Instanton numbers of a mirror model at the given truncation order.
///
/// # Safety
/// `model` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gkz_mirror_json(
    model: *const GkzModel,
    order: u32,
    out: *mut *mut c_char,
) -> GkzStatus {
    with_model(model, out, |bundle| {
        let m = gkz::mirror::MirrorModel::from_bundle(bundle)?;
        let (run, table) = gkz::mirror::instanton_numbers(&m, order)?;
        let pairing = gkz::mirror::pairing_report(&run)?;
        let numbers: Vec<serde_json::Value> = table
            .entries
            .iter()
            .map(|(idx, v)| {
                serde_json::json!({
                    "index": idx,
                    "value": io::rat_to_string(v),
                    "integral": v.is_integer(),
                })
            })
            .collect();
        to_json(&serde_json::json!({
            "model": m.name,
            "order": order,
            "N": numbers,
            "pairing": {
                "invariant_form_dimension": pairing.invariant_dimension,
                "pattern_ok": pairing.pattern_ok,
                "tau_in_invariant_span": pairing.tau_in_invariant_span,
            },
        }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(json: &str) -> *mut GkzModel {
        let c = CString::new(json).unwrap();
        let mut handle: *mut GkzModel = ptr::null_mut();
        let st = unsafe { gkz_model_load_json(c.as_ptr(), &mut handle) };
        assert_eq!(st, GkzStatus::Ok);
        handle
    }

    #[test]
    fn load_analyze_free() {
        let handle = load(r#"{"name":"gauss","A":[[1,1,1],[-1,0,0],[0,1,0],[0,0,1]]}"#);
        let mut s: *mut c_char = ptr::null_mut();
        let st = unsafe { gkz_analyze_json(handle, &mut s) };
        assert_eq!(st, GkzStatus::Ok);
        let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
        assert!(text.contains("\"volume\":\"2\""));
        unsafe {
            gkz_string_free(s);
            gkz_model_free(handle);
        }
    }

    #[test]
    fn null_and_schema_errors() {
        let mut handle: *mut GkzModel = ptr::null_mut();
        let st = unsafe { gkz_model_load_json(ptr::null(), &mut handle) };
        assert_eq!(st, GkzStatus::NullPointer);
        let bad = CString::new(r#"{"name":"x"}"#).unwrap();
        let st = unsafe { gkz_model_load_json(bad.as_ptr(), &mut handle) };
        assert_eq!(st, GkzStatus::SchemaError);
        assert!(handle.is_null());
    }

    #[test]
    fn mirror_small_order() {
        let handle = load(
            r#"{"name":"quintic","B":[[-5,1,1,1,1,1]],"gamma":[-1,0,0,0,0,0],"kappa":5}"#,
        );
        let mut s: *mut c_char = ptr::null_mut();
        let st = unsafe { gkz_mirror_json(handle, 2, &mut s) };
        assert_eq!(st, GkzStatus::Ok);
        let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
        assert!(text.contains("2875"));
        unsafe {
            gkz_string_free(s);
            gkz_model_free(handle);
        }
    }
}
