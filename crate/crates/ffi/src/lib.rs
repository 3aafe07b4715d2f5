//! C interface to `lipinterp`.
//!
//! Every function returns an [`LiStatus`]; results are written through out
//! pointers. On failure, [`li_last_error_message`] describes the error for the
//! calling thread. Handles are opaque and must be released with their `_free`
//! function. Query points are arrays of `dim` doubles, where `dim` is the input
//! dimension of the sample set or estimator they are used with.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use lipinterp::control::{closed_loop_matrix, spectral_radius};
use lipinterp::experiments::RateSpec;
use lipinterp::{HolderMetric, LackiState, LiError, LipschitzInterpolator, NormOrder, SampleSet};

/// Result code of every `li_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    EmptyData = 4,
    Config = 5,
    Unsupported = 6,
    Degenerate = 7,
    Io = 8,
    Parse = 9,
    Panic = 10,
}

/// A set of samples `(x, y)` with a fixed input dimension.
pub struct LiSampleSet {
    inner: SampleSet,
}

/// Interpolator with a fixed metric, Lipschitz constant and optional noise bound.
pub struct LiModel {
    inner: LipschitzInterpolator,
}

/// Online LACKI estimator that owns its data.
pub struct LiLacki {
    inner: LackiState,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &LiError) -> LiStatus {
    match err {
        LiError::DimensionMismatch { .. } => LiStatus::DimensionMismatch,
        LiError::EmptyData => LiStatus::EmptyData,
        LiError::InvalidInput(_) => LiStatus::InvalidArgument,
        LiError::Config(_) => LiStatus::Config,
        LiError::Unsupported(_) => LiStatus::Unsupported,
        LiError::Degenerate(_) => LiStatus::Degenerate,
        LiError::Io(_) => LiStatus::Io,
        LiError::Csv(_) | LiError::Json(_) => LiStatus::Parse,
    }
}

enum Failure {
    Null(&'static str),
    Li(LiError),
}

impl From<LiError> for Failure {
    fn from(e: LiError) -> Self {
        Failure::Li(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LiStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            LiStatus::NullPointer
        }
        Ok(Err(Failure::Li(e))) => {
            let status = status_of(&e);
            set_last_error(e.to_string());
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            LiStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(ptr: *const T, what: &'static str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or(Failure::Null(what))
}

unsafe fn get_mut<'a, T>(ptr: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    ptr.as_mut().ok_or(Failure::Null(what))
}

unsafe fn point<'a>(x: *const f64, dim: usize) -> Result<&'a [f64], Failure> {
    if x.is_null() {
        return Err(Failure::Null("x"));
    }
    Ok(std::slice::from_raw_parts(x, dim))
}

unsafe fn write<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

fn metric(p: f64, alpha: f64) -> Result<HolderMetric, LiError> {
    HolderMetric::new(NormOrder::from_f64(p)?, alpha)
}

/// Message of the last failed call on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn li_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |m| m.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn li_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates an empty sample set with inputs of dimension `dim`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn li_sample_set_new(dim: usize, out: *mut *mut LiSampleSet) -> LiStatus {
    guard(|| {
        let set = SampleSet::new(dim)?;
        write(
            out,
            Box::into_raw(Box::new(LiSampleSet { inner: set })),
            "out",
        )
    })
}

/// Loads a sample set from a CSV file with header `x0,...,x{d-1},y`.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn li_sample_set_load_csv(
    path: *const c_char,
    out: *mut *mut LiSampleSet,
) -> LiStatus {
    guard(|| {
        if path.is_null() {
            return Err(Failure::Null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| LiError::InvalidInput("path is not valid UTF-8".into()))?;
        let set = SampleSet::load(path)?;
        write(
            out,
            Box::into_raw(Box::new(LiSampleSet { inner: set })),
            "out",
        )
    })
}

/// Appends one sample. `x` holds `dim` doubles.
///
/// # Safety
/// `set` must come from this library; `x` must point to `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn li_sample_set_push(
    set: *mut LiSampleSet,
    x: *const f64,
    y: f64,
) -> LiStatus {
    guard(|| {
        let set = get_mut(set, "set")?;
        let x = point(x, set.inner.dim())?;
        set.inner.push(x, y)?;
        Ok(())
    })
}

/// # Safety
/// `set` must come from this library and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn li_sample_set_len(set: *const LiSampleSet, out: *mut usize) -> LiStatus {
    guard(|| write(out, get(set, "set")?.inner.len(), "out"))
}

/// # Safety
/// `set` must come from this library and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn li_sample_set_dim(set: *const LiSampleSet, out: *mut usize) -> LiStatus {
    guard(|| write(out, get(set, "set")?.inner.dim(), "out"))
}

/// Releases a sample set. NULL is ignored.
///
/// # Safety
/// `set` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn li_sample_set_free(set: *mut LiSampleSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Creates an interpolator for the metric `‖x − y‖_p^alpha`. Pass `INFINITY`
/// for the max-norm; other values of `p` must be positive integers.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn li_model_new(
    p: f64,
    alpha: f64,
    lipschitz: f64,
    out: *mut *mut LiModel,
) -> LiStatus {
    guard(|| {
        let model = LipschitzInterpolator::new(metric(p, alpha)?, lipschitz)?;
        write(
            out,
            Box::into_raw(Box::new(LiModel { inner: model })),
            "out",
        )
    })
}

/// Sets the symmetric noise bound used by [`li_model_envelope`].
///
/// # Safety
/// `model` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn li_model_set_noise_bound(model: *mut LiModel, e_bar: f64) -> LiStatus {
    guard(|| {
        let model = get_mut(model, "model")?;
        model.inner = model.inner.with_noise_bound(e_bar)?;
        Ok(())
    })
}

/// Point prediction at `x`.
///
/// # Safety
/// Handles must come from this library; `x` must point to `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn li_model_predict(
    model: *const LiModel,
    set: *const LiSampleSet,
    x: *const f64,
    out: *mut f64,
) -> LiStatus {
    guard(|| {
        let (model, set) = (get(model, "model")?, get(set, "set")?);
        let y = model
            .inner
            .predict(point(x, set.inner.dim())?, &set.inner)?;
        write(out, y, "out")
    })
}

/// Floor and ceiling at `x`.
///
/// # Safety
/// Handles must come from this library; `x` must point to `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn li_model_bounds(
    model: *const LiModel,
    set: *const LiSampleSet,
    x: *const f64,
    out_floor: *mut f64,
    out_ceiling: *mut f64,
) -> LiStatus {
    guard(|| {
        let (model, set) = (get(model, "model")?, get(set, "set")?);
        let b = model.inner.bounds(point(x, set.inner.dim())?, &set.inner)?;
        write(out_floor, b.floor, "out_floor")?;
        write(out_ceiling, b.ceiling, "out_ceiling")
    })
}

/// Worst-case envelope at `x`. Requires a noise bound.
///
/// # Safety
/// Handles must come from this library; `x` must point to `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn li_model_envelope(
    model: *const LiModel,
    set: *const LiSampleSet,
    x: *const f64,
    out_lower: *mut f64,
    out_upper: *mut f64,
) -> LiStatus {
    guard(|| {
        let (model, set) = (get(model, "model")?, get(set, "set")?);
        let (lo, hi) = model
            .inner
            .envelope(point(x, set.inner.dim())?, &set.inner)?;
        write(out_lower, lo, "out_lower")?;
        write(out_upper, hi, "out_upper")
    })
}

/// Releases a model. NULL is ignored.
///
/// # Safety
/// `model` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn li_model_free(model: *mut LiModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Creates an empty LACKI estimator with offset `lambda`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn li_lacki_new(
    dim: usize,
    p: f64,
    alpha: f64,
    lambda: f64,
    out: *mut *mut LiLacki,
) -> LiStatus {
    guard(|| {
        let state = LackiState::new(dim, metric(p, alpha)?, lambda)?;
        write(
            out,
            Box::into_raw(Box::new(LiLacki { inner: state })),
            "out",
        )
    })
}

/// Adds a sample and optionally writes the updated estimate to `out_estimate`
/// (may be NULL).
///
/// # Safety
/// `state` must come from this library; `x` must point to `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn li_lacki_update(
    state: *mut LiLacki,
    x: *const f64,
    y: f64,
    out_estimate: *mut f64,
) -> LiStatus {
    guard(|| {
        let state = get_mut(state, "state")?;
        let x = point(x, state.inner.data().dim())?;
        let l = state.inner.update(x, y)?;
        if !out_estimate.is_null() {
            out_estimate.write(l);
        }
        Ok(())
    })
}

/// Current Lipschitz constant estimate (0 before two distinct inputs).
///
/// # Safety
/// `state` must come from this library and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn li_lacki_estimate(state: *const LiLacki, out: *mut f64) -> LiStatus {
    guard(|| write(out, get(state, "state")?.inner.lipschitz(), "out"))
}

/// Number of samples seen.
///
/// # Safety
/// `state` must come from this library and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn li_lacki_len(state: *const LiLacki, out: *mut usize) -> LiStatus {
    guard(|| write(out, get(state, "state")?.inner.data().len(), "out"))
}

/// Prediction at `x` using the current estimate and all data seen.
///
/// # Safety
/// `state` must come from this library; `x` must point to `dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn li_lacki_predict(
    state: *const LiLacki,
    x: *const f64,
    out: *mut f64,
) -> LiStatus {
    guard(|| {
        let state = get(state, "state")?;
        let y = state.inner.predict(point(x, state.inner.data().dim())?)?;
        write(out, y, "out")
    })
}

/// Releases an estimator. NULL is ignored.
///
/// # Safety
/// `state` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn li_lacki_free(state: *mut LiLacki) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Exponent `alpha / (d + eta·alpha)` of the sup-error rate `(ln n / n)^exponent`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn li_rate_exponent(
    d: usize,
    alpha: f64,
    eta: f64,
    out: *mut f64,
) -> LiStatus {
    guard(|| write(out, RateSpec::new(d, alpha, eta)?.exponent(), "out"))
}

/// Spectral radius of the discrete closed-loop error matrix for step `delta`
/// and gains `k1`, `k2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn li_spectral_radius(
    delta: f64,
    k1: f64,
    k2: f64,
    out: *mut f64,
) -> LiStatus {
    guard(|| {
        write(
            out,
            spectral_radius(closed_loop_matrix(delta, k1, k2)),
            "out",
        )
    })
}
