use std::ffi::{CStr, CString};
use std::ptr;

use lipinterp_ffi::*;

fn last_error() -> String {
    let p = li_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn sample_set(points: &[([f64; 2], f64)]) -> *mut LiSampleSet {
    let mut set = ptr::null_mut();
    assert_eq!(li_sample_set_new(2, &mut set), LiStatus::Ok);
    for (x, y) in points {
        assert_eq!(li_sample_set_push(set, x.as_ptr(), *y), LiStatus::Ok);
    }
    set
}

#[test]
fn predict_bounds_and_envelope() {
    unsafe {
        let set = sample_set(&[([0.0, 0.0], 0.0), ([2.0, 0.0], 2.0)]);
        let mut model = ptr::null_mut();
        assert_eq!(li_model_new(2.0, 1.0, 1.0, &mut model), LiStatus::Ok);

        let x = [1.0, 0.0];
        let mut y = f64::NAN;
        assert_eq!(
            li_model_predict(model, set, x.as_ptr(), &mut y),
            LiStatus::Ok
        );
        assert_eq!(y, 1.0);

        let (mut lo, mut hi) = (0.0, 0.0);
        assert_eq!(
            li_model_bounds(model, set, x.as_ptr(), &mut lo, &mut hi),
            LiStatus::Ok
        );
        assert_eq!((lo, hi), (1.0, 1.0));

        assert_eq!(
            li_model_envelope(model, set, x.as_ptr(), &mut lo, &mut hi),
            LiStatus::Config
        );
        assert!(last_error().contains("noise"));
        assert_eq!(li_model_set_noise_bound(model, 0.25), LiStatus::Ok);
        assert_eq!(
            li_model_envelope(model, set, x.as_ptr(), &mut lo, &mut hi),
            LiStatus::Ok
        );
        assert_eq!((lo, hi), (0.75, 1.25));

        let mut n = 0;
        assert_eq!(li_sample_set_len(set, &mut n), LiStatus::Ok);
        assert_eq!(n, 2);
        li_model_free(model);
        li_sample_set_free(set);
    }
}

#[test]
fn max_norm_is_infinity() {
    unsafe {
        let set = sample_set(&[([0.0, 0.0], 0.0)]);
        let mut model = ptr::null_mut();
        assert_eq!(
            li_model_new(f64::INFINITY, 1.0, 1.0, &mut model),
            LiStatus::Ok
        );
        let (x, mut lo, mut hi) = ([3.0, -1.0], 0.0, 0.0);
        assert_eq!(
            li_model_bounds(model, set, x.as_ptr(), &mut lo, &mut hi),
            LiStatus::Ok
        );
        assert_eq!((lo, hi), (-3.0, 3.0));
        li_model_free(model);
        li_sample_set_free(set);

        let mut bad = ptr::null_mut();
        assert_eq!(
            li_model_new(1.5, 1.0, 1.0, &mut bad),
            LiStatus::InvalidArgument
        );
        assert!(bad.is_null());
    }
}

#[test]
fn empty_data_and_null_pointers() {
    unsafe {
        let set = sample_set(&[]);
        let mut model = ptr::null_mut();
        assert_eq!(li_model_new(2.0, 1.0, 1.0, &mut model), LiStatus::Ok);
        let (x, mut y) = ([0.0, 0.0], 0.0);
        assert_eq!(
            li_model_predict(model, set, x.as_ptr(), &mut y),
            LiStatus::EmptyData
        );
        assert_eq!(
            li_model_predict(model, set, ptr::null(), &mut y),
            LiStatus::NullPointer
        );
        assert_eq!(
            li_model_predict(ptr::null(), set, x.as_ptr(), &mut y),
            LiStatus::NullPointer
        );
        assert!(last_error().contains("model"));
        assert_eq!(
            li_sample_set_len(set, ptr::null_mut()),
            LiStatus::NullPointer
        );
        li_model_free(model);
        li_sample_set_free(set);
        li_sample_set_free(ptr::null_mut());
    }
}

#[test]
fn lacki_tracks_steepest_slope() {
    unsafe {
        let mut state = ptr::null_mut();
        assert_eq!(li_lacki_new(1, 2.0, 1.0, 0.5, &mut state), LiStatus::Ok);
        let mut l = -1.0;
        assert_eq!(
            li_lacki_update(state, [0.0].as_ptr(), 0.0, &mut l),
            LiStatus::Ok
        );
        assert_eq!(l, 0.0);
        assert_eq!(
            li_lacki_update(state, [1.0].as_ptr(), 3.0, ptr::null_mut()),
            LiStatus::Ok
        );
        assert_eq!(li_lacki_estimate(state, &mut l), LiStatus::Ok);
        assert_eq!(l, 2.5);
        let mut n = 0;
        assert_eq!(li_lacki_len(state, &mut n), LiStatus::Ok);
        assert_eq!(n, 2);
        let mut y = 0.0;
        assert_eq!(
            li_lacki_predict(state, [0.5].as_ptr(), &mut y),
            LiStatus::Ok
        );
        assert_eq!(y, 1.5);
        assert_eq!(
            li_lacki_update(state, [f64::NAN].as_ptr(), 0.0, ptr::null_mut()),
            LiStatus::InvalidArgument
        );
        li_lacki_free(state);
    }
}

#[test]
fn scalar_helpers() {
    unsafe {
        let mut v = 0.0;
        assert_eq!(li_rate_exponent(1, 1.0, 1.0, &mut v), LiStatus::Ok);
        assert_eq!(v, 0.5);
        assert_eq!(
            li_rate_exponent(0, 1.0, 1.0, &mut v),
            LiStatus::InvalidArgument
        );
        assert_eq!(li_spectral_radius(0.1, 1.0, 1.0, &mut v), LiStatus::Ok);
        assert!((v - 0.91f64.sqrt()).abs() < 1e-12);
    }
    let version = unsafe { CStr::from_ptr(li_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn loads_csv_and_reports_missing_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    std::fs::write(&path, "x0,x1,y\n0.0,1.0,2.0\n").unwrap();
    unsafe {
        let c = CString::new(path.to_str().unwrap()).unwrap();
        let mut set = ptr::null_mut();
        assert_eq!(li_sample_set_load_csv(c.as_ptr(), &mut set), LiStatus::Ok);
        let mut d = 0;
        assert_eq!(li_sample_set_dim(set, &mut d), LiStatus::Ok);
        assert_eq!(d, 2);
        li_sample_set_free(set);

        let missing = CString::new(dir.path().join("nope.csv").to_str().unwrap()).unwrap();
        assert_eq!(
            li_sample_set_load_csv(missing.as_ptr(), &mut set),
            LiStatus::Io
        );
    }
}
