use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn lipinterp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lipinterp"))
        .args(args)
        .output()
        .unwrap()
}

struct Scratch {
    dir: TempDir,
}

impl Scratch {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }
    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
    fn arg(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }
    fn write(&self, name: &str, body: &str) {
        std::fs::write(self.path(name), body).unwrap();
    }
    fn read(&self, name: &str) -> String {
        std::fs::read_to_string(self.path(name)).unwrap()
    }
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn run_ok(args: &[&str]) {
    let out = lipinterp(args);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn bad_config_exits_with_two_and_json_error() {
    let s = Scratch::new();
    s.write(
        "bad.json",
        r#"{"target":"chirp","noise":{"kind":"uniform","e_bar":0.5},"bogus":1}"#,
    );
    let out = lipinterp(&[
        "rate-study",
        "--config",
        &s.arg("bad.json"),
        "--out",
        &s.arg("o.csv"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "config");
    assert!(!s.path("o.csv").exists());
}

#[test]
fn unstable_gains_are_a_config_error() {
    let s = Scratch::new();
    s.write("p.json", r#"{"k1":100.0,"k2":1.0}"#);
    let out = lipinterp(&[
        "pendulum",
        "--config",
        &s.arg("p.json"),
        "--out",
        &s.arg("o.csv"),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_data_file_is_a_config_error() {
    let s = Scratch::new();
    s.write("fit.json", r#"{"data":"nope.csv","lipschitz":1.0}"#);
    let out = lipinterp(&[
        "fit",
        "--config",
        &s.arg("fit.json"),
        "--out",
        &s.arg("o.csv"),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_is_a_runtime_error() {
    let s = Scratch::new();
    s.write("data.csv", "x0,y\n0.0,1.0\n");
    s.write("fit.json", r#"{"data":"data.csv","lipschitz":1.0}"#);
    let out = lipinterp(&[
        "fit",
        "--config",
        &s.arg("fit.json"),
        "--out",
        &s.arg("missing/dir/o.csv"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "runtime");
}

#[test]
fn single_sample_predicts_a_constant() {
    let s = Scratch::new();
    s.write("data.csv", "x0,y\n0.5,3.25\n");
    s.write("q.csv", "x0\n0.0\n0.5\n7.0\n");
    s.write(
        "p.json",
        r#"{"data":"data.csv","lipschitz":2.0,"queries":"q.csv"}"#,
    );
    run_ok(&[
        "predict",
        "--config",
        &s.arg("p.json"),
        "--out",
        &s.arg("o.csv"),
    ]);
    let r = rows(&s.read("o.csv"));
    assert_eq!(r[0], ["x0", "prediction", "floor", "ceiling"]);
    assert_eq!(r.len(), 4);
    for row in &r[1..] {
        assert_eq!(row[1], "3.25");
    }
    // ceiling at 7.0 is 3.25 + 2 * 6.5
    assert_eq!(r[3][3], "16.25");
}

#[test]
fn predict_with_noise_bound_adds_envelope() {
    let s = Scratch::new();
    s.write("data.csv", "x0,x1,y\n0.0,0.0,0.0\n1.0,0.0,1.0\n");
    s.write(
        "p.json",
        r#"{"data":"data.csv","lipschitz":1.0,"noise_bound":0.1,"query_points":[[0.5,0.0]]}"#,
    );
    run_ok(&[
        "predict",
        "--config",
        &s.arg("p.json"),
        "--out",
        &s.arg("o.csv"),
    ]);
    let r = rows(&s.read("o.csv"));
    assert_eq!(
        r[0],
        [
            "x0",
            "x1",
            "prediction",
            "floor",
            "ceiling",
            "lower",
            "upper"
        ]
    );
    let v: Vec<f64> = r[1].iter().map(|x| x.parse().unwrap()).collect();
    assert_eq!(&v[2..], &[0.5, 0.5, 0.5, 0.4, 0.6]);
}

#[test]
fn fit_estimates_with_lacki_when_no_constant_is_given() {
    let s = Scratch::new();
    s.write("data.csv", "x0,y\n0.0,0.0\n1.0,3.0\n");
    s.write("fit.json", r#"{"data":"data.csv","noise_bound":0.5}"#);
    run_ok(&[
        "fit",
        "--config",
        &s.arg("fit.json"),
        "--out",
        &s.arg("o.json"),
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&s.read("o.json")).unwrap();
    assert_eq!(v["lipschitz"], 2.0);
    assert_eq!(v["method"], "lacki");
}

#[test]
fn rate_study_writes_summary_reps_and_plot() {
    let s = Scratch::new();
    s.write(
        "r.json",
        r#"{"target":"sine","noise":{"kind":"uniform","e_bar":0.1},"sample_sizes":[16,32,64],"repetitions":3,"grid_points":200}"#,
    );
    run_ok(&[
        "rate-study",
        "--config",
        &s.arg("r.json"),
        "--out",
        &s.arg("r.csv"),
        "--svg",
        &s.arg("r.svg"),
    ]);
    let summary = rows(&s.read("r.csv"));
    assert_eq!(summary[0], ["n", "mean", "std", "theoretical_rate"]);
    assert_eq!(summary.len(), 4);
    let reps = rows(&s.read("r_reps.csv"));
    assert_eq!(reps[0], ["n", "rep", "sup_error"]);
    assert_eq!(reps.len(), 1 + 9);
    assert!(s.read("r.svg").starts_with("<svg"));
}

#[test]
fn pendulum_overrides_reps_and_steps() {
    let s = Scratch::new();
    s.write("p.json", "{}");
    run_ok(&[
        "pendulum",
        "--config",
        &s.arg("p.json"),
        "--out",
        &s.arg("p.csv"),
        "--reps",
        "2",
        "--steps",
        "20",
    ]);
    let summary = rows(&s.read("p.csv"));
    assert_eq!(summary[0], ["step", "mean_err", "std_err"]);
    assert_eq!(summary.len(), 1 + 21);
    let trace = rows(&s.read("p_trace.csv"));
    assert_eq!(
        trace[0],
        ["rep", "step", "q", "qdot", "u", "zeta1", "zeta2", "err_norm", "d_model"]
    );
    assert_eq!(trace.len(), 1 + 2 * 21);
}

#[test]
fn seed_flag_changes_study_output() {
    let s = Scratch::new();
    s.write("l.json", r#"{"target":"sine","noise":{"kind":"uniform","e_bar":0.1},"sample_sizes":[50],"repetitions":2}"#);
    for seed in ["1", "2"] {
        run_ok(&[
            "lacki-study",
            "--config",
            &s.arg("l.json"),
            "--out",
            &s.arg(&format!("l{seed}.csv")),
            "--seed",
            seed,
        ]);
    }
    assert_ne!(s.read("l1.csv"), s.read("l2.csv"));
    assert_eq!(
        rows(&s.read("l1_reps.csv"))[0],
        ["n", "rep", "l_estimate", "abs_error"]
    );
}

#[test]
fn eta_check_reports_each_epsilon() {
    let s = Scratch::new();
    s.write(
        "e.json",
        r#"{"noise":{"kind":"uniform","e_bar":1.0},"n_draws":50000,"epsilons":[0.1,0.2]}"#,
    );
    run_ok(&[
        "eta-check",
        "--config",
        &s.arg("e.json"),
        "--out",
        &s.arg("e.csv"),
    ]);
    let r = rows(&s.read("e.csv"));
    assert_eq!(r.len(), 3);
    assert!(r[1..].iter().all(|row| row[5] == "true"));
}

#[test]
fn outputs_land_next_to_requested_path() {
    let s = Scratch::new();
    std::fs::create_dir(s.path("nested")).unwrap();
    s.write("data.csv", "x0,y\n0.0,1.0\n");
    s.write(
        "nested/p.json",
        r#"{"data":"../data.csv","lipschitz":1.0,"query_points":[[0.0]]}"#,
    );
    run_ok(&[
        "predict",
        "--config",
        &s.arg("nested/p.json"),
        "--out",
        &s.arg("nested/o.csv"),
    ]);
    assert!(Path::new(&s.path("nested/o.csv")).exists());
}
