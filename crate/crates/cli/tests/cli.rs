use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelian-ideals"))
        .args(args)
        .current_dir(dir)
        .env_remove("ABELIAN_IDEALS_SEED")
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn complex_delta_9() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("delta.json");
    let o = run(dir.path(), &["complex", "--family", "delta", "--n", "9", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), out.to_str().unwrap());
    let r = json(&out);
    assert_eq!(r["verdict"], "verified");
    assert_eq!(r["claims"][0]["witness"], serde_json::json!([9, 27, 18]));
}

#[test]
fn default_output_path_is_in_the_working_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["klein"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "klein.json");
    assert!(dir.path().join("klein.json").exists());
}

#[test]
fn betti_gamma_6_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["betti", "--family", "gamma", "--n", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("betti.csv")).unwrap();
    assert_eq!(csv, "i,j,beta\n0,0,1\n1,2,9\n2,3,16\n3,4,9\n4,6,1\n");
}

#[test]
fn theta_rank_surface_odd() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["theta-rank", "--case", "surface-odd", "--d", "5", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&dir.path().join("theta-rank.json"));
    assert_eq!(r["claims"][0]["witness"]["max_rank"], 4);
    assert_eq!(r["seed"], 3);
}

#[test]
fn seed_comes_from_the_environment_and_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for (name, jobs) in [("a.json", "1"), ("b.json", "4")] {
        let o = Command::new(env!("CARGO_BIN_EXE_abelian-ideals"))
            .args(["theta-secant", "--n", "7", "--jobs", jobs, "--out", name])
            .current_dir(dir.path())
            .env("ABELIAN_IDEALS_SEED", "42")
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        bodies.push(std::fs::read(dir.path().join(name)).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
    assert_eq!(json(&dir.path().join("a.json"))["seed"], 42);
}

#[test]
fn emit_objects() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["emit", "ideal", "--family", "scroll", "--n", "13", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&dir.path().join("ideal.json"))["generators"].as_array().unwrap().len(), 39);

    let o = run(dir.path(), &["emit", "complex", "--family", "cyclic", "--n", "6", "--dim", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&dir.path().join("complex.json"))["facets"].as_array().unwrap().len(), 9);

    let o = run(dir.path(), &["emit", "matrix", "--kind", "even", "--d", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("matrix.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "x[0]*y[0] + x[3]*y[3],x[4]*y[2] + x[1]*y[5],x[5]*y[1] + x[2]*y[4]");
}

#[test]
fn negative_lambda_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["scroll", "--n", "10", "--lambda", "-1,1/2", "--k-max", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn parameter_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["nope"][..],
        &["complex", "--n", "3"],
        &["scroll"],
        &["scroll", "--n", "10", "--lambda", "0"],
        &["emit", "ideal", "--family", "scroll"],
        &["theta-rank", "--case", "sideways", "--d", "3"],
        &["theta-rank", "--d", "3", "--tol", "-1"],
        &["klein", "--format", "xml"],
        &["klein", "--jobs", "0"],
    ] {
        let o = run(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn unwritable_output_is_a_parameter_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("r.json");
    let o = run(dir.path(), &["klein", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failed_verification_exits_with_3_and_still_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    // A threshold below double precision counts rounding noise as rank.
    let o = run(dir.path(), &["theta-rank", "--case", "surface-odd", "--d", "5", "--rank-tol", "1e-17", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "theta-rank.json");
    assert_eq!(json(&dir.path().join("theta-rank.json"))["verdict"], "failed");
}
