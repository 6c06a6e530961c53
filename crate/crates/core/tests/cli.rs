use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str], out: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nonneg-bench"));
    cmd.args(args);
    if let Some(dir) = out {
        cmd.arg("--out").arg(dir);
    }
    cmd.output().expect("binary runs")
}

#[test]
fn cond_prints_report() {
    let out = bin(&["cond", "--n", "30", "--shape", "square"], None);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let m = report["m"].as_f64().unwrap();
    assert!((m - 0.2).abs() < 0.02, "m = {m}");
    assert_eq!(report["k_star"].as_u64(), Some(15));
    for key in ["s_max", "s_min", "cond_classical", "cond_nonneg"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn gen_writes_problem_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&["gen", "--n", "30", "--shape", "over", "--test", "3", "--seed", "7"], Some(dir.path()));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let a = nonneg::linalg::io::read_matrix(&dir.path().join("A.csv")).unwrap();
    assert_eq!(a.shape(), (30, 20));
    let v0 = nonneg::linalg::io::read_vector(&dir.path().join("v0.csv")).unwrap();
    let b = nonneg::linalg::io::read_vector(&dir.path().join("b.csv")).unwrap();
    let noise = nonneg::linalg::io::read_vector(&dir.path().join("noise.csv")).unwrap();
    assert_eq!((v0.len(), b.len(), noise.len()), (20, 30, 30));
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("meta.json")).unwrap()).unwrap();
    assert_eq!(meta["seed"], 7);
    assert_eq!(meta["shape"], "over");
}

#[test]
fn run_defaults_write_42_rows_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&["run"], Some(dir.path()));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("results.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("problem,shape,solver,n,rho,iterations,converged,seconds,seed,min_v"));
    assert_eq!(lines.count(), 42);
    assert!(!csv.contains('\r'));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("results.json")).unwrap()).unwrap();
    assert_eq!(json["records"].as_array().unwrap().len(), 42);
    assert_eq!(json["config"]["seed"], 42);
    assert_eq!(json["config"]["n"], 30);
}

#[test]
fn unknown_and_reserved_ids_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&["run", "--solvers", "trnnc,bogus"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("trnnc") && err.contains("nnls"), "{err}");

    let out = bin(&["run", "--solvers", "gmres"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not implemented"));

    let out = bin(&["run", "--tests", "7"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));

    let out = bin(&["run", "--shape", "diagonal"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));
    assert!(!dir.path().join("results.csv").exists());
}

#[test]
fn unwritable_output_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = bin(&["run", "--tests", "1", "--solvers", "tr"], Some(&blocker.join("sub")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inv_is_skipped_for_under_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&["run", "--shape", "under", "--solvers", "inv"], Some(dir.path()));
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("notice"));
    let csv = std::fs::read_to_string(dir.path().join("results.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1);
}

#[test]
fn plots_are_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&["run", "--plots"], Some(dir.path()));
    assert!(out.status.success());
    let svgs: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "svg"))
        .collect();
    assert_eq!(svgs.len(), 48);
    for path in &svgs {
        let text = std::fs::read_to_string(path).unwrap();
        roxmltree::Document::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
    assert!(dir.path().join("test4_trnnc.svg").exists());
    assert!(dir.path().join("test6_summary.svg").exists());
}
