use std::fs;
use std::process::Command;

fn bench() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isdc-bench"))
}

#[test]
fn single_run_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("run.csv");
    let json = dir.path().join("run.json");
    let out = bench()
        .args(["single", "--problem", "heat", "--nu", "10", "--nodes", "3", "--mode", "isdc", "--grid", "16", "--out"])
        .arg(&csv)
        .arg("--json")
        .arg(&json)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("schema,problem,nu,nodes"));
    assert_eq!(text.lines().count(), 2);
    let stats: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(stats[0]["spec"]["mode"], "isdc-fixed");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let csv = dir.path().join("from-config.csv");
    fs::write(&cfg, format!("problem = burgers\nnu = 1\ngrid = 16\nout = {}\n", csv.display())).unwrap();
    let out = bench().args(["single", "--nu", "0.1", "--config"]).arg(&cfg).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("1,burgers,0.1,"));
}

#[test]
fn non_convergence_is_not_a_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "max-sweeps = 1\ngrid = 16\nnu = 100\n").unwrap();
    let out = bench().args(["single", "--config"]).arg(&cfg).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains('*'));
}

#[test]
fn infrastructure_errors_exit_nonzero() {
    let out = bench().args(["single", "--config", "/nonexistent/run.cfg"]).output().unwrap();
    assert!(!out.status.success());
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "colour = blue\n").unwrap();
    let out = bench().args(["single", "--config"]).arg(&cfg).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn matrix_filter_and_order_study() {
    let out = bench().args(["matrix", "--nu", "10", "--nodes", "3", "--grid", "16"]).output().unwrap();
    assert!(out.status.success());
    let table = String::from_utf8_lossy(&out.stdout);
    assert_eq!(table.lines().filter(|l| l.starts_with("heat")).count(), 1);

    let out = bench().args(["order", "--grid", "16", "--nodes", "3"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("spatial error floor"));
}

#[test]
fn ablation_lists_every_policy() {
    let out = bench().args(["ablation", "--nu", "10", "--grid", "16"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for policy in ["previous-sweep", "zero", "previous-node"] {
        assert_eq!(text.matches(policy).count(), 2);
    }
}
