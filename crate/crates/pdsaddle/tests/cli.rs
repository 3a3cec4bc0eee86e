use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pdsaddle::cli::ExperimentConfig;

const C1: &str = r#"{"schema":"1",
 "problem":{"f":{"kind":"quadratic","weight":1.0,"center":[0.0,1.0]},"g":{"kind":"quadratic","weight":4.0,"center":[0.5,0.0]},"A":[[2.0,0.0],[0.0,1.0]]},
 "algorithm":{"name":"chambolle_pock"},"steps":{"mode":"optimal","epsilon":0.1},"run":{"max_iters":2000,"residual_tol":1e-10}}"#;
const DIVERGENT: &str = r#"{"schema":"1","problem":{"f":{"kind":"zero","dim":1},"g":{"kind":"zero","dim":1},"A":[[1.0]]},
 "algorithm":{"name":"plain_pdg"},"steps":{"mode":"explicit","alpha":0.5},"run":{"w0":[1.0,0.0]}}"#;
const COUNTEREXAMPLE: &str = r#"{"schema":"1","problem":{"generator":"counterexample","which":"II"},"condition":"C2"}"#;
const VERIFY: &str = r#"{"schema":"1","problem":{"generator":"random","condition":"C1","n":3,"m":4,
 "constants":{"mu_f":0.5,"mu_g":1.0,"L_f":2.0,"L_g":3.0,"sing_min":0.2,"sing_max":1.5},"seed":4},
 "verify":{"pairs":300,"radius":2.0,"seed":9,"problems":2}}"#;
const BENCH: &str = r#"{"schema":"1","problem":{"generator":"huber_rof","rows":8,"cols":8,"lambda":8.0,"alpha":0.05},"run":{"max_iters":20000}}"#;

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn pdsaddle(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pdsaddle"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("PDSADDLE_THREADS", t),
        None => cmd.env_remove("PDSADDLE_THREADS"),
    };
    cmd.output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn rates_reports_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c1.json", C1);
    let out = pdsaddle(&["rates", "--config", cfg.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rho = v["certificate"]["rho"].as_f64().unwrap();
    assert!(rho > 0.0 && rho < 1.0);
    assert_eq!(v["certificate"]["condition"], "C1");
}

#[test]
fn run_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c1.json", C1);
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        let out = pdsaddle(&["run", "--config", cfg.to_str().unwrap(), "--out", p.to_str().unwrap()], None);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (ta, tb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(ta, tb);
    assert!(ta.starts_with("iter,residual_phi"));
    assert!(ta.lines().count() > 3);
}

#[test]
fn divergence_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "div.json", DIVERGENT);
    let out = pdsaddle(&["run", "--config", cfg.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unmet_condition_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "ce.json", COUNTEREXAMPLE);
    let out = pdsaddle(&["rates", "--config", cfg.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["status"], "error");
}

#[test]
fn malformed_config_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", r#"{"schema":"1","problem":{"generator":"nope"},"bogus":1}"#);
    assert_eq!(pdsaddle(&["rates", "--config", cfg.to_str().unwrap()], None).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(pdsaddle(&["rates", "--config", missing.to_str().unwrap()], None).status.code(), Some(2));
}

#[test]
fn verify_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "v.json", VERIFY);
    let path = cfg.to_str().unwrap();
    let one = pdsaddle(&["verify", "--config", path, "--seed", "5"], Some("1"));
    let four = pdsaddle(&["verify", "--config", path, "--seed", "5"], Some("4"));
    let any = pdsaddle(&["verify", "--config", path, "--seed", "5"], None);
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stdout));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, any.stdout);
}

#[test]
fn overrides_change_pairs_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "v.json", VERIFY);
    let path = cfg.to_str().unwrap();
    let a = json(&pdsaddle(&["verify", "--config", path, "--pairs", "120", "--seed", "1"], None));
    let b = json(&pdsaddle(&["verify", "--config", path, "--pairs", "120", "--seed", "2"], None));
    assert_ne!(a, b);
    assert!(a.to_string().contains("120") || a.to_string().contains("119"));
}

#[test]
fn bench_emits_one_row_per_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "b.json", BENCH);
    let out_path = dir.path().join("bench.csv");
    let out = pdsaddle(&["bench", "--config", cfg.to_str().unwrap(), "--out", out_path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let csv = std::fs::read_to_string(out_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("algorithm,status,condition,theorem,rho,iters_to_tol,observed_worst_ratio"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn config_round_trips_through_json() {
    for body in [C1, DIVERGENT, COUNTEREXAMPLE, VERIFY, BENCH] {
        let cfg = ExperimentConfig::from_json(body).unwrap();
        let again = ExperimentConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(cfg, again);
    }
}
