use std::process::{Command, Output};

fn bvsieve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bvsieve")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn usage_errors() {
    assert_eq!(bvsieve(&["kappa", "--eps", "0.6"]).status.code(), Some(64));
    assert_eq!(bvsieve(&["kappa", "--cutoffs", "3000,50,250"]).status.code(), Some(64));
    assert_eq!(bvsieve(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(bvsieve(&["verify", "c3"]).status.code(), Some(64));
    assert_eq!(bvsieve(&["sieve", "--d2", "3", "--h", "poly:1,1"]).status.code(), Some(64));
    assert_eq!(bvsieve(&["sieve", "--d1", "5", "--d2", "3"]).status.code(), Some(64));
    assert_eq!(bvsieve(&["--help"]).status.code(), Some(0));
}

#[test]
fn sieve_csv() {
    let o = bvsieve(&["sieve", "--d1", "1", "--d2", "3", "--h", "h0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("D1,D2,M,prediction_main,prediction_second,residual_times_l2,N,S"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!((row[2].parse::<f64>().unwrap() - 0.6990362).abs() < 1e-7);
    let same = bvsieve(&["sieve", "--d1", "1", "--d2", "3", "--h", "poly:0,1"]);
    assert_eq!(o.stdout, same.stdout);
}

#[test]
fn sieve_grid_is_deterministic() {
    let args = ["sieve", "--d2-grid", "1e3,1e4,3e4", "--n", "20000"];
    let a = bvsieve(&[&args[..], &["--threads", "1"]].concat());
    let b = bvsieve(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let res: Vec<f64> = stdout(&a).lines().skip(1).map(|l| l.split(',').nth(5).unwrap().parse().unwrap()).collect();
    assert!(res.iter().all(|r| *r < 0.0));
    assert!((res[2] + 0.6073).abs() < (res[0] + 0.6073).abs());
    assert_eq!(bvsieve(&["sieve", "--d2", "2e5"]).status.code(), Some(2));
}

#[test]
fn output_file_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.json");
    let o = bvsieve(&["sieve", "--d2", "100", "--format", "json", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["D2"], 100.0);
}

#[test]
fn verify_ledger_checks() {
    let o = bvsieve(&["verify", "sumCp"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS sumCp"));
    let o = bvsieve(&["verify", "c2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let o = bvsieve(&["verify", "h-table"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.trim_start().starts_with(|c: char| c.is_ascii_digit())).count(), 4);
}

#[test]
fn verify_inverse_zeta() {
    let o = bvsieve(&["verify", "inv-zeta-2-500"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn kappa_smoke() {
    let args = ["kappa", "--T", "1000", "--eps", "0.01", "--width", "1e-3"];
    let o = bvsieve(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mid: f64 = v["kappa"]["mid"].as_str().unwrap().parse().unwrap();
    let rad: f64 = v["kappa"]["rad"].as_str().unwrap().parse().unwrap();
    assert!((mid - 0.607314).abs() <= rad && 2.0 * rad <= 1e-3);
    let text = bvsieve(&[&args[..], &["--format", "text"]].concat());
    assert!(String::from_utf8(text.stdout).unwrap().contains("kappa = "));
}
