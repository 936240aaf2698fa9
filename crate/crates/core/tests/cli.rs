//! End-to-end runs of the command-line binary.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_heston-tree");

const AMERICAN_PUT: &str = "\
s0 = 110
sqrt_v0 = 0.4
r = 0.05
kappa = 3
theta = 0.04
eta = 0.1
rho = -0.1
payoff = put
exercise = american
strike = 100
maturity = 0.5
n = 250
";

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn last_price(line: &str) -> f64 {
    let tail = line.split(": ").nth(1).unwrap();
    tail.split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn american_put_example() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "am.cfg", AMERICAN_PUT);
    let csv = dir.path().join("am.csv");
    let o = run(&["price", "--config", &cfg, "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let price = last_price(&stdout(&o));
    assert!((price - 4.5554).abs() / 4.5554 < 1e-3, "{price}");

    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("table_id,S0,sqrt_v0,T,K,rho,engine,n,paths,price"));
    assert!(lines[0].ends_with(",price_full"));
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields.len(), lines[0].split(',').count());
    assert_eq!(fields[6], "backward");
    let full: f64 = fields[15].parse().unwrap();
    assert_eq!(format!("{full:.4}"), fields[9]);
}

#[test]
fn incompatible_engine_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "am.cfg", AMERICAN_PUT);
    let o = run(&["price", "--config", &cfg, "--engine", "closed-form"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("engine"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_configs_name_the_field_and_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = write(dir.path(), "missing.cfg", &AMERICAN_PUT.replace("strike = 100\n", ""));
    let o = run(&["price", "--config", &missing]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("strike"));

    let bad = write(dir.path(), "bad.cfg", &AMERICAN_PUT.replace("rho = -0.1", "rho = 1.5"));
    let o = run(&["price", "--config", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("rho"));

    let cfg = write(dir.path(), "am.cfg", AMERICAN_PUT);
    for args in [
        vec!["price", "--config", cfg.as_str(), "--engine", "lattice"],
        vec!["price", "--config", cfg.as_str(), "--n", "-3"],
        vec!["price", "--config", cfg.as_str(), "--set", "colour=blue"],
        vec!["price"],
        vec!["table", "10"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn numerical_limits_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "lb.cfg", &AMERICAN_PUT.replace("payoff = put", "payoff = lookback-put"));
    let o = run(&["price", "--config", &cfg, "--n", "400"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).contains("400"));
}

#[test]
fn tree_monte_carlo_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "mc.cfg", &AMERICAN_PUT.replace("american", "european"));
    let args = |out: &str| {
        vec!["price".to_string(), "--config".into(), cfg.clone(), "--engine".into(), "tree-mc".into(), "--paths".into(), "5000".into(), "--seed".into(), "17".into(), "--out".into(), out.to_string()]
    };
    let a_csv = dir.path().join("a.csv");
    let b_csv = dir.path().join("b.csv");
    let a = Command::new(BIN).args(args(a_csv.to_str().unwrap())).output().unwrap();
    let b = Command::new(BIN).args(args(b_csv.to_str().unwrap())).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&a_csv).unwrap(), std::fs::read(&b_csv).unwrap());
    assert!(stdout(&a).contains("95% CI"));

    let c = run(&["price", "--config", &cfg, "--engine", "tree-mc", "--paths", "5000", "--seed", "18"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn saved_config_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "base.cfg", &AMERICAN_PUT.replace("american", "european"));
    let saved = dir.path().join("saved.cfg");
    let first = run(&[
        "price", "--config", &cfg, "--engine", "euler-mc", "--n", "50", "--paths", "3000", "--seed", "5",
        "--set", "payoff=call", "--save-config", saved.to_str().unwrap(),
    ]);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let again = run(&["price", "--config", saved.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(first.stdout, again.stdout);
    assert!(std::fs::read_to_string(&saved).unwrap().contains("engine = euler-mc"));
}

#[test]
fn table_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t5.csv");
    let o = run(&["table", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 16);
    assert!(text.lines().skip(1).all(|l| l.starts_with("5,")));
    let summary = stderr(&o);
    assert!(summary.contains("table 5"));
    assert!(summary.contains("PASS"), "{summary}");

    let piped = run(&["table", "5"]);
    assert_eq!(stdout(&piped), text);
}

#[test]
fn check_prints_one_line_per_criterion() {
    let o = run(&["check", "--criterion", "4", "--criterion", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let lines: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with("criterion")).map(String::from).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("criterion  4 PASS"));
    assert!(lines[1].starts_with("criterion  6 PASS"));
}

#[test]
fn help_exits_0() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for sub in ["price", "table", "check"] {
        assert!(stdout(&o).contains(sub));
    }
}
