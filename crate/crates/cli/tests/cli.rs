use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cryomram"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn cryomram")
}

fn decks() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../decks")
}

fn deck(name: &str) -> String {
    decks().join(name).display().to_string()
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("cryomram-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap_or_else(|| panic!("no column {name}"));
    lines.map(|l| l.split(',').nth(k).unwrap().to_string()).collect()
}

#[test]
fn characterize_shipped_40nm_at_77k() {
    let out = stdout(&run(&["characterize", "--deck", &deck("dmtj40.toml"), "--temp", "77"]));
    assert_eq!(out.lines().count(), 2);
    let delta: f64 = column(&out, "delta")[0].parse().unwrap();
    let tmr: f64 = column(&out, "tmr0_pct")[0].parse().unwrap();
    assert!((delta - 175.0).abs() <= 5.0, "delta {delta}");
    assert!((tmr - 205.0).abs() <= 5.0, "tmr {tmr}");
}

#[test]
fn characterize_is_byte_identical() {
    let a = run(&["characterize", "--format", "json"]);
    let b = run(&["characterize", "--format", "json"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn empty_deck_is_a_parse_error() {
    let dir = tmp("empty");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("empty.toml");
    std::fs::write(&p, "").unwrap();
    let o = run(&["characterize", "--deck", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
}

#[test]
fn malformed_deck_names_the_line() {
    let dir = tmp("malformed");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("bad.toml");
    let text = std::fs::read_to_string(decks().join("dmtj13.toml")).unwrap();
    std::fs::write(&p, text.replace("ra_ohm_um2 = 2.0", "ra_ohm_um2 = \"two\"")).unwrap();
    let o = run(&["characterize", "--deck", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line") && err.contains("ra_ohm_um2"), "{err}");
}

#[test]
fn missing_deck_is_an_io_error() {
    let o = run(&["characterize", "--deck", "/nonexistent/deck.toml"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn sweep_single_point_and_delta_at_13nm() {
    let out = stdout(&run(&["sweep-diameter", "--temp", "77", "--d-min-nm", "13", "--d-max-nm", "13"]));
    assert_eq!(out.lines().count(), 2);
    let delta: f64 = column(&out, "delta")[0].parse().unwrap();
    assert!((delta - 60.0).abs() <= 5.0, "{delta}");

    let o = run(&["sweep-diameter", "--d-min-nm", "2", "--d-max-nm", "13"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn wer_zero_trials_reports_json_error() {
    let o = run(&["wer", "--trials", "0", "--error-json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["kind"], "validation");
    assert_eq!(v["exit_code"], 2);
    assert!(v["message"].as_str().unwrap().contains("trials"));
}

#[test]
fn wer_is_seeded() {
    let args = ["wer", "--trials", "300", "--points", "8", "--seed", "5"];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    assert!(column(&a, "method").iter().any(|m| m == "monte-carlo"));
    let c = stdout(&run(&["wer", "--trials", "300", "--points", "8", "--seed", "6"]));
    assert_ne!(a, c);
}

#[test]
fn bitcell_fixed_seed_is_repeatable_and_writes_manifest() {
    let (d1, d2) = (tmp("bc1"), tmp("bc2"));
    for d in [&d1, &d2] {
        let o = run(&["bitcell", "--deck", &deck("dmtj13.toml"), "--trials", "200", "--seed", "3", "--out", d.to_str().unwrap()]);
        stdout(&o);
    }
    for f in ["bitcell.csv", "bitcell_samples.csv", "cell_deck.toml"] {
        let a = std::fs::read(d1.join(f)).unwrap();
        assert_eq!(a, std::fs::read(d2.join(f)).unwrap(), "{f}");
    }
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d1.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["command"], "bitcell");
    assert_eq!(m["seed"], 3);
    assert_eq!(m["outputs"].as_array().unwrap().len(), 3);
    assert!(m["timestamp"].as_str().unwrap().ends_with('Z'));

    // the exported cell deck feeds the array benchmark
    let cell = d1.join("cell_deck.toml");
    let o = run(&["bench", "--mram13", cell.to_str().unwrap(), "--max-kb", "128"]);
    assert_eq!(column(&stdout(&o), "metric").len(), 12);
}

#[test]
fn bench_leakage_is_far_below_sram() {
    let dir = tmp("bench");
    stdout(&run(&["bench", "--out", dir.to_str().unwrap()]));
    let csv = std::fs::read_to_string(dir.join("bench.csv")).unwrap();
    assert!(csv.starts_with("capacity,metric,mram40,mram13,sram,mram40_norm,mram13_norm"));
    let metric = column(&csv, "metric");
    let caps = column(&csv, "capacity");
    let mut seen = 0;
    for col in ["mram40_norm", "mram13_norm"] {
        for (k, v) in column(&csv, col).iter().enumerate() {
            if metric[k] == "leakage_w" {
                let v: f64 = v.parse().unwrap();
                assert!(v > 0.0 && v <= 0.05, "{col} at {}: {v}", caps[k]);
                seen += 1;
            }
        }
    }
    assert_eq!(seen, 12);
    assert!(dir.join("manifest.json").exists());
}

#[test]
fn bench_rejects_unknown_objective_and_capacity() {
    assert_eq!(run(&["bench", "--objective", "speed"]).status.code(), Some(2));
    assert_eq!(run(&["bench", "--min-kb", "32"]).status.code(), Some(2));
    assert_eq!(run(&["bench", "--temp", "4"]).status.code(), Some(2));
}

#[test]
fn exported_decks_match_shipped_files() {
    let dir = tmp("decks");
    stdout(&run(&["decks", "--out", dir.to_str().unwrap()]));
    for entry in std::fs::read_dir(decks()).unwrap() {
        let p = entry.unwrap().path();
        let name = p.file_name().unwrap();
        let fresh = std::fs::read_to_string(dir.join(name)).unwrap();
        assert_eq!(fresh, std::fs::read_to_string(&p).unwrap(), "{}", p.display());
    }
    assert_eq!(run(&["decks"]).status.code(), Some(2));
}
