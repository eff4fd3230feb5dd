use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use greenchannel::cli::{RunConfig, BASE_CFG};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_greenchannel"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str], out: &Path) -> Output {
    bin().args(args).arg("--out").arg(out).output().unwrap()
}

fn write_cfg(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("run.cfg");
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn solve_writes_all_structures() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["solve"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("equilibria.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("contract,w,p,theta"));
    assert!(lines.iter().any(|l| l.starts_with("D_CENT,105.")));
}

#[test]
fn nonconcave_calibration_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = fixture("nonconcave.cfg");
    let o = run(&["solve", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("concav"));
}

#[test]
fn bad_config_exits_1_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let text = BASE_CFG.replace("kinds = [\"CENT\", \"D_CENT\", \"CSC\", \"RSC\", \"LTT\"]", "kinds = [\"CENT\", \"NOPE\"]");
    let line = text.lines().position(|l| l.contains("NOPE")).unwrap() + 1;
    let cfg = write_cfg(dir.path(), &text);
    let o = run(&["solve", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(&format!("run.cfg:{line}:")), "{err}");

    let cfg = write_cfg(dir.path(), "seed = 1\n[params\nalpha = 1\n");
    let o = run(&["solve", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("run.cfg:2:"));
}

#[test]
fn unknown_contract_flag_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["solve", "--contract", "XYZ"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_matches_csv() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(run(&["solve"], a.path()).status.success());
    assert!(run(&["solve", "--format", "json"], b.path()).status.success());
    let mut rdr = csv::Reader::from_path(a.path().join("equilibria.csv")).unwrap();
    let header = rdr.headers().unwrap().clone();
    let json: serde_json::Value =
        serde_json::from_slice(&std::fs::read(b.path().join("equilibria.json")).unwrap()).unwrap();
    let rows = json.as_array().unwrap();
    let records: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), rows.len());
    for (rec, row) in records.iter().zip(rows) {
        for (h, cell) in header.iter().zip(rec.iter()) {
            let v = &row[h];
            match cell.parse::<f64>() {
                Ok(x) => assert_eq!(v.as_f64(), Some(x), "{h}"),
                Err(_) if cell.is_empty() => assert!(v.is_null(), "{h}"),
                Err(_) => assert_eq!(v.as_str(), Some(cell), "{h}"),
            }
        }
    }
}

#[test]
fn tax_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(run(&["tax", "--contract", "RSC"], a.path()).status.success());
    assert!(run(&["tax", "--contract", "RSC"], b.path()).status.success());
    for f in ["tax_RSC.csv", "tax_optimum.csv"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn mutated_shorthand_fails_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = fixture("mutated_delta2.cfg");
    let o = run(&["verify", "--config", cfg.to_str().unwrap()], dir.path());
    assert_ne!(o.status.code(), Some(0));
    let report = std::fs::read_to_string(dir.path().join("verify_report.txt")).unwrap();
    assert!(report.lines().any(|l| l.contains("FAIL") && l.to_lowercase().contains("foc")), "{report}");
}

#[test]
fn single_point_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let text = BASE_CFG.replace("steps = 61", "steps = 1").replace("quantities = [\"w\", \"p\", \"theta\", \"q\", \"pi_al\", \"pi_ap\", \"u_ap\", \"sw\"]", "quantities = [\"theta\"]");
    let cfg = write_cfg(dir.path(), &text);
    let o = run(&["sweep", "--config", cfg.to_str().unwrap(), "--contract", "LTT"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("sweep_xi_LTT_theta.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2, "{csv}");
}

#[test]
fn config_round_trip() {
    let cfg = RunConfig::parse(BASE_CFG, "base").unwrap();
    let again = RunConfig::parse(&cfg.to_toml(), "again").unwrap();
    assert_eq!(cfg, again);
}

#[test]
fn seed_flag_overrides_config() {
    let a = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--seed", "5"], a.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let report = std::fs::read_to_string(a.path().join("verify_report.txt")).unwrap();
    assert!(report.starts_with("verify seed=5\n"), "{report}");
}
