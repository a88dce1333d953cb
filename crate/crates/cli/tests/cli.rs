use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use swcert_cli::counts::CountsFile;
use swcert_cli::run::Comparison;
use swcert_core::bases::complete_mubs;
use swcert_core::json::{BasisSetJson, DensityMatrixJson};
use swcert_core::states::isotropic;
use swcert_core::witness::{certify, BoundMode, Evidence, WitnessReport};
use tempfile::TempDir;

fn swcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swcert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = swcert(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn read(p: &str) -> String {
    fs::read_to_string(Path::new(p)).unwrap()
}

#[test]
fn certify_state_matches_library() {
    let dir = TempDir::new().unwrap();
    let (s, b, r) = (
        path(&dir, "s.json"),
        path(&dir, "b.json"),
        path(&dir, "r.json"),
    );
    ok(&[
        "gen-state",
        "--family",
        "isotropic",
        "--dim",
        "3",
        "--p",
        "0.3",
        "--out",
        &s,
    ]);
    ok(&[
        "gen-bases",
        "--family",
        "ivonovic",
        "--dim",
        "3",
        "--out",
        &b,
    ]);
    ok(&[
        "certify", "--state", &s, "--bases", &b, "--mode", "loose", "--report", &r,
    ]);
    let report: WitnessReport = serde_json::from_str(&read(&r)).unwrap();

    let rho: DensityMatrixJson = serde_json::from_str(&read(&s)).unwrap();
    assert_eq!(rho.to_state().unwrap(), isotropic(3, 0.3).unwrap());
    let bs: BasisSetJson = serde_json::from_str(&read(&b)).unwrap();
    let expected = certify(
        Evidence::State(&rho.to_state().unwrap()),
        &bs.to_set().unwrap(),
        BoundMode::Loose,
    )
    .unwrap();
    assert_eq!(report, expected);
    assert!(read(&r).ends_with("}\n"));
}

#[test]
fn certify_from_counts() {
    let dir = TempDir::new().unwrap();
    let (c, b) = (path(&dir, "c.json"), path(&dir, "b.json"));
    fs::write(
        &b,
        swcert_core::json::to_string_precise(&BasisSetJson::from_set(&complete_mubs(3).unwrap()))
            .unwrap(),
    )
    .unwrap();
    let counts = serde_json::json!({
        "dim": 3,
        "bases": ["computational", "prime-quadratic-0"],
        "counts": {
            "computational": [[100, 0, 0], [0, 100, 0], [0, 0, 100]],
            "prime-quadratic-0": [[90, 5, 5], [5, 90, 5], [5, 5, 90]]
        }
    });
    fs::write(&c, counts.to_string()).unwrap();
    let report: WitnessReport =
        serde_json::from_str(&ok(&["certify", "--counts", &c, "--bases", &b])).unwrap();
    assert!((report.s_value - 1.9).abs() < 1e-12);
    assert_eq!(report.certified_k_lower, 3);
    assert!(report.s_std_error.unwrap() > 0.0);
    let back: CountsFile = serde_json::from_str(&read(&c)).unwrap();
    assert_eq!(back.validate().unwrap().dim(), 3);
}

#[test]
fn malformed_counts_exit_one() {
    let dir = TempDir::new().unwrap();
    let (c, b) = (path(&dir, "c.json"), path(&dir, "b.json"));
    ok(&[
        "gen-bases",
        "--family",
        "three-mubs",
        "--dim",
        "3",
        "--pr",
        "1",
        "--out",
        &b,
    ]);
    let bad = serde_json::json!({"dim": 3, "bases": ["computational"], "counts": {"computational": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]}});
    fs::write(&c, bad.to_string()).unwrap();
    let out = swcert(&["certify", "--counts", &c, "--bases", &b]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema violation"));
}

#[test]
fn exit_codes() {
    assert_eq!(swcert(&["scan", "--curve", "fig1"]).status.code(), Some(2));
    assert_eq!(
        swcert(&["certify", "--bases", "b.json", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        swcert(&["gen-bases", "--family", "random", "--dim", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        swcert(&[
            "gen-bases",
            "--family",
            "three-mubs",
            "--dim",
            "4",
            "--pr",
            "2"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        swcert(&[
            "certify",
            "--state",
            "/nonexistent.json",
            "--bases",
            "/nonexistent.json"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(swcert(&["--help"]).status.code(), Some(0));
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let runs: Vec<[&str; 8]> = vec![
        [
            "gen-bases",
            "--family",
            "random",
            "--dim",
            "4",
            "--seed",
            "11",
            "--out",
        ],
        [
            "scan",
            "--curve",
            "levy",
            "--params",
            "dim=12,trials=20,points=4",
            "--seed",
            "5",
            "--out",
        ],
    ];
    for (i, args) in runs.iter().enumerate() {
        let (a, b) = (path(&dir, &format!("{i}a")), path(&dir, &format!("{i}b")));
        ok(&[&args[..], &[a.as_str()]].concat());
        ok(&[&args[..], &[b.as_str()]].concat());
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
    let other = ok(&[
        "gen-bases",
        "--family",
        "random",
        "--dim",
        "4",
        "--seed",
        "12",
    ]);
    assert_ne!(other, read(&path(&dir, "0a")));
}

#[test]
fn fig1_csv_columns() {
    let text = ok(&[
        "scan",
        "--curve",
        "fig1",
        "--params",
        "dim=5,m=2:3,k=4,points=5",
    ]);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["eps_min", "m", "k", "p_threshold"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 10);
    let p0: f64 = rows[0][3].parse().unwrap();
    // S = 2 - 8p/5 against B_4 = 9/5.
    assert!((p0 - 0.125).abs() < 1e-12);
    assert_eq!(&rows[0][3], "1.2500000000000000e-1");
}

#[test]
fn other_scans_run() {
    for (curve, params) in [
        ("figA1", "dims=3..6,m=3,p=0.05"),
        ("figA3", "dim=5,beta=0.5,points=5"),
        ("figA4", "dim=5,theta=1.5,points=5"),
        ("cmin-bound", "dims=2..20"),
        ("levy", "dim=30"),
    ] {
        let text = ok(&["scan", "--curve", curve, "--params", params]);
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines.len() > 1, "{curve}");
        let width = lines[0].split(',').count();
        assert!(
            lines.iter().all(|l| l.split(',').count() == width),
            "{curve}"
        );
    }
}

#[test]
fn compare_reports_both_witnesses() {
    let dir = TempDir::new().unwrap();
    let s = path(&dir, "s.json");
    ok(&[
        "gen-state",
        "--family",
        "thermal",
        "--dim",
        "5",
        "--p",
        "0.1",
        "--beta",
        "0.4",
        "--out",
        &s,
    ]);
    let c: Comparison = serde_json::from_str(&ok(&["compare", "--state", &s, "--M", "2"])).unwrap();
    assert_eq!(c.baseline.m, 2);
    assert!(c.witness.subset.len() <= 3);
    assert!(c.baseline.f_tilde <= 1.0 + 1e-9);
    assert_eq!(
        swcert(&["compare", "--state", &s, "--M", "9"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn generated_families_load_back() {
    let dir = TempDir::new().unwrap();
    let b = path(&dir, "b.json");
    for args in [
        vec!["--family", "three-mubs", "--dim", "6", "--pr", "1"],
        vec!["--family", "amub", "--dim", "6", "--p-eff", "7.2"],
        vec![
            "--family", "ivonovic", "--dim", "5", "--theta", "3.14", "--alpha", "1",
        ],
        vec![
            "--family", "random", "--dim", "3", "--count", "4", "--seed", "2",
        ],
    ] {
        ok(&[&["gen-bases"], &args[..], &["--out", &b]].concat());
        let set: BasisSetJson = serde_json::from_str(&read(&b)).unwrap();
        set.to_set().unwrap();
    }
    ok(&[
        "gen-bases",
        "--family",
        "tilted",
        "--dim",
        "3",
        "--lambda",
        "0.8,0.48,0.36",
        "--count",
        "2",
        "--out",
        &b,
    ]);
    let set: BasisSetJson = serde_json::from_str(&read(&b)).unwrap();
    assert_eq!(set.bases.len(), 3);
    assert_eq!(set.bases[1].orthonormal, Some(false));
}

#[test]
fn check_passes() {
    let text = ok(&["check", "--seed", "4"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4);
}
