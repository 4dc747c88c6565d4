use std::fs;
use std::path::PathBuf;
use std::process::Command;

use esdg_mhd::cli::{parse_config, run, sweep, RunOptions, DIAGNOSTICS_HEADER};
use esdg_mhd::Error;

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("esdg-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

const SMALL_BLAST: &str = "\
# tiny blast wave
case = blast_wave
N = 2
elements = 2   # per direction
t_end = 0.02
cadence = 2
vtk_times = 0, 0.02
";

#[test]
fn config_errors_name_the_line_or_key() {
    let cases = [
        ("case=blast_wave\nN=3\nelements=2\ncfl=0", 4),
        ("case=blast_wave\nN=3\nelements=2\ncfl=1.0001", 4),
        ("case=blast_wave\n\n# ok\nN=3\nelements=2\nwhatever=1", 6),
        ("case=blast_wave\nN=3\nelements=2\nN=4", 4),
        ("case=blast_wave\nN=three\nelements=2", 2),
        ("case=blast_wave\nN=3\nelements=2\nflux=hll", 4),
        ("case=blast_wave\nN=3\nelements 2", 3),
        ("case=nonsense\nN=3\nelements=2", 1),
    ];
    for (text, line) in cases {
        match parse_config(text) {
            Err(Error::ConfigLine { line: l, .. }) => assert_eq!(l, line, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
    for (text, key) in [("N=3\nelements=2", "case"), ("case=blast_wave\nelements=2", "N")] {
        assert!(matches!(parse_config(text), Err(Error::MissingKey(k)) if k == key));
    }
    assert!(parse_config("case=blast_wave\nN=3\nelements=2\ncfl=1").is_ok());
    // the manufactured source fixes gamma
    assert!(matches!(parse_config("case=manufactured\nN=3\nelements=2\ngamma=1.4"), Err(Error::Config(_))));
}

#[test]
fn serial_runs_are_byte_identical() {
    let cfg = parse_config(SMALL_BLAST).unwrap();
    let (a, b) = (scratch_dir("det-a"), scratch_dir("det-b"));
    let opts = RunOptions { serial: true, cadence: None };
    run(&cfg, &a, &opts).unwrap();
    run(&cfg, &b, &opts).unwrap();
    for f in ["diagnostics.csv", "summary.csv", "solution_t0.0.vtk", "solution_t0.02.vtk"] {
        let (x, y) = (fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap());
        assert!(!x.is_empty() && x == y, "{f}");
    }
}

#[test]
fn diagnostics_and_summary_layout() {
    let cfg = parse_config(SMALL_BLAST).unwrap();
    let dir = scratch_dir("layout");
    let report = run(&cfg, &dir, &RunOptions { serial: true, cadence: Some(1) }).unwrap();
    assert!(report.crash.is_none());
    let diag = fs::read_to_string(dir.join("diagnostics.csv")).unwrap();
    let mut lines = diag.lines();
    assert_eq!(lines.next(), Some(DIAGNOSTICS_HEADER));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(rows.len() >= 3);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r.len(), 9);
        assert_eq!(r[0], i.to_string());
        // shortest round-trip text
        for cell in &r[1..] {
            let v: f64 = cell.parse().unwrap();
            assert_eq!(format!("{v:?}"), *cell);
        }
    }
    assert_eq!(rows.last().unwrap()[1], "0.02");
    let summary = fs::read_to_string(dir.join("summary.csv")).unwrap();
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], "status,t_final,crash_time,steps,S_initial,S_final,divB_initial,divB_final");
    assert!(lines[1].starts_with("completed,0.02,,"));

    let vtk = fs::read_to_string(dir.join("solution_t0.02.vtk")).unwrap();
    assert!(vtk.starts_with("# vtk DataFile Version 3.0"));
    // 8 elements of 27 nodes, 8 sub-cells each
    assert!(vtk.contains("POINTS 216 double") && vtk.contains("CELLS 64 576"));
    for name in ["rho", "p", "magnetic_energy", "psi"] {
        assert!(vtk.contains(&format!("SCALARS {name} double 1")));
    }
}

#[test]
fn manufactured_summary_has_error_and_eoc_rows() {
    let text = "case=manufactured\nN=2\nelements=2\nlevels=2,4\nt_end=0.01\ncfl=1\n";
    let dir = scratch_dir("mms");
    let report = run(&parse_config(text).unwrap(), &dir, &RunOptions { serial: true, cadence: Some(0) }).unwrap();
    assert_eq!(report.errors.len(), 2);
    let summary = fs::read_to_string(dir.join("summary.csv")).unwrap();
    let rows: Vec<&str> = summary.lines().collect();
    assert_eq!(rows[0], "row,elements,t_final,rho,v1,v3,p,B1,B3,psi");
    assert!(rows[1].starts_with("l2,2,0.01,") && rows[2].starts_with("l2,4,0.01,"));
    assert!(rows[3].starts_with("eoc,2-4,,") && rows[4].starts_with("eoc,avg,,"));
    assert!(rows.iter().all(|r| r.split(',').count() == 10));
    assert!(dir.join("level_2/diagnostics.csv").exists() && dir.join("level_4/diagnostics.csv").exists());
}

#[test]
fn sweep_writes_one_directory_per_value() {
    let text = format!("{SMALL_BLAST}sweep = alpha:0,0.5\n");
    let dir = scratch_dir("sweep");
    let reports = sweep(&parse_config(&text).unwrap(), &dir, &RunOptions { serial: true, cadence: None }).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(dir.join("alpha_0.0/diagnostics.csv").exists() && dir.join("alpha_0.5/diagnostics.csv").exists());
    let table = fs::read_to_string(dir.join("sweep.csv")).unwrap();
    assert_eq!(table.lines().count(), 3);
}

#[test]
fn binary_reports_errors_and_runs() {
    let exe = env!("CARGO_BIN_EXE_esdg");
    let dir = scratch_dir("bin");
    let bad = dir.join("bad.cfg");
    fs::write(&bad, "case = blast_wave\nN = 2\nelements = 2\ncfl = 2\n").unwrap();
    let out = Command::new(exe).args(["run", "--config"]).arg(&bad).arg("--output").arg(dir.join("o")).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let good = dir.join("good.cfg");
    fs::write(&good, SMALL_BLAST).unwrap();
    let out = Command::new(exe)
        .args(["run", "--serial", "--cadence", "3", "--config"])
        .arg(&good)
        .arg("--output")
        .arg(dir.join("o"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.join("o/diagnostics.csv").exists());

    let out = Command::new(exe).args(["verify", "--only", "1,3"]).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success() && text.lines().count() == 2 && text.contains("[PASS]"), "{text}");
}
