use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavelet-landau"))
        .args(args)
        .current_dir(dir)
        .env("WAVELET_LANDAU_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn metric(report: &str, name: &str) -> f64 {
    report
        .lines()
        .find_map(|l| l.strip_prefix(name).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no metric {name} in\n{report}"))
        .parse()
        .unwrap()
}

#[test]
fn verify_filter_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = run(dir.path(), &["verify-filter", "--filter", "haar"]);
    assert_eq!(code(&ok), 0);
    assert!(dir.path().join("out/verify-filter/report.txt").exists());

    std::fs::write(dir.path().join("bad.txt"), "0 1 0\n1 1 0\n").unwrap();
    let bad = run(dir.path(), &["verify-filter", "--filter", "bad.txt"]);
    assert_eq!(code(&bad), 1);
    assert!((metric(&stdout(&bad), "normalization") - 1.0).abs() < 1e-14);

    let missing = run(dir.path(), &["verify-filter", "--filter", "missing.txt"]);
    assert_eq!(code(&missing), 2);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("missing.txt"));

    let list = run(dir.path(), &["verify-filter", "--filter", "[1, 1]"]);
    assert_eq!(code(&list), 1);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["overlaps", "--grid", "4"])), 2);
    assert_eq!(code(&run(dir.path(), &["overlaps", "--grid", "16,16"])), 2);
    assert_eq!(code(&run(dir.path(), &["overlaps", "--filter", "db9"])), 2);
    assert_eq!(code(&run(dir.path(), &["overlaps", "--tol", "-1"])), 2);
    assert_eq!(code(&run(dir.path(), &["no-such-command"])), 2);
}

#[test]
fn overlaps_haar() {
    let dir = tempfile::tempdir().unwrap();
    let l1 = run(dir.path(), &["overlaps", "--filter", "haar", "--L", "1"]);
    assert_eq!(code(&l1), 0);
    let r = stdout(&l1);
    assert!(metric(&r, "j_max_dev") <= 1e-10);
    assert!((metric(&r, "j_target") - 1.0 / std::f64::consts::PI).abs() < 1e-14);
    let table = std::fs::read_to_string(dir.path().join("out/overlaps/overlaps.txt")).unwrap();
    let row = table.lines().find(|l| l.starts_with("0 1 ")).expect("S(0,1) row");
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert!((cols[2].parse::<f64>().unwrap() - 0.5).abs() < 1e-8);
    assert_eq!(cols[7], "info");

    let l2 = run(dir.path(), &["overlaps", "--filter", "haar", "--L", "2"]);
    assert_eq!(code(&l2), 0);
    assert!((metric(&stdout(&l2), "j_target") - 2.0 / std::f64::consts::PI).abs() < 1e-14);
}

#[test]
fn invert_d4() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["invert", "--filter", "d4"]);
    assert_eq!(code(&out), 0);
    assert!(metric(&stdout(&out), "roundtrip_max_dev") <= 1e-10);
    let ex = std::fs::read_to_string(dir.path().join("out/invert/extracted_k0.txt")).unwrap();
    assert!(ex.contains("# k = 0.00000000000000e0"));
}

#[test]
fn haar_compare_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["haar-compare", "--grid", "21"]);
    assert_eq!(code(&out), 0);
    assert!(metric(&stdout(&out), "max_rel_err") <= 1e-6);
    let table = std::fs::read_to_string(dir.path().join("out/haar-compare/comparison.txt")).unwrap();
    let rows = table.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, 21 * 21);
}

#[test]
fn slater_determinants() {
    let dir = tempfile::tempdir().unwrap();
    let ortho = run(dir.path(), &["slater", "--filter", "haar", "--L", "1", "--sites", "4"]);
    assert_eq!(code(&ortho), 0);
    assert!(metric(&stdout(&ortho), "det_dev") <= 1e-8);

    let gauss = run(dir.path(), &["slater", "--hp", "gaussian", "--sites", "4"]);
    assert_eq!(code(&gauss), 1);
    assert!(metric(&stdout(&gauss), "det_abs") < 1.0 - 1e-3);
}

#[test]
fn grid_exports() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["grid", "--grid", "16,16,9", "--level", "1", "--m", "1", "--n", "-2"]);
    assert_eq!(code(&out), 0);
    let wf = std::fs::read_to_string(dir.path().join("out/grid/wavefunction.txt")).unwrap();
    assert_eq!(wf.lines().filter(|l| !l.starts_with('#')).count(), 81);
    let kq = std::fs::read_to_string(dir.path().join("out/grid/kq.txt")).unwrap();
    assert_eq!(kq.lines().filter(|l| !l.starts_with('#')).count(), 256);
}

#[test]
fn structured_output_is_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["verify-filter", "--filter", "d6", "--format", "structured"]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(dir.path().join("out/verify-filter/report.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["config"]["filter"], "d6");
    assert!(v["metrics"]["max_residual"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let files = ["report.txt", "overlaps.txt", "j_criterion.txt"];
    let args = ["overlaps", "--filter", "d4", "--L", "2", "--grid", "16,16,8"];
    assert_eq!(code(&run(dir.path(), &args)), 0);
    let first: Vec<Vec<u8>> = files
        .iter()
        .map(|f| std::fs::read(dir.path().join("out/overlaps").join(f)).unwrap())
        .collect();
    assert_eq!(code(&run(dir.path(), &args)), 0);
    for (f, before) in files.iter().zip(&first) {
        assert_eq!(&std::fs::read(dir.path().join("out/overlaps").join(f)).unwrap(), before, "{f}");
    }
}
