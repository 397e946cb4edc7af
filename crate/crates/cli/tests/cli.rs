use std::path::Path;
use std::process::{Command, Output};

use kerrcat_cli::formats::parse_grid_csv;

fn kerrcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kerrcat"))
        .args(args)
        .output()
        .expect("spawn kerrcat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decompose_quarter_period_gives_two_equal_components() {
    let o = kerrcat(&["decompose", "--alpha0", "2,0", "--frac", "1/4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 2);
    for r in &rows {
        assert!((r[4] - 0.5f64.sqrt()).abs() < 1e-12);
    }
    let summary = String::from_utf8(o.stderr).unwrap();
    assert!(summary.contains("components=2"));
}

#[test]
fn decompose_rejects_irrational_time() {
    let o = kerrcat(&["decompose", "--tau", "1.0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("rational fraction of period"));
}

#[test]
fn frac_and_tau_are_exclusive() {
    let o = kerrcat(&["evolve", "--frac", "1/4", "--tau", "1.0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(kerrcat(&["nonsense"]).status.code(), Some(1));
    assert_eq!(kerrcat(&["evolve", "--frac", "3/0"]).status.code(), Some(1));
    assert_eq!(kerrcat(&["evolve", "--ordering", "sideways"]).status.code(), Some(1));
    assert_eq!(kerrcat(&["evolve", "--eps", "2"]).status.code(), Some(1));
    assert_eq!(kerrcat(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_exits_three() {
    let o = kerrcat(&["evolve", "--out", "/nonexistent-dir/state.csv"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn evolve_is_normalized() {
    let o = kerrcat(&["evolve", "--alpha0", "1.5,-0.5", "--frac", "1/3", "--ordering", "normal"]);
    assert_eq!(o.status.code(), Some(0));
    let total: f64 = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-11);
}

#[test]
fn qpd_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let pgm = dir.path().join("a.pgm");
    for out in [&a, &b] {
        let o = kerrcat(&[
            "qpd", "--alpha0", "2,0", "--frac", "1/3", "--res", "31,21", "--out", path_str(out), "--pgm",
            path_str(&pgm),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let ta = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ta, std::fs::read_to_string(&b).unwrap());

    let grid = parse_grid_csv(&ta).unwrap();
    assert_eq!((grid.window().nx, grid.window().ny), (31, 21));
    let rewritten = kerrcat_cli::formats::grid_csv(&grid);
    assert_eq!(rewritten, ta);

    let meta = std::fs::read_to_string(dir.path().join("a.csv.meta")).unwrap();
    assert!(meta.contains("tau_over_pi=1.3333333333333333e0"));
    assert!(meta.contains("fraction=1/3"));
    assert!(std::fs::read_to_string(&pgm).unwrap().starts_with("P2\n31 21\n65535\n"));
}

#[test]
fn peaks_match_component_count() {
    let o = kerrcat(&["peaks", "--alpha0", "4,0", "--ordering", "normal", "--frac", "1/6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 6);
}

#[test]
fn contours_write_one_file_per_level() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("cat");
    let o = kerrcat(&[
        "contours", "--alpha0", "2,0", "--frac", "1/3", "--levels", "0.25,0.5", "--out", path_str(&prefix),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("cat_0.5.csv")).unwrap();
    assert!(text.starts_with("polyline_id,vertex_index,re,im\n"));
    let ids: std::collections::BTreeSet<&str> =
        text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ids.len(), 3);
    assert!(dir.path().join("cat_0.25.csv").exists());
}

#[test]
fn verify_reports_a_table() {
    let o = kerrcat(&["verify", "--quick"]);
    let text = stdout(&o);
    assert!(text.starts_with("check,status,detail\n"));
    let failing = text.lines().filter(|l| l.contains(",FAIL,")).count();
    if failing == 0 {
        assert_eq!(o.status.code(), Some(0));
    } else {
        assert_eq!(o.status.code(), Some(2));
    }
}
