use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-syzygy")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toric-syzygy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

fn multiplicity_total(text: &str, p: &str) -> u64 {
    let header: Vec<&str> = text.lines().find(|l| !l.starts_with('#')).unwrap().split(',').collect();
    let m = header.iter().position(|h| *h == "multiplicity").unwrap();
    rows(text)
        .iter()
        .map(|r| r.split(',').collect::<Vec<_>>())
        .filter(|r| r[0] == p)
        .map(|r| r[m].parse::<u64>().unwrap())
        .sum()
}

#[test]
fn veronese_totals_both_modes() {
    for extra in [&[][..], &["--exact"][..]] {
        let mut args = vec!["--polytope", "simplex2"];
        args.extend_from_slice(extra);
        args.extend_from_slice(&["syzygy", "--d", "2"]);
        let text = stdout(&args);
        assert_eq!(multiplicity_total(&text, "1"), 6);
        assert_eq!(multiplicity_total(&text, "2"), 8);
        assert_eq!(multiplicity_total(&text, "3"), 3);
        assert_eq!(multiplicity_total(&text, "4"), 0);
    }
}

#[test]
fn conic_row_and_checked_mode() {
    let text = stdout(&["--polytope", "segment", "syzygy", "--d", "2", "--checked"]);
    assert!(text.contains("# rank_mode: checked"));
    assert_eq!(rows(&text), vec!["1,1,2,2,1,1/2,0.500000000000"]);
}

#[test]
fn segment_q0_is_the_trivial_weight() {
    let text = stdout(&["--polytope", "segment", "syzygy", "--d", "1", "--q", "0", "--p-min", "0"]);
    assert_eq!(rows(&text), vec!["0,0,1,0,1,,"]);
}

#[test]
fn region_extremes() {
    let one = stdout(&["--polytope", "square", "region", "--a", "1", "--directions", "8"]);
    for row in rows(&one) {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(&f[f.len() - 2..], &["0.500000000000", "0.500000000000"]);
    }
    let zero = stdout(&["--polytope", "square", "region", "--a", "0", "--directions", "8"]);
    assert_eq!(rows(&zero).len(), 8);
    assert!(rows(&zero)[0].ends_with("0.000000000000,0.500000000000"));
}

#[test]
fn tau_reports_both_methods() {
    let text = stdout(&["--polytope", "square", "tau", "--x", "1/2,1/4", "--directions", "180", "--grid", "16"]);
    let values: Vec<f64> = text
        .lines()
        .filter_map(|l| l.split("tau/vol = ").nth(1))
        .map(|v| v.split_whitespace().next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 2);
    assert!(values.iter().all(|v| (v - 0.5).abs() < 0.01), "{text}");
}

#[test]
fn tau_csv_output() {
    let path = scratch("tau.csv");
    let p = path.to_str().unwrap();
    stdout(&["--polytope", "square", "--out", p, "tau", "--x", "0.5,0.5", "--directions", "16", "--grid", "8"]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(rows(&text)[0].starts_with("direction_sweep,16,1.000000000000"));
    assert!(rows(&text)[1].starts_with("grid_lp,8,1.000000000000"));
}

#[test]
fn density_is_deterministic_and_refines() {
    let base = ["--polytope", "simplex2", "--seed", "11", "density", "--samples", "40"];
    let radius = |d: &str| -> f64 {
        let mut args = base.to_vec();
        args.extend_from_slice(&["--d-max", d]);
        let text = stdout(&args);
        let line = text.lines().find(|l| l.starts_with("# covering_radius:")).unwrap();
        line.rsplit(' ').next().unwrap().parse().unwrap()
    };
    assert_eq!(radius("2"), radius("2"));
    assert!(radius("4") < radius("2"));
}

#[test]
fn density_without_samples() {
    let text = stdout(&["--polytope", "segment", "density", "--d-max", "3", "--samples", "0"]);
    assert!(text.contains("# covering_radius: none\n"));
    assert!(rows(&text).is_empty());
}

#[test]
fn svg_next_to_output() {
    let path = scratch("region.csv");
    let p = path.to_str().unwrap();
    stdout(&["--polytope", "square", "--out", p, "--svg", "region", "--a", "0.5", "--directions", "16"]);
    let svg = std::fs::read_to_string(path.with_extension("svg")).unwrap();
    assert!(svg.starts_with("<svg"), "{svg}");
}

#[test]
fn shapes_balance() {
    let text = stdout(&["--polytope", "square", "shapes", "--x", "1/4,1/4", "--volume", "1/10", "--grid", "8"]);
    assert!(text.contains("# center_of_mass: 0.250000000000,0.250000000000"));
    assert!(!rows(&text).is_empty());
}

#[test]
fn bad_configuration_exits_2() {
    let cases: &[&[&str]] = &[
        &["syzygy", "--d", "2"],
        &["--polytope", "nowhere.txt", "syzygy", "--d", "2"],
        &["--polytope", "square", "tau", "--x", "2,0"],
        &["--polytope", "square", "tau", "--x", "0.5"],
        &["--polytope", "square", "region", "--a", "1.5"],
        &["--polytope", "square", "--prime", "12", "syzygy", "--d", "1"],
        &["--polytope", "segment", "syzygy", "--d", "2", "--p-max", "5"],
        &["--polytope", "square", "--svg", "region", "--a", "0.5"],
        &["--polytope", "square", "shapes", "--x", "0.5,0.5", "--volume", "2"],
    ];
    for args in cases {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn limits_exit_3() {
    let out = run(&["--polytope", "square", "--block-limit", "10", "syzygy", "--d", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["--polytope", "square", "density", "--d-max", "4", "--samples", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn polytope_file() {
    let path = scratch("tri.txt");
    std::fs::write(&path, "dim 2\nv 0 0\nv 2 0\nv 0 2\n").unwrap();
    let text = stdout(&["--polytope", path.to_str().unwrap(), "syzygy", "--d", "1"]);
    assert_eq!(multiplicity_total(&text, "1"), 6);
}
