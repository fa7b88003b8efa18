use std::process::{Command, Output};

fn brocard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brocard"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn rows(out: &Output) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(out.stdout.as_slice())
        .records()
        .collect::<Result<_, _>>()
        .expect("valid csv")
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig7.svg");
    let to_file = brocard(&["--out", path.to_str().unwrap(), "figure", "fig7"]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    assert_eq!(
        std::fs::read(&path).unwrap(),
        brocard(&["figure", "fig7"]).stdout
    );
}

#[test]
fn orbit_csv_reparses() {
    let out = brocard(&["orbit", "--R0", "1", "--u0", "3", "--steps", "6"]);
    assert!(out.status.success());
    let fwd = rows(&out);
    // stops once u sits on sqrt 3, where a further step would have R = 0
    assert!((2..=7).contains(&fwd.len()));
    let err: f64 = fwd[fwd.len() - 1][3].parse().unwrap();
    assert!(err < 1e-12);
    let back = brocard(&["orbit", "--u0", "2", "--steps", "8", "--direction", "back"]);
    let u: f64 = rows(&back)[8][2].parse().unwrap();
    assert!(u > 100.0);
}

#[test]
fn degrees_match_radians() {
    let rad = brocard(&[
        "continuous",
        "--t-min",
        "0.5",
        "--t-max",
        "1.0",
        "--samples",
        "5",
    ]);
    let deg = brocard(&[
        "--degrees",
        "continuous",
        "--t-min",
        &0.5f64.to_degrees().to_string(),
        "--t-max",
        &1.0f64.to_degrees().to_string(),
        "--samples",
        "5",
    ]);
    let (r, d) = (rows(&rad), rows(&deg));
    assert_eq!(r.len(), 5);
    for (a, b) in r.iter().zip(&d) {
        let b_r: f64 = a[2].parse().unwrap();
        let b_d: f64 = b[2].parse().unwrap();
        assert!((b_r - b_d).abs() < 1e-14);
    }
}

#[test]
fn json_lines_parse() {
    let out = brocard(&["--format", "json", "verify", "--filter", "prop14"]);
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.len() >= 5);
    assert!(lines.iter().all(|v| v["passed"] == true));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["--format", "csv", "figure", "fig2"][..],
        &["--format", "svg", "orbit"],
        &["continuous", "--t-min", "0", "--t-max", "1"],
        &["--tolerance", "0", "verify"],
        &["orbit", "--u0", "1"],
        &["no-such-command"],
    ] {
        assert_eq!(brocard(args).status.code(), Some(2), "{args:?}");
    }
}
